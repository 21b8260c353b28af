#include "rtsd/metrics/report.hpp"

#include "rtsd/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace rtsd {
namespace {

std::size_t fp_runs(std::span<const int> labels, std::span<const int> decisions) {
    std::size_t runs = 0;
    bool in_run = false;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const bool fp = labels[i] == 0 && decisions[i] != 0;
        if (fp && !in_run) ++runs;
        in_run = fp;
    }
    return runs;
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string opt(const std::optional<double>& v) {
    return v ? fmt("%.6f", *v) : std::string("na");
}

nlohmann::ordered_json opt_json(const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json family_json(const FamilyResult& f) {
    return {{"tp", f.counts.tp},
            {"tn", f.counts.tn},
            {"fp", f.counts.fp},
            {"fn", f.counts.fn},
            {"tpr", opt_json(f.counts.tpr())},
            {"tnr", opt_json(f.counts.tnr())},
            {"false_alarms", f.false_alarms},
            {"fa_per_24h", f.fa_per_24h}};
}

void family_text(std::ostream& out, const char* name, const FamilyResult& f) {
    out << name << " tpr=" << opt(f.counts.tpr()) << " tnr=" << opt(f.counts.tnr()) << " tp=" << fmt("%.6f", f.counts.tp)
        << " fn=" << fmt("%.6f", f.counts.fn) << " fp=" << fmt("%.6f", f.counts.fp) << " tn=" << fmt("%.6f", f.counts.tn)
        << " false_alarms=" << fmt("%.6f", f.false_alarms) << " fa_per_24h=" << fmt("%.6f", f.fa_per_24h) << '\n';
}

} // namespace

void EvalOptions::validate() const {
    require(spec.shift_s > 0.0 && spec.window_s >= spec.shift_s, ErrorCode::InvalidArgument,
            "evaluation needs window >= shift > 0");
    require(gap_merge_s >= 0.0 && min_event_s >= 0.0, ErrorCode::InvalidArgument,
            "gap merge and minimum event length must be non-negative");
    for (double m : margins_s) require(m > 0.0, ErrorCode::InvalidArgument, "margins must be positive");
    require(latency_lead_s >= 0.0, ErrorCode::InvalidArgument, "latency lead must be non-negative");
}

MetricsReport evaluate(std::span<const ScoredRecording> recordings, const EvalOptions& options) {
    options.validate();
    MetricsReport r;
    r.options = options;
    r.n_recordings = recordings.size();

    std::vector<std::vector<int>> labels;
    std::vector<int> pooled_labels;
    std::vector<double> pooled_scores;
    for (const auto& rec : recordings) {
        labels.push_back(window_labels(rec.labels, rec.scores.size(), options.spec));
        pooled_labels.insert(pooled_labels.end(), labels.back().begin(), labels.back().end());
        pooled_scores.insert(pooled_scores.end(), rec.scores.begin(), rec.scores.end());
        r.total_duration_s += rec.labels.total_duration_s();
        r.n_seizure_events += rec.labels.seizure_events().size();
    }
    r.n_windows = pooled_labels.size();
    r.n_positive_windows = static_cast<std::size_t>(std::count(pooled_labels.begin(), pooled_labels.end(), 1));
    r.curve = curve_metrics(pooled_labels, pooled_scores);
    r.thresholds = operating_points(r.curve);

    const auto eventize_at = [&](const ScoredRecording& rec, double threshold) {
        EventizeOpts opts{threshold, options.gap_merge_s, options.min_event_s};
        return eventize(rec.scores, options.spec.shift_s, rec.labels.total_duration_s(), opts);
    };

    double epoch_fa = 0.0;
    for (std::size_t i = 0; i < recordings.size(); ++i) {
        const auto& rec = recordings[i];
        const EventList hyp = eventize_at(rec, r.thresholds.youden_threshold);
        const EventScore o = ovlp(rec.labels, hyp);
        const EventScore t = taes(rec.labels, hyp);
        r.ovlp.counts += o.counts;
        r.ovlp.false_alarms += o.false_alarms;
        r.taes.counts += t.counts;
        r.taes.false_alarms += t.false_alarms;
        const auto decisions = binarize(rec.scores, r.thresholds.youden_threshold);
        r.epoch.counts += epoch_counts(labels[i], decisions);
        epoch_fa += static_cast<double>(fp_runs(labels[i], decisions));
    }
    r.epoch.false_alarms = epoch_fa;
    if (r.total_duration_s > 0.0) {
        for (FamilyResult* f : {&r.ovlp, &r.taes, &r.epoch}) f->fa_per_24h = fa_per_24h(f->false_alarms, r.total_duration_s);
    }

    if (r.thresholds.tnr95_threshold) {
        std::vector<EventList> hyps;
        for (const auto& rec : recordings) hyps.push_back(eventize_at(rec, *r.thresholds.tnr95_threshold));
        for (double m : options.margins_s) {
            MarginResult mr;
            mr.margin_s = m;
            std::size_t on = 0;
            std::size_t off = 0;
            for (std::size_t i = 0; i < recordings.size(); ++i) {
                const MarginScore s = margin(recordings[i].labels, hyps[i], m);
                mr.n_events += s.n_events;
                on += s.onset_hits;
                off += s.offset_hits;
            }
            if (mr.n_events > 0) {
                mr.onset_acc = static_cast<double>(on) / static_cast<double>(mr.n_events);
                mr.offset_acc = static_cast<double>(off) / static_cast<double>(mr.n_events);
            }
            r.margins.push_back(mr);
        }
        LatencyScore lat;
        for (std::size_t i = 0; i < recordings.size(); ++i) {
            const LatencyScore s = onset_latency(recordings[i].labels, hyps[i], options.latency_lead_s);
            lat.detected += s.detected;
            lat.missed += s.missed;
            lat.sum_s += s.sum_s;
        }
        r.latency = lat;
    }
    return r;
}

void write_report_text(std::ostream& out, const MetricsReport& r) {
    out << "RTSD-METRICS version 1\n";
    out << "setup window_s=" << fmt("%.6f", r.options.spec.window_s) << " shift_s=" << fmt("%.6f", r.options.spec.shift_s)
        << " gap_merge_s=" << fmt("%.6f", r.options.gap_merge_s) << " min_event_s=" << fmt("%.6f", r.options.min_event_s)
        << '\n';
    out << "data recordings=" << r.n_recordings << " windows=" << r.n_windows << " positive_windows=" << r.n_positive_windows
        << " seizure_events=" << r.n_seizure_events << " duration_s=" << fmt("%.6f", r.total_duration_s) << '\n';
    out << "CURVE auroc=" << fmt("%.6f", r.curve.auroc) << " auprc=" << fmt("%.6f", r.curve.auprc) << '\n';
    out << "THRESHOLDS youden=" << fmt("%.6f", r.thresholds.youden_threshold)
        << " tnr95=" << (r.thresholds.tnr95_threshold ? fmt("%.6f", *r.thresholds.tnr95_threshold) : "unattainable") << '\n';
    family_text(out, "OVLP", r.ovlp);
    family_text(out, "TAES", r.taes);
    family_text(out, "EPOCH", r.epoch);
    if (r.margins.empty()) {
        out << "MARGIN unattainable\n";
    }
    for (const auto& m : r.margins) {
        out << "MARGIN margin_s=" << fmt("%.6f", m.margin_s) << " onset_acc=" << fmt("%.6f", m.onset_acc)
            << " offset_acc=" << fmt("%.6f", m.offset_acc) << " events=" << m.n_events << '\n';
    }
    if (r.latency) {
        out << "LATENCY mean_s=" << opt(r.latency->mean_s()) << " detected=" << r.latency->detected
            << " missed=" << r.latency->missed << '\n';
    } else {
        out << "LATENCY unattainable\n";
    }
    require(static_cast<bool>(out), ErrorCode::Io, "failed writing metrics report");
}

void write_report_json(std::ostream& out, const MetricsReport& r) {
    nlohmann::ordered_json j;
    j["setup"] = {{"window_s", r.options.spec.window_s},
                  {"shift_s", r.options.spec.shift_s},
                  {"gap_merge_s", r.options.gap_merge_s},
                  {"min_event_s", r.options.min_event_s},
                  {"latency_lead_s", r.options.latency_lead_s}};
    j["data"] = {{"recordings", r.n_recordings},
                 {"windows", r.n_windows},
                 {"positive_windows", r.n_positive_windows},
                 {"seizure_events", r.n_seizure_events},
                 {"duration_s", r.total_duration_s}};
    j["auroc"] = r.curve.auroc;
    j["auprc"] = r.curve.auprc;
    j["thresholds"] = {{"youden", r.thresholds.youden_threshold}, {"tnr95", opt_json(r.thresholds.tnr95_threshold)}};
    j["ovlp"] = family_json(r.ovlp);
    j["taes"] = family_json(r.taes);
    j["epoch"] = family_json(r.epoch);
    nlohmann::ordered_json margins = nlohmann::ordered_json::array();
    for (const auto& m : r.margins) {
        margins.push_back({{"margin_s", m.margin_s},
                           {"onset_acc", m.onset_acc},
                           {"offset_acc", m.offset_acc},
                           {"events", m.n_events}});
    }
    j["margin"] = r.thresholds.tnr95_threshold ? margins : nlohmann::ordered_json(nullptr);
    if (r.latency) {
        j["onset_latency"] = {{"mean_s", opt_json(r.latency->mean_s())},
                              {"detected", r.latency->detected},
                              {"missed", r.latency->missed}};
    } else {
        j["onset_latency"] = nullptr;
    }
    out << j.dump(2) << '\n';
    require(static_cast<bool>(out), ErrorCode::Io, "failed writing metrics report");
}

} // namespace rtsd
