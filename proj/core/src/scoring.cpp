#include "rtsd/metrics/scoring.hpp"

#include "rtsd/error.hpp"

#include <algorithm>
#include <cmath>

namespace rtsd {
namespace {

constexpr double kEps = 1e-9;

bool touches(const Interval& a, const Interval& b) {
    return overlap(a, b) > kEps;
}

double covered(const Interval& span, const EventList& hyp) {
    double sum = 0.0;
    for (const auto& h : hyp) sum += overlap(span, h);
    return std::min(sum, span.duration());
}

} // namespace

std::optional<double> ConfusionCounts::tpr() const {
    if (tp + fn <= 0.0) return std::nullopt;
    return tp / (tp + fn);
}

std::optional<double> ConfusionCounts::tnr() const {
    if (tn + fp <= 0.0) return std::nullopt;
    return tn / (tn + fp);
}

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& o) {
    tp += o.tp;
    tn += o.tn;
    fp += o.fp;
    fn += o.fn;
    return *this;
}

ConfusionCounts epoch_counts(std::span<const int> window_labels, std::span<const int> window_decisions) {
    require(window_labels.size() == window_decisions.size(), ErrorCode::InvalidArgument,
            "window labels and decisions differ in length");
    ConfusionCounts c;
    for (std::size_t i = 0; i < window_labels.size(); ++i) {
        const bool y = window_labels[i] != 0;
        const bool d = window_decisions[i] != 0;
        if (y && d) c.tp += 1;
        else if (y) c.fn += 1;
        else if (d) c.fp += 1;
        else c.tn += 1;
    }
    return c;
}

EventScore ovlp(const LabelTrack& labels, const EventList& hyp) {
    const auto seizures = labels.seizure_events();
    const auto background = labels.background_intervals();
    EventScore s;
    s.n_events = seizures.size();
    s.n_background = background.size();
    for (const auto& e : seizures) {
        const bool hit = std::any_of(hyp.begin(), hyp.end(), [&](const Interval& h) { return touches(e, h); });
        (hit ? s.counts.tp : s.counts.fn) += 1;
    }
    for (const auto& h : hyp) {
        const bool hit = std::any_of(seizures.begin(), seizures.end(), [&](const Interval& e) { return touches(e, h); });
        if (!hit) s.counts.fp += 1;
    }
    for (const auto& b : background) {
        const bool hit = std::any_of(hyp.begin(), hyp.end(), [&](const Interval& h) { return touches(b, h); });
        if (!hit) s.counts.tn += 1;
    }
    s.false_alarms = s.counts.fp;
    return s;
}

EventScore taes(const LabelTrack& labels, const EventList& hyp) {
    const auto seizures = labels.seizure_events();
    const auto background = labels.background_intervals();
    EventScore s;
    s.n_events = seizures.size();
    s.n_background = background.size();
    for (const auto& e : seizures) {
        const double credit = covered(e, hyp) / e.duration();
        s.counts.tp += credit;
        s.counts.fn += 1.0 - credit;
    }
    for (const auto& b : background) {
        const double credit = covered(b, hyp) / b.duration();
        s.counts.fp += credit;
        s.counts.tn += 1.0 - credit;
    }
    s.false_alarms = s.counts.fp;
    return s;
}

double MarginScore::onset_acc() const {
    return n_events == 0 ? 0.0 : static_cast<double>(onset_hits) / static_cast<double>(n_events);
}

double MarginScore::offset_acc() const {
    return n_events == 0 ? 0.0 : static_cast<double>(offset_hits) / static_cast<double>(n_events);
}

MarginScore margin(const LabelTrack& labels, const EventList& hyp, double margin_s) {
    require(margin_s > 0.0, ErrorCode::InvalidArgument, "margin must be positive");
    MarginScore s;
    s.margin_s = margin_s;
    for (const auto& e : labels.seizure_events()) {
        ++s.n_events;
        const bool on = std::any_of(hyp.begin(), hyp.end(),
                                    [&](const Interval& h) { return std::abs(h.start_s - e.start_s) <= margin_s + kEps; });
        const bool off = std::any_of(hyp.begin(), hyp.end(),
                                     [&](const Interval& h) { return std::abs(h.stop_s - e.stop_s) <= margin_s + kEps; });
        s.onset_hits += on ? 1 : 0;
        s.offset_hits += off ? 1 : 0;
    }
    return s;
}

std::optional<double> LatencyScore::mean_s() const {
    if (detected == 0) return std::nullopt;
    return sum_s / static_cast<double>(detected);
}

LatencyScore onset_latency(const LabelTrack& labels, const EventList& hyp, double lead_s) {
    require(lead_s >= 0.0, ErrorCode::InvalidArgument, "latency lead must be non-negative");
    LatencyScore s;
    for (const auto& e : labels.seizure_events()) {
        std::optional<double> first;
        for (const auto& h : hyp) {
            if (h.start_s >= e.start_s - lead_s - kEps && h.start_s <= e.stop_s + kEps) {
                first = first ? std::min(*first, h.start_s) : h.start_s;
            }
        }
        if (first) {
            ++s.detected;
            s.sum_s += *first - e.start_s;
        } else {
            ++s.missed;
        }
    }
    return s;
}

double fa_per_24h(double fp_events, double total_duration_s) {
    require(total_duration_s > 0.0, ErrorCode::InvalidArgument, "false-alarm rate needs a positive duration");
    require(fp_events >= 0.0, ErrorCode::InvalidArgument, "false-alarm count must be non-negative");
    return fp_events * 86400.0 / total_duration_s;
}

} // namespace rtsd
