#include "rtsd/bench/stream.hpp"

#include "rtsd/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace rtsd {
namespace {

using Clock = std::chrono::steady_clock;

double seconds(Clock::duration d) {
    return std::chrono::duration<double>(d).count();
}

bool within(double value, double budget, bool strict) {
    return strict ? value < budget : value <= budget;
}

double judged_max(const LatencyReport& r) {
    const std::size_t first = (!r.options.include_warmup && r.windows.size() > 1) ? 1 : 0;
    double m = 0.0;
    for (std::size_t i = first; i < r.windows.size(); ++i) m = std::max(m, r.windows[i].total_s());
    return m;
}

} // namespace

LatencyReport summarize_latency(std::vector<WindowTiming> windows, double budget_s, const LatencyOptions& options) {
    LatencyReport r;
    r.windows = std::move(windows);
    r.budget_s = budget_s;
    r.options = options;
    if (r.windows.empty()) return r;

    std::vector<double> totals;
    totals.reserve(r.windows.size());
    for (const auto& w : r.windows) {
        require(w.feature_s >= 0.0 && w.detect_s >= 0.0, ErrorCode::InvalidArgument, "window times must be non-negative");
        totals.push_back(w.total_s());
        r.mean_feature_s += w.feature_s;
        r.mean_detect_s += w.detect_s;
    }
    const double n = static_cast<double>(totals.size());
    double sum = 0.0;
    for (double t : totals) sum += t;
    r.mean_s = sum / n;
    r.mean_feature_s /= n;
    r.mean_detect_s /= n;
    std::vector<double> sorted = totals;
    std::sort(sorted.begin(), sorted.end());
    r.max_s = sorted.back();
    const auto rank = static_cast<std::size_t>(std::ceil(0.95 * n));
    r.p95_s = sorted[std::max<std::size_t>(rank, 1) - 1];
    r.judged_max_s = judged_max(r);
    r.pass = within(r.judged_max_s, budget_s, options.strict);
    return r;
}

RealtimeCheck check_realtime(const LatencyReport& report, double shift_s) {
    require(!report.windows.empty(), ErrorCode::InvalidArgument, "latency report has no windows");
    require(shift_s > 0.0, ErrorCode::InvalidArgument, "shift budget must be positive");
    const double worst = judged_max(report);
    RealtimeCheck check;
    check.pass = within(worst, shift_s, report.options.strict);
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s: %zu windows, mean %.6f s (feature %.6f s, detect %.6f s), p95 %.6f s, max %.6f s, budget %.6f s",
                  check.pass ? "PASS" : "FAIL", report.windows.size(), report.mean_s, report.mean_feature_s,
                  report.mean_detect_s, report.p95_s, worst, shift_s);
    check.summary = buf;
    return check;
}

StreamResult run_stream(const Recording& rec, const FeatureExtractor& extractor, const Detector& detector,
                        const WindowSpec& spec, const LatencyOptions& options) {
    spec.validate(rec.sample_rate_hz());
    const std::size_t n = window_count(rec.n_samples(), rec.sample_rate_hz(), spec);
    require(n > 0, ErrorCode::EmptyStream, "recording is shorter than one window");

    StreamResult out;
    out.hypothesis.spec = spec;
    out.hypothesis.total_duration_s = rec.duration_s();
    out.hypothesis.scores.reserve(n);
    std::vector<WindowTiming> timings;
    timings.reserve(n);
    DetectorState state = reset_state(detector);
    for (std::size_t k = 0; k < n; ++k) {
        const Window window = extract_window(rec, spec, k);
        const auto t0 = Clock::now();
        const FeatureTensor features = extractor.extract(window.view());
        const auto t1 = Clock::now();
        const double score = detector.score(features, state);
        const auto t2 = Clock::now();
        out.hypothesis.scores.push_back(score);
        timings.push_back({seconds(t1 - t0), seconds(t2 - t1)});
    }
    out.latency = summarize_latency(std::move(timings), spec.shift_s, options);
    return out;
}

std::vector<double> score_batch(const Recording& rec, const FeatureExtractor& extractor, const Detector& detector,
                                const WindowSpec& spec) {
    const auto windows = slice_windows(rec, spec);
    std::vector<FeatureTensor> features;
    features.reserve(windows.size());
    for (const auto& w : windows) features.push_back(extractor.extract(w.view()));
    return score_sequence(detector, features);
}

void write_latency_json(std::ostream& out, const LatencyReport& r) {
    nlohmann::ordered_json j;
    j["windows"] = r.count();
    j["budget_s"] = r.budget_s;
    j["include_warmup"] = r.options.include_warmup;
    j["strict"] = r.options.strict;
    j["mean_s"] = r.mean_s;
    j["mean_feature_s"] = r.mean_feature_s;
    j["mean_detect_s"] = r.mean_detect_s;
    j["p95_s"] = r.p95_s;
    j["max_s"] = r.max_s;
    j["judged_max_s"] = r.judged_max_s;
    j["pass"] = r.pass;
    out << j.dump(2) << '\n';
}

void write_latency_csv(std::ostream& out, const LatencyReport& r) {
    out << "window,feature_s,detect_s,total_s\n";
    char line[128];
    for (std::size_t i = 0; i < r.windows.size(); ++i) {
        const auto& w = r.windows[i];
        std::snprintf(line, sizeof line, "%zu,%.9f,%.9f,%.9f\n", i, w.feature_s, w.detect_s, w.total_s());
        out << line;
    }
}

void write_latency_text(std::ostream& out, const LatencyReport& r) {
    char line[160];
    std::snprintf(line, sizeof line, "%-14s %12s\n", "statistic", "seconds");
    out << line;
    const std::pair<const char*, double> rows[] = {{"mean", r.mean_s},         {"mean feature", r.mean_feature_s},
                                                   {"mean detect", r.mean_detect_s}, {"p95", r.p95_s},
                                                   {"max", r.max_s},           {"judged max", r.judged_max_s},
                                                   {"budget", r.budget_s}};
    for (const auto& [name, v] : rows) {
        std::snprintf(line, sizeof line, "%-14s %12.6f\n", name, v);
        out << line;
    }
    std::snprintf(line, sizeof line, "%-14s %12zu\n%-14s %12s\n", "windows", r.count(), "real-time", r.pass ? "PASS" : "FAIL");
    out << line;
}

} // namespace rtsd
