#pragma once

#include "rtsd/data/recording.hpp"
#include "rtsd/data/windowing.hpp"
#include "rtsd/detectors/detector.hpp"
#include "rtsd/features/extractor.hpp"
#include "rtsd/metrics/events.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace rtsd {

struct WindowTiming {
    double feature_s = 0.0;
    double detect_s = 0.0;

    double total_s() const noexcept { return feature_s + detect_s; }
};

struct LatencyOptions {
    bool include_warmup = false;  // judge the first window too
    bool strict = false;          // pass needs max < budget instead of <=
};

struct LatencyReport {
    std::vector<WindowTiming> windows;
    double budget_s = 0.0;
    LatencyOptions options;

    // Over all windows.
    double mean_s = 0.0;
    double max_s = 0.0;
    double p95_s = 0.0;
    double mean_feature_s = 0.0;
    double mean_detect_s = 0.0;
    // Over the judged windows (warm-up dropped unless included).
    double judged_max_s = 0.0;
    bool pass = false;

    std::size_t count() const noexcept { return windows.size(); }
};

/// Statistics are exact functions of `windows`; p95 is nearest-rank.
LatencyReport summarize_latency(std::vector<WindowTiming> windows, double budget_s, const LatencyOptions& options = {});

struct RealtimeCheck {
    bool pass = false;
    std::string summary;
};

/// Re-judges the report against `shift_s`. Throws InvalidArgument on an
/// empty report.
RealtimeCheck check_realtime(const LatencyReport& report, double shift_s);

struct StreamResult {
    HypothesisTrack hypothesis;
    LatencyReport latency;
};

/// Feeds windows in arrival order through extractor and detector from a
/// reset state. Only extract + score sit inside the timed section.
StreamResult run_stream(const Recording& rec, const FeatureExtractor& extractor, const Detector& detector,
                        const WindowSpec& spec, const LatencyOptions& options = {});

/// Offline reference: extract every window, then score the sequence.
std::vector<double> score_batch(const Recording& rec, const FeatureExtractor& extractor, const Detector& detector,
                                const WindowSpec& spec);

void write_latency_json(std::ostream& out, const LatencyReport& report);
/// window,feature_s,detect_s,total_s
void write_latency_csv(std::ostream& out, const LatencyReport& report);
void write_latency_text(std::ostream& out, const LatencyReport& report);

} // namespace rtsd
