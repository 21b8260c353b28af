#pragma once

#include "rtsd/data/labels.hpp"
#include "rtsd/data/windowing.hpp"
#include "rtsd/metrics/curves.hpp"
#include "rtsd/metrics/scoring.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rtsd {

/// Per-window scores of one recording next to its annotation.
struct ScoredRecording {
    std::string id;
    LabelTrack labels;
    std::vector<double> scores;
};

struct EvalOptions {
    WindowSpec spec;
    double gap_merge_s = 0.0;
    double min_event_s = 0.0;
    std::vector<double> margins_s{3.0, 5.0};
    double latency_lead_s = 5.0;

    void validate() const;
};

struct FamilyResult {
    ConfusionCounts counts;
    double false_alarms = 0.0;
    double fa_per_24h = 0.0;
};

struct MarginResult {
    double margin_s = 0.0;
    std::size_t n_events = 0;
    double onset_acc = 0.0;
    double offset_acc = 0.0;
};

struct MetricsReport {
    EvalOptions options;
    std::size_t n_recordings = 0;
    std::size_t n_windows = 0;
    std::size_t n_positive_windows = 0;
    std::size_t n_seizure_events = 0;
    double total_duration_s = 0.0;

    CurveMetrics curve;
    OperatingPoints thresholds;

    // Scored at the Youden threshold.
    FamilyResult ovlp;
    FamilyResult taes;
    FamilyResult epoch;  // false alarms = maximal runs of false-positive windows

    // Scored at the TNR >= 0.95 threshold; empty / absent when unattainable.
    std::vector<MarginResult> margins;
    std::optional<LatencyScore> latency;
};

/// Pools every recording's windows into one curve, picks operating points,
/// then scores each metric family at its threshold. Throws
/// DegenerateDataset when the pooled windows hold a single class.
MetricsReport evaluate(std::span<const ScoredRecording> recordings, const EvalOptions& options);

/// One record per metric family, fixed precision.
void write_report_text(std::ostream& out, const MetricsReport& report);
void write_report_json(std::ostream& out, const MetricsReport& report);

} // namespace rtsd
