#pragma once

#include "rtsd/data/labels.hpp"
#include "rtsd/metrics/events.hpp"

#include <cstddef>
#include <optional>
#include <span>

namespace rtsd {

/// Reals because TAES credits fractions.
struct ConfusionCounts {
    double tp = 0.0;
    double tn = 0.0;
    double fp = 0.0;
    double fn = 0.0;

    /// Absent when the class has no members.
    std::optional<double> tpr() const;
    std::optional<double> tnr() const;

    ConfusionCounts& operator+=(const ConfusionCounts& o);
    friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

ConfusionCounts epoch_counts(std::span<const int> window_labels, std::span<const int> window_decisions);

struct EventScore {
    ConfusionCounts counts;
    std::size_t n_events = 0;      // label seizure events
    std::size_t n_background = 0;  // maximal background intervals
    double false_alarms = 0.0;     // FP events (OVLP) or FP credit (TAES)

    std::optional<double> sensitivity() const { return counts.tpr(); }
    std::optional<double> specificity() const { return counts.tnr(); }
};

/// Any-overlap: a label event is hit by any positive-length intersection;
/// hypothesis events touching no seizure are false positives; background
/// intervals touched by no hypothesis are true negatives.
EventScore ovlp(const LabelTrack& labels, const EventList& hyp);

/// Time-aligned: fractional credit by covered duration, per label event and
/// per background interval.
EventScore taes(const LabelTrack& labels, const EventList& hyp);

struct MarginScore {
    double margin_s = 0.0;
    std::size_t n_events = 0;
    std::size_t onset_hits = 0;
    std::size_t offset_hits = 0;

    /// 0 when there are no label events.
    double onset_acc() const;
    double offset_acc() const;
};

/// An onset (offset) hit needs some hypothesis onset (offset) within
/// +-margin_s of the label onset (offset), inclusive.
MarginScore margin(const LabelTrack& labels, const EventList& hyp, double margin_s);

struct LatencyScore {
    std::size_t detected = 0;
    std::size_t missed = 0;
    double sum_s = 0.0;

    /// Mean over detected events; absent when none were detected.
    std::optional<double> mean_s() const;
};

/// Earliest hypothesis onset inside [onset - lead_s, offset], minus onset.
LatencyScore onset_latency(const LabelTrack& labels, const EventList& hyp, double lead_s = 5.0);

/// fp_events * 86400 / total_duration_s.
double fa_per_24h(double fp_events, double total_duration_s);

} // namespace rtsd
