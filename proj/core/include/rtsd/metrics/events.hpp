#pragma once

#include "rtsd/data/labels.hpp"
#include "rtsd/data/windowing.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace rtsd {

/// Ascending, non-overlapping hypothesis events.
using EventList = std::vector<Interval>;

struct EventizeOpts {
    double threshold = 0.5;
    double gap_merge_s = 0.0;
    double min_event_s = 0.0;

    void validate() const;
};

/// Score >= threshold, one decision per window.
std::vector<int> binarize(std::span<const double> scores, double threshold);

/// Window k's decision covers the step [k*S, k*S + S), clipped to
/// [0, total_duration_s). Adjacent positive steps merge, then gaps of at most
/// gap_merge_s merge, then events shorter than min_event_s are dropped.
EventList eventize_decisions(std::span<const int> decisions, double shift_s, double total_duration_s,
                             double gap_merge_s = 0.0, double min_event_s = 0.0);

EventList eventize(std::span<const double> scores, double shift_s, double total_duration_s, const EventizeOpts& opts);

/// Per-window scores of one recording with their timing.
struct HypothesisTrack {
    WindowSpec spec;
    std::vector<double> scores;
    double total_duration_s = 0.0;

    /// Throws InvalidArgument on scores outside [0, 1] or a negative duration.
    void validate() const;
    EventList events(const EventizeOpts& opts) const;
};

/// Label-file form of the hypothesis: one `start stop seiz prob` line per
/// event, prob being the highest window score inside the event.
void write_hypothesis(std::ostream& out, const HypothesisTrack& track, const EventizeOpts& opts);

} // namespace rtsd
