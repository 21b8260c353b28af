#include "rtsd/metrics/events.hpp"

#include "rtsd/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace rtsd {
namespace {

constexpr double kEps = 1e-9;

} // namespace

void EventizeOpts::validate() const {
    require(threshold >= 0.0 && threshold <= 1.0, ErrorCode::InvalidArgument, "threshold must be in [0, 1]");
    require(gap_merge_s >= 0.0 && std::isfinite(gap_merge_s), ErrorCode::InvalidArgument,
            "gap merge must be non-negative");
    require(min_event_s >= 0.0 && std::isfinite(min_event_s), ErrorCode::InvalidArgument,
            "minimum event length must be non-negative");
}

std::vector<int> binarize(std::span<const double> scores, double threshold) {
    std::vector<int> out(scores.size());
    std::transform(scores.begin(), scores.end(), out.begin(), [&](double s) { return s >= threshold ? 1 : 0; });
    return out;
}

EventList eventize_decisions(std::span<const int> decisions, double shift_s, double total_duration_s,
                             double gap_merge_s, double min_event_s) {
    require(shift_s > 0.0, ErrorCode::InvalidArgument, "shift must be positive");
    EventList runs;
    for (std::size_t k = 0; k < decisions.size(); ++k) {
        if (decisions[k] == 0) continue;
        const double start = static_cast<double>(k) * shift_s;
        const double stop = std::min(start + shift_s, total_duration_s);
        if (stop <= start) break;
        if (!runs.empty() && k > 0 && decisions[k - 1] != 0) {
            runs.back().stop_s = stop;
        } else {
            runs.push_back({start, stop});
        }
    }

    EventList merged;
    for (const auto& r : runs) {
        if (!merged.empty() && r.start_s - merged.back().stop_s <= gap_merge_s + kEps) {
            merged.back().stop_s = r.stop_s;
        } else {
            merged.push_back(r);
        }
    }
    std::erase_if(merged, [&](const Interval& e) { return e.duration() < min_event_s - kEps; });
    return merged;
}

EventList eventize(std::span<const double> scores, double shift_s, double total_duration_s, const EventizeOpts& opts) {
    opts.validate();
    const auto decisions = binarize(scores, opts.threshold);
    return eventize_decisions(decisions, shift_s, total_duration_s, opts.gap_merge_s, opts.min_event_s);
}

void HypothesisTrack::validate() const {
    require(total_duration_s >= 0.0, ErrorCode::InvalidArgument, "hypothesis duration must be non-negative");
    require(spec.shift_s > 0.0, ErrorCode::InvalidArgument, "hypothesis shift must be positive");
    for (double s : scores) {
        require(s >= 0.0 && s <= 1.0, ErrorCode::InvalidArgument, "hypothesis scores must lie in [0, 1]");
    }
}

EventList HypothesisTrack::events(const EventizeOpts& opts) const {
    validate();
    return eventize(scores, spec.shift_s, total_duration_s, opts);
}

void write_hypothesis(std::ostream& out, const HypothesisTrack& track, const EventizeOpts& opts) {
    const EventList events = track.events(opts);
    char line[128];
    for (const auto& e : events) {
        double prob = 0.0;
        for (std::size_t k = 0; k < track.scores.size(); ++k) {
            const double step = static_cast<double>(k) * track.spec.shift_s;
            if (step + kEps >= e.start_s && step < e.stop_s - kEps) prob = std::max(prob, track.scores[k]);
        }
        std::snprintf(line, sizeof line, "%.6f %.6f seiz %.6f\n", e.start_s, e.stop_s, prob);
        out << line;
    }
    require(static_cast<bool>(out), ErrorCode::Io, "failed writing hypothesis");
}

} // namespace rtsd
