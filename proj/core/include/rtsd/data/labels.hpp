#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rtsd {

enum class EventLabel { BCKG, FNSZ, GNSZ, SPSZ, CPSZ, ABSZ, TNSZ, TCSZ, SEIZ };

/// Lowercase tag as written in label files ("bckg", "gnsz", ...).
std::string_view to_string(EventLabel label);
EventLabel parse_event_label(std::string_view text);

/// Half-open time span [start_s, stop_s) in seconds.
struct Interval {
    double start_s = 0.0;
    double stop_s = 0.0;

    double duration() const noexcept { return stop_s - start_s; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Length of the intersection of two intervals (0 when disjoint).
double overlap(const Interval& a, const Interval& b) noexcept;

struct Event {
    double start_s = 0.0;
    double stop_s = 0.0;
    EventLabel label = EventLabel::SEIZ;

    bool is_seizure() const noexcept { return label != EventLabel::BCKG; }
    Interval interval() const noexcept { return {start_s, stop_s}; }
    friend bool operator==(const Event&, const Event&) = default;
};

/// Sorted, non-overlapping annotation of one recording. Time not covered by
/// an event is background.
class LabelTrack {
public:
    LabelTrack() = default;
    LabelTrack(std::vector<Event> events, double total_duration_s);

    const std::vector<Event>& events() const noexcept { return events_; }
    double total_duration_s() const noexcept { return total_duration_s_; }

    /// Non-background events, merged where they touch.
    std::vector<Interval> seizure_events() const;
    /// Maximal spans of [0, total) not covered by any seizure event.
    std::vector<Interval> background_intervals() const;
    /// Seconds of seizure annotation inside `span`.
    double seizure_overlap(const Interval& span) const;

private:
    std::vector<Event> events_;
    double total_duration_s_ = 0.0;
};

// Text format: one `start_s stop_s label` per line; blank lines and lines
// starting with '#' are skipped. A fourth numeric column (hypothesis
// probability) is accepted and ignored.
LabelTrack read_labels(std::istream& in, double total_duration_s, const std::string& source = "<stream>");
void write_labels(std::ostream& out, const LabelTrack& track);
LabelTrack load_labels(const std::filesystem::path& path, double total_duration_s);
void save_labels(const LabelTrack& track, const std::filesystem::path& path);

} // namespace rtsd
