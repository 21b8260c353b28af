#include "rtsd/data/labels.hpp"

#include "rtsd/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace rtsd {
namespace {

constexpr std::array<std::string_view, 9> kLabelNames = {"bckg", "fnsz", "gnsz", "spsz", "cpsz",
                                                        "absz", "tnsz", "tcsz", "seiz"};

// Touching events are treated as adjacent, not overlapping, even when the
// decimal boundaries round differently.
constexpr double kTimeEps = 1e-9;

} // namespace

std::string_view to_string(EventLabel label) {
    return kLabelNames[static_cast<std::size_t>(label)];
}

EventLabel parse_event_label(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (std::size_t i = 0; i < kLabelNames.size(); ++i) {
        if (kLabelNames[i] == lower) return static_cast<EventLabel>(i);
    }
    fail(ErrorCode::LabelParse, "unknown label '" + std::string(text) + "'");
}

double overlap(const Interval& a, const Interval& b) noexcept {
    const double lo = std::max(a.start_s, b.start_s);
    const double hi = std::min(a.stop_s, b.stop_s);
    return hi > lo ? hi - lo : 0.0;
}

LabelTrack::LabelTrack(std::vector<Event> events, double total_duration_s)
    : events_(std::move(events)), total_duration_s_(total_duration_s) {
    require(total_duration_s_ >= 0.0 && std::isfinite(total_duration_s_), ErrorCode::InvalidArgument,
            "label track duration must be finite and non-negative");
    for (std::size_t i = 0; i < events_.size(); ++i) {
        const auto& e = events_[i];
        require(e.start_s >= 0.0 && e.stop_s > e.start_s, ErrorCode::InvalidArgument,
                "event " + std::to_string(i) + " has invalid bounds");
        require(e.stop_s <= total_duration_s_ + kTimeEps, ErrorCode::InvalidArgument,
                "event " + std::to_string(i) + " ends after the recording");
        if (i > 0) {
            require(e.start_s >= events_[i - 1].stop_s - kTimeEps, ErrorCode::InvalidArgument,
                    "event " + std::to_string(i) + " overlaps or precedes the previous event");
        }
    }
}

std::vector<Interval> LabelTrack::seizure_events() const {
    std::vector<Interval> out;
    for (const auto& e : events_) {
        if (!e.is_seizure()) continue;
        if (!out.empty() && e.start_s <= out.back().stop_s + kTimeEps) {
            out.back().stop_s = std::max(out.back().stop_s, e.stop_s);
        } else {
            out.push_back(e.interval());
        }
    }
    return out;
}

std::vector<Interval> LabelTrack::background_intervals() const {
    std::vector<Interval> out;
    double cursor = 0.0;
    for (const auto& s : seizure_events()) {
        if (s.start_s > cursor + kTimeEps) out.push_back({cursor, s.start_s});
        cursor = std::max(cursor, s.stop_s);
    }
    if (total_duration_s_ > cursor + kTimeEps) out.push_back({cursor, total_duration_s_});
    return out;
}

double LabelTrack::seizure_overlap(const Interval& span) const {
    double total = 0.0;
    for (const auto& e : events_) {
        if (e.is_seizure()) total += overlap(e.interval(), span);
    }
    return total;
}

LabelTrack read_labels(std::istream& in, double total_duration_s, const std::string& source) {
    std::vector<Event> events;
    std::string line;
    std::size_t line_no = 0;
    auto parse_error = [&](const std::string& what) {
        fail(ErrorCode::LabelParse, source + ":" + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream row(line);
        std::string first;
        if (!(row >> first) || first.front() == '#') continue;

        Event e;
        std::string label;
        std::istringstream start_text(first);
        if (!(start_text >> e.start_s) || !start_text.eof() || !(row >> e.stop_s) || !(row >> label)) {
            parse_error("expected 'start stop label'");
        }
        double probability = 0.0;
        if (row >> probability) {
            std::string extra;
            if (row >> extra) parse_error("too many columns");
        } else if (!row.eof()) {
            parse_error("bad probability column");
        }
        try {
            e.label = parse_event_label(label);
        } catch (const Error&) {
            parse_error("unknown label '" + label + "'");
        }
        if (!(e.start_s >= 0.0) || !(e.stop_s > e.start_s)) parse_error("event must satisfy 0 <= start < stop");
        if (e.stop_s > total_duration_s + kTimeEps) parse_error("event ends after the recording");
        if (!events.empty()) {
            if (e.start_s < events.back().start_s) parse_error("events are not in ascending order");
            if (e.start_s < events.back().stop_s - kTimeEps) parse_error("event overlaps the previous event");
        }
        events.push_back(e);
    }
    return LabelTrack(std::move(events), total_duration_s);
}

void write_labels(std::ostream& out, const LabelTrack& track) {
    char buffer[96];
    for (const auto& e : track.events()) {
        std::snprintf(buffer, sizeof(buffer), "%.6f %.6f %s\n", e.start_s, e.stop_s,
                      std::string(to_string(e.label)).c_str());
        out << buffer;
    }
}

LabelTrack load_labels(const std::filesystem::path& path, double total_duration_s) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorCode::Io, "cannot open label file '" + path.string() + "'");
    return read_labels(in, total_duration_s, path.string());
}

void save_labels(const LabelTrack& track, const std::filesystem::path& path) {
    std::ofstream out(path);
    require(static_cast<bool>(out), ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
    write_labels(out, track);
}

} // namespace rtsd
