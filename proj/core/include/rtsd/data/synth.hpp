#pragma once

#include "rtsd/data/labels.hpp"
#include "rtsd/data/recording.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rtsd {

/// Desk-scale EEG substitute: pink background noise per channel plus a
/// spike-wave oscillation (base frequency and two harmonics) inside the
/// seizure intervals.
struct SynthConfig {
    double duration_s = 60.0;
    int sample_rate_hz = 200;
    std::size_t n_channels = 20;
    std::vector<std::string> channel_names;  // empty: generated names
    double background_amplitude_uv = 10.0;   // RMS
    double ictal_amplitude_uv = 50.0;        // RMS of the ictal component
    double ictal_base_freq_hz = 3.0;
    std::vector<Interval> events;            // explicit seizure intervals
    std::size_t n_random_events = 0;         // placed after the explicit ones
    double random_event_min_s = 8.0;
    double random_event_max_s = 30.0;
    EventLabel event_label = EventLabel::SEIZ;
    std::uint64_t seed = 0;
};

struct SynthResult {
    Recording recording;
    LabelTrack labels;
};

SynthResult synth_recording(const SynthConfig& cfg);

} // namespace rtsd
