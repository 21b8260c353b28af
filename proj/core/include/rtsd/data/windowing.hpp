#pragma once

#include "rtsd/data/labels.hpp"
#include "rtsd/data/recording.hpp"

#include <cstddef>
#include <vector>

namespace rtsd {

/// Sliding window geometry: the span the detector sees and how far it
/// advances per decision.
struct WindowSpec {
    double window_s = 4.0;
    double shift_s = 1.0;

    /// Throws InvalidArgument unless window_s >= shift_s > 0 and both are
    /// whole numbers of sample periods at `sample_rate_hz`.
    void validate(int sample_rate_hz) const;
    std::size_t window_samples(int sample_rate_hz) const;
    std::size_t shift_samples(int sample_rate_hz) const;
};

/// floor((n - w) / s) + 1 in samples, 0 if the recording is shorter than a window.
std::size_t window_count(std::size_t n_samples, int sample_rate_hz, const WindowSpec& spec);

/// One owned window of all channels, channel-major.
struct Window {
    std::size_t index = 0;
    double start_s = 0.0;
    int sample_rate_hz = 0;
    std::size_t n_channels = 0;
    std::size_t n_samples = 0;
    std::vector<float> samples;

    SignalView view() const { return {samples, n_channels, n_samples, sample_rate_hz}; }
};

/// Copies window k (starting at k * shift) out of the recording.
Window extract_window(const Recording& rec, const WindowSpec& spec, std::size_t k);

/// Every window in start order. Throws EmptyStream when the recording is
/// shorter than one window.
std::vector<Window> slice_windows(const Recording& rec, const WindowSpec& spec);

enum class WindowClass { NonIctal = 0, Ictal = 1 };

/// Seizure seconds a window must strictly exceed to count as ictal: the
/// shift, or half the window when window == shift.
double ictal_threshold_s(const WindowSpec& spec);

/// Ictal iff the seizure annotation inside [start, start + window) lasts
/// strictly longer than ictal_threshold_s(spec).
WindowClass window_label(const LabelTrack& labels, double window_start_s, const WindowSpec& spec);

/// 0/1 label per window for a stream of `n_windows` windows.
std::vector<int> window_labels(const LabelTrack& labels, std::size_t n_windows, const WindowSpec& spec);

} // namespace rtsd
