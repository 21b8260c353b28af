#include "rtsd/data/windowing.hpp"

#include "rtsd/error.hpp"

#include <algorithm>
#include <cmath>

namespace rtsd {
namespace {

// Tolerance for "whole number of sample periods" and for the strict
// more-than-shift comparison; far below any realistic sample period.
constexpr double kEps = 1e-9;

std::size_t to_samples(double seconds, int rate, const char* what) {
    const double exact = seconds * static_cast<double>(rate);
    const double rounded = std::round(exact);
    require(std::abs(exact - rounded) <= 1e-6 * std::max(1.0, exact), ErrorCode::InvalidArgument,
            std::string(what) + " is not a whole number of sample periods");
    return static_cast<std::size_t>(rounded);
}

} // namespace

void WindowSpec::validate(int sample_rate_hz) const {
    require(sample_rate_hz > 0, ErrorCode::InvalidArgument, "sample rate must be positive");
    require(std::isfinite(window_s) && std::isfinite(shift_s) && shift_s > 0.0, ErrorCode::InvalidArgument,
            "window shift must be positive");
    require(window_s >= shift_s, ErrorCode::InvalidArgument, "window must be at least as long as the shift");
    require(to_samples(shift_s, sample_rate_hz, "shift") > 0, ErrorCode::InvalidArgument,
            "shift is shorter than one sample");
    to_samples(window_s, sample_rate_hz, "window");
}

std::size_t WindowSpec::window_samples(int sample_rate_hz) const {
    validate(sample_rate_hz);
    return to_samples(window_s, sample_rate_hz, "window");
}

std::size_t WindowSpec::shift_samples(int sample_rate_hz) const {
    validate(sample_rate_hz);
    return to_samples(shift_s, sample_rate_hz, "shift");
}

std::size_t window_count(std::size_t n_samples, int sample_rate_hz, const WindowSpec& spec) {
    const std::size_t w = spec.window_samples(sample_rate_hz);
    const std::size_t s = spec.shift_samples(sample_rate_hz);
    if (n_samples < w) return 0;
    return (n_samples - w) / s + 1;
}

Window extract_window(const Recording& rec, const WindowSpec& spec, std::size_t k) {
    const int fs = rec.sample_rate_hz();
    const std::size_t w = spec.window_samples(fs);
    const std::size_t s = spec.shift_samples(fs);
    const std::size_t begin = k * s;
    require(begin + w <= rec.n_samples(), ErrorCode::InvalidArgument, "window reads past the recording end");

    Window win;
    win.index = k;
    win.start_s = static_cast<double>(begin) / static_cast<double>(fs);
    win.sample_rate_hz = fs;
    win.n_channels = rec.n_channels();
    win.n_samples = w;
    win.samples.resize(win.n_channels * w);
    for (std::size_t c = 0; c < rec.n_channels(); ++c) {
        const auto src = rec.channel(c).subspan(begin, w);
        std::copy(src.begin(), src.end(), win.samples.begin() + static_cast<std::ptrdiff_t>(c * w));
    }
    return win;
}

std::vector<Window> slice_windows(const Recording& rec, const WindowSpec& spec) {
    const std::size_t count = window_count(rec.n_samples(), rec.sample_rate_hz(), spec);
    if (count == 0) {
        fail(ErrorCode::EmptyStream, "recording of " + std::to_string(rec.duration_s()) +
                                         " s is shorter than one " + std::to_string(spec.window_s) + " s window");
    }
    std::vector<Window> windows;
    windows.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        windows.push_back(extract_window(rec, spec, k));
    }
    return windows;
}

WindowClass window_label(const LabelTrack& labels, double window_start_s, const WindowSpec& spec) {
    const double ictal = labels.seizure_overlap({window_start_s, window_start_s + spec.window_s});
    return ictal > ictal_threshold_s(spec) + kEps ? WindowClass::Ictal : WindowClass::NonIctal;
}

double ictal_threshold_s(const WindowSpec& spec) {
    // With window == shift the shift rule can never fire; fall back to majority.
    return spec.window_s > spec.shift_s + kEps ? spec.shift_s : 0.5 * spec.window_s;
}

std::vector<int> window_labels(const LabelTrack& labels, std::size_t n_windows, const WindowSpec& spec) {
    std::vector<int> out(n_windows);
    for (std::size_t k = 0; k < n_windows; ++k) {
        out[k] = static_cast<int>(window_label(labels, static_cast<double>(k) * spec.shift_s, spec));
    }
    return out;
}

} // namespace rtsd
