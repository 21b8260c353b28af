#pragma once

#include "rtsd/data/recording.hpp"
#include "rtsd/features/fft.hpp"
#include "rtsd/features/tensor.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace rtsd {

enum class StftPadding {
    None,    // frames = floor((N - frame) / hop) + 1
    Centered  // frame t centred on sample t * hop, zeros beyond the edges; frames = ceil(N / hop)
};

struct StftParams {
    double frame_len_s = 0.125;
    double hop_fraction = 0.5;
    std::size_t frame_samples = 0;  // overrides frame_len_s when non-zero
    std::size_t hop_samples = 0;    // overrides hop_fraction when non-zero
    std::size_t fft_size = 0;       // 0: same as the frame length
    StftPadding padding = StftPadding::None;

    /// 0.125 s Hann frames, 50 % hop, no padding.
    static StftParams literal();
    /// 198-sample Hann frames and FFT, hop 8, centred frames: a 4 s window
    /// at 200 Hz yields 100 bins x 100 frames.
    static StftParams shape_compat();
};

struct StftGeometry {
    std::size_t frame = 0;
    std::size_t hop = 0;
    std::size_t fft = 0;
    std::size_t bins = 0;
    StftPadding padding = StftPadding::None;

    std::size_t frame_count(std::size_t n_samples) const;
};

StftGeometry resolve_stft(const StftParams& params, int sample_rate_hz);

/// Hann-windowed magnitude spectrogram engine. Holds the window and FFT
/// plan so repeated windows do not re-plan.
class Spectrogram {
public:
    Spectrogram(const StftParams& params, int sample_rate_hz);

    const StftGeometry& geometry() const noexcept { return geom_; }
    int sample_rate_hz() const noexcept { return sample_rate_hz_; }
    double bin_hz(std::size_t k) const {
        return static_cast<double>(k) * sample_rate_hz_ / static_cast<double>(geom_.fft);
    }

    /// Magnitudes of one channel, bins x frames row-major.
    std::vector<double> magnitudes(std::span<const float> x) const;
    /// Two channels through one complex FFT per frame.
    void magnitudes_pair(std::span<const float> a, std::span<const float> b, std::vector<double>& out_a,
                         std::vector<double>& out_b) const;

    /// Calls `sink(c, magnitudes)` for every channel in order; channels are
    /// transformed two at a time.
    void for_each_channel(const SignalView& window,
                          const std::function<void(std::size_t, const std::vector<double>&)>& sink) const;

    /// One-sided magnitudes of a single already-cut frame (length = frame).
    std::vector<double> frame_magnitudes(std::span<const double> frame) const;

    std::span<const double> window() const noexcept { return window_; }

private:
    void fill_frame(std::span<const float> x, std::size_t t, std::vector<double>& buf) const;

    StftGeometry geom_;
    int sample_rate_hz_ = 0;
    std::vector<double> window_;
    Fft fft_;
};

/// Per channel magnitude spectrogram: tensor (channels, bins, frames).
FeatureTensor stft(const Spectrogram& engine, const SignalView& window);
FeatureTensor stft(const SignalView& window, const StftParams& params = StftParams::shape_compat());

/// Periodic Hann window of length n.
std::vector<double> hann_window(std::size_t n);

} // namespace rtsd
