#pragma once

#include "rtsd/data/recording.hpp"
#include "rtsd/features/tensor.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace rtsd {

/// Band-pass taps before windowing and normalisation:
/// h[n] = 2 f2 sinc(2 pi f2 n) - 2 f1 sinc(2 pi f1 n), frequencies in
/// cycles per sample, n = k - len/2 so the centre tap sits at k = len/2.
std::vector<double> sinc_bandpass_taps(double f1_hz, double f2_hz, std::size_t kernel_len, int sample_rate_hz);

/// Hamming-windowed sinc band-pass kernel scaled to unit gain at the band
/// centre frequency.
std::vector<double> design_sinc_kernel(double f1_hz, double f2_hz, std::size_t kernel_len, int sample_rate_hz);

/// Magnitude of the kernel's frequency response at `freq_hz` (taps
/// referenced to the centre tap).
double kernel_response(const std::vector<double>& kernel, double freq_hz, int sample_rate_hz);

struct SincBank {
    std::vector<std::pair<double, double>> bands;  // (f1, f2) per filter
    std::size_t kernel_len = 80;
    std::size_t stride = 2;

    /// Seven fixed filters over the default physiological bands.
    static SincBank defaults();
    std::size_t n_filters() const noexcept { return bands.size(); }
};

/// Strided same-padded convolution of every channel with every kernel;
/// output (filters, channels, ceil(N / stride)). Output sample j is centred
/// on input sample j * stride.
class SincFilterbank {
public:
    SincFilterbank(const SincBank& bank, int sample_rate_hz);

    FeatureTensor extract(const SignalView& window) const;
    const std::vector<double>& kernel(std::size_t f) const { return kernels_[f]; }
    std::size_t output_length(std::size_t n_samples) const { return (n_samples + stride_ - 1) / stride_; }

private:
    int sample_rate_hz_ = 0;
    std::size_t stride_ = 2;
    std::vector<std::vector<double>> kernels_;
};

FeatureTensor sinc_filterbank(const SignalView& window, const SincBank& bank = SincBank::defaults());

} // namespace rtsd
