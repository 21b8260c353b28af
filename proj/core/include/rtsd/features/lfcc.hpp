#pragma once

#include "rtsd/data/recording.hpp"
#include "rtsd/features/fft.hpp"
#include "rtsd/features/tensor.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace rtsd {

struct LfccParams {
    double frame_len_s = 0.3;
    double hop_s = 0.15;
    std::size_t n_filters = 20;  // linearly spaced triangular filters, 0 Hz to Nyquist
    std::size_t n_coeffs = 8;
    std::size_t fft_size = 0;    // 0: next power of two >= frame
    bool pad = false;            // reflect-pad one hop at each end
    double log_floor = 1e-10;    // filterbank energies are clamped here before the log
};

/// Linear-frequency cepstral coefficients. Per frame: Hamming window ->
/// power spectrum -> triangular filterbank -> log -> orthonormal DCT-II,
/// keeping the first n_coeffs coefficients in absolute value.
class LfccExtractor {
public:
    LfccExtractor(const LfccParams& params, int sample_rate_hz);

    std::size_t frame_samples() const noexcept { return frame_; }
    std::size_t hop_samples() const noexcept { return hop_; }
    std::size_t frame_count(std::size_t n_samples) const;

    FeatureTensor extract(const SignalView& window) const;

    /// Signed cepstrum of one frame (length frame_samples()); the tensor
    /// holds the absolute values of these.
    std::vector<double> cepstrum(std::span<const double> frame) const;

    /// Log filterbank energies of one frame.
    std::vector<double> log_energies(std::span<const double> frame) const;

    /// Filter m weight for one-sided FFT bin k.
    double filter_weight(std::size_t m, std::size_t k) const { return filters_[m * bins_ + k]; }

private:
    LfccParams params_;
    int sample_rate_hz_ = 0;
    std::size_t frame_ = 0;
    std::size_t hop_ = 0;
    std::size_t fft_size_ = 0;
    std::size_t bins_ = 0;
    std::vector<double> window_;
    std::vector<double> filters_;  // n_filters x bins
    std::vector<double> dct_;      // n_coeffs x n_filters
    Fft fft_;
};

FeatureTensor lfcc(const SignalView& window, const LfccParams& params = {});

} // namespace rtsd
