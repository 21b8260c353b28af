#pragma once

#include "rtsd/data/recording.hpp"
#include "rtsd/features/tensor.hpp"

#include <vector>

namespace rtsd {

struct MultiRateParams {
    std::vector<int> rates_hz = {200, 100, 50};
    bool anti_alias = false;
    double anti_alias_cutoff_hz = 100.0;
    std::size_t anti_alias_taps = 101;
};

/// Hamming-windowed sinc low-pass, odd length, unit DC gain.
std::vector<double> design_lowpass(double cutoff_hz, std::size_t taps, int sample_rate_hz);

/// One (channels, 1, N * rate / src) tensor per rate. Each stream is the
/// source decimated by src / rate, optionally after the anti-alias FIR.
std::vector<FeatureTensor> multirate(const SignalView& window, const MultiRateParams& params = {});

/// The multirate streams concatenated along the last axis; shape
/// (channels, 1, sum of stream lengths).
FeatureTensor multirate_concat(const SignalView& window, const MultiRateParams& params = {});

} // namespace rtsd
