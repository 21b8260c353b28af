#pragma once

#include "rtsd/features/stft.hpp"

#include <utility>
#include <vector>

namespace rtsd {

struct BandSpec {
    std::vector<std::pair<double, double>> edges;

    /// 1-4, 4-8, 8-12, 12-30, 30-50, 50-70, 70-100 Hz.
    static BandSpec defaults();
};

enum class BandStat { Magnitude, Power };

/// Averages STFT bins whose centre frequency lies in [lo, hi) for each
/// band; output (channels, bands, frames).
class BandExtractor {
public:
    BandExtractor(const StftParams& params, const BandSpec& bands, int sample_rate_hz,
                  BandStat stat = BandStat::Magnitude);

    FeatureTensor extract(const SignalView& window) const;

    std::size_t n_bands() const noexcept { return ranges_.size(); }
    /// Half-open bin index range [first, last) for band b.
    std::pair<std::size_t, std::size_t> bin_range(std::size_t b) const { return ranges_[b]; }
    const Spectrogram& spectrogram() const noexcept { return engine_; }

private:
    Spectrogram engine_;
    std::vector<std::pair<std::size_t, std::size_t>> ranges_;
    BandStat stat_;
};

FeatureTensor frequency_bands(const SignalView& window, const StftParams& params = StftParams::shape_compat(),
                              const BandSpec& bands = BandSpec::defaults(), BandStat stat = BandStat::Magnitude);

} // namespace rtsd
