#include "rtsd/features/bands.hpp"

#include "rtsd/error.hpp"

#include <algorithm>

namespace rtsd {

BandSpec BandSpec::defaults() {
    return BandSpec{{{1, 4}, {4, 8}, {8, 12}, {12, 30}, {30, 50}, {50, 70}, {70, 100}}};
}

BandExtractor::BandExtractor(const StftParams& params, const BandSpec& bands, int sample_rate_hz, BandStat stat)
    : engine_(params, sample_rate_hz), stat_(stat) {
    require(!bands.edges.empty(), ErrorCode::InvalidArgument, "band list is empty");
    const double nyquist = sample_rate_hz / 2.0;
    double previous_lo = -1.0;
    for (const auto& [lo, hi] : bands.edges) {
        const std::string label = std::to_string(lo) + "-" + std::to_string(hi) + " Hz";
        require(lo >= 0.0 && lo < hi, ErrorCode::InvalidArgument, "band " + label + " is inverted or negative");
        require(hi <= nyquist, ErrorCode::InvalidArgument, "band " + label + " exceeds the Nyquist frequency");
        require(lo > previous_lo, ErrorCode::InvalidArgument, "bands are not in ascending order");
        previous_lo = lo;

        std::size_t first = engine_.geometry().bins;
        std::size_t last = 0;
        for (std::size_t k = 0; k < engine_.geometry().bins; ++k) {
            const double f = engine_.bin_hz(k);
            if (f >= lo && f < hi) {
                first = std::min(first, k);
                last = k + 1;
            }
        }
        require(last > first, ErrorCode::InvalidArgument, "band " + label + " contains no STFT bin");
        ranges_.emplace_back(first, last);
    }
}

FeatureTensor BandExtractor::extract(const SignalView& window) const {
    const std::size_t frames = engine_.geometry().frame_count(window.n_samples);
    const std::size_t nb = ranges_.size();
    std::vector<float> data(window.n_channels * nb * frames);
    engine_.for_each_channel(window, [&](std::size_t c, const std::vector<double>& mags) {
        for (std::size_t b = 0; b < nb; ++b) {
            const auto [first, last] = ranges_[b];
            const double count = static_cast<double>(last - first);
            for (std::size_t t = 0; t < frames; ++t) {
                double acc = 0.0;
                for (std::size_t k = first; k < last; ++k) {
                    const double m = mags[k * frames + t];
                    acc += stat_ == BandStat::Power ? m * m : m;
                }
                data[(c * nb + b) * frames + t] = static_cast<float>(acc / count);
            }
        }
    });
    return FeatureTensor(ExtractorId::Bands, {window.n_channels, nb, frames}, std::move(data));
}

FeatureTensor frequency_bands(const SignalView& window, const StftParams& params, const BandSpec& bands,
                              BandStat stat) {
    return BandExtractor(params, bands, window.sample_rate_hz, stat).extract(window);
}

} // namespace rtsd
