#include "rtsd/features/multirate.hpp"

#include "rtsd/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rtsd {

std::vector<double> design_lowpass(double cutoff_hz, std::size_t taps, int sample_rate_hz) {
    require(taps % 2 == 1, ErrorCode::InvalidArgument, "low-pass length must be odd");
    require(cutoff_hz > 0.0 && sample_rate_hz > 0, ErrorCode::InvalidArgument, "low-pass cutoff must be positive");
    const double fc = std::min(cutoff_hz, sample_rate_hz / 2.0) / sample_rate_hz;
    const auto half = static_cast<long long>(taps / 2);
    std::vector<double> h(taps);
    double sum = 0.0;
    for (std::size_t k = 0; k < taps; ++k) {
        const auto n = static_cast<double>(static_cast<long long>(k) - half);
        const double x = 2.0 * std::numbers::pi * fc * n;
        const double s = n == 0.0 ? 1.0 : std::sin(x) / x;
        const double w = taps == 1 ? 1.0 : 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) /
                                                                   static_cast<double>(taps - 1));
        h[k] = 2.0 * fc * s * w;
        sum += h[k];
    }
    for (auto& v : h) v /= sum;
    return h;
}

std::vector<FeatureTensor> multirate(const SignalView& window, const MultiRateParams& params) {
    const int src = window.sample_rate_hz;
    require(!params.rates_hz.empty(), ErrorCode::InvalidArgument, "no multirate output rates");
    for (int rate : params.rates_hz) {
        require(rate > 0 && rate <= src && src % rate == 0, ErrorCode::InvalidArgument,
                "rate " + std::to_string(rate) + " Hz does not divide the " + std::to_string(src) + " Hz source");
        require(window.n_samples % static_cast<std::size_t>(src / rate) == 0, ErrorCode::InvalidArgument,
                "window length is not a multiple of the decimation factor for " + std::to_string(rate) + " Hz");
    }

    const std::size_t n = window.n_samples;
    std::vector<float> filtered;
    if (params.anti_alias) {
        const auto h = design_lowpass(params.anti_alias_cutoff_hz, params.anti_alias_taps, src);
        const auto half = static_cast<long long>(h.size() / 2);
        const auto last = static_cast<long long>(n) - 1;
        filtered.resize(window.n_channels * n);
        for (std::size_t c = 0; c < window.n_channels; ++c) {
            const auto x = window.channel(c);
            for (std::size_t t = 0; t < n; ++t) {
                double acc = 0.0;
                for (std::size_t k = 0; k < h.size(); ++k) {
                    const long long idx = std::clamp(static_cast<long long>(t) + static_cast<long long>(k) - half, 0LL, last);
                    acc += h[k] * static_cast<double>(x[static_cast<std::size_t>(idx)]);
                }
                filtered[c * n + t] = static_cast<float>(acc);
            }
        }
    }
    const SignalView source =
        params.anti_alias ? SignalView{filtered, window.n_channels, n, src} : window;

    std::vector<FeatureTensor> out;
    for (int rate : params.rates_hz) {
        const auto factor = static_cast<std::size_t>(src / rate);
        const std::size_t len = n / factor;
        std::vector<float> data(window.n_channels * len);
        for (std::size_t c = 0; c < window.n_channels; ++c) {
            const auto x = source.channel(c);
            for (std::size_t j = 0; j < len; ++j) data[c * len + j] = x[j * factor];
        }
        out.emplace_back(ExtractorId::MultiRate, Shape3{window.n_channels, 1, len}, std::move(data));
    }
    return out;
}

FeatureTensor multirate_concat(const SignalView& window, const MultiRateParams& params) {
    const auto streams = multirate(window, params);
    std::size_t total = 0;
    for (const auto& s : streams) total += s.shape().d2;
    std::vector<float> data(window.n_channels * total);
    std::size_t offset = 0;
    for (const auto& s : streams) {
        const std::size_t len = s.shape().d2;
        for (std::size_t c = 0; c < window.n_channels; ++c) {
            std::copy_n(s.data().begin() + static_cast<std::ptrdiff_t>(c * len), len,
                        data.begin() + static_cast<std::ptrdiff_t>(c * total + offset));
        }
        offset += len;
    }
    return FeatureTensor(ExtractorId::MultiRate, {window.n_channels, 1, total}, std::move(data));
}

} // namespace rtsd
