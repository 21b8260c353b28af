#include "rtsd/features/lfcc.hpp"

#include "rtsd/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rtsd {
namespace {

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

std::size_t reflect(long long i, long long n) {
    if (n == 1) return 0;
    while (i < 0 || i >= n) {
        if (i < 0) i = -i;
        if (i >= n) i = 2 * (n - 1) - i;
    }
    return static_cast<std::size_t>(i);
}

} // namespace

LfccExtractor::LfccExtractor(const LfccParams& params, int sample_rate_hz)
    : params_(params), sample_rate_hz_(sample_rate_hz), fft_(1) {
    require(sample_rate_hz > 0, ErrorCode::InvalidArgument, "sample rate must be positive");
    require(params.frame_len_s > 0.0 && params.hop_s > 0.0, ErrorCode::InvalidArgument,
            "LFCC frame and hop must be positive");
    require(params.n_filters >= 1 && params.n_coeffs >= 1 && params.n_coeffs <= params.n_filters,
            ErrorCode::InvalidArgument, "LFCC needs 1 <= n_coeffs <= n_filters");
    require(params.log_floor > 0.0, ErrorCode::InvalidArgument, "log floor must be positive");

    frame_ = static_cast<std::size_t>(std::llround(params.frame_len_s * sample_rate_hz));
    hop_ = static_cast<std::size_t>(std::llround(params.hop_s * sample_rate_hz));
    require(frame_ >= 2 && hop_ >= 1, ErrorCode::InvalidArgument, "LFCC frame too short for the sample rate");
    fft_size_ = params.fft_size == 0 ? next_pow2(frame_) : params.fft_size;
    require(fft_size_ >= frame_, ErrorCode::InvalidArgument, "FFT size is smaller than the LFCC frame");
    bins_ = fft_size_ / 2 + 1;
    fft_ = Fft(fft_size_);

    window_.resize(frame_);
    for (std::size_t i = 0; i < frame_; ++i) {
        window_[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                            static_cast<double>(frame_ - 1));
    }

    // Filter m spans edge[m]..edge[m+2] with its apex at edge[m+1].
    const std::size_t nf = params.n_filters;
    const double nyquist = sample_rate_hz / 2.0;
    std::vector<double> edge(nf + 2);
    for (std::size_t i = 0; i < edge.size(); ++i) {
        edge[i] = nyquist * static_cast<double>(i) / static_cast<double>(nf + 1);
    }
    filters_.assign(nf * bins_, 0.0);
    for (std::size_t m = 0; m < nf; ++m) {
        const double lo = edge[m];
        const double mid = edge[m + 1];
        const double hi = edge[m + 2];
        for (std::size_t k = 0; k < bins_; ++k) {
            const double f = static_cast<double>(k) * sample_rate_hz / static_cast<double>(fft_size_);
            double w = 0.0;
            if (f > lo && f <= mid) {
                w = (f - lo) / (mid - lo);
            } else if (f > mid && f < hi) {
                w = (hi - f) / (hi - mid);
            }
            filters_[m * bins_ + k] = w;
        }
    }

    const std::size_t nc = params.n_coeffs;
    dct_.assign(nc * nf, 0.0);
    for (std::size_t k = 0; k < nc; ++k) {
        const double scale = k == 0 ? std::sqrt(1.0 / static_cast<double>(nf)) : std::sqrt(2.0 / static_cast<double>(nf));
        for (std::size_t m = 0; m < nf; ++m) {
            dct_[k * nf + m] = scale * std::cos(std::numbers::pi * static_cast<double>(k) *
                                                (static_cast<double>(m) + 0.5) / static_cast<double>(nf));
        }
    }
}

std::size_t LfccExtractor::frame_count(std::size_t n_samples) const {
    const std::size_t padded = n_samples + (params_.pad ? 2 * hop_ : 0);
    require(padded >= frame_, ErrorCode::InvalidArgument,
            "LFCC frame of " + std::to_string(frame_) + " samples does not fit the window");
    return (padded - frame_) / hop_ + 1;
}

std::vector<double> LfccExtractor::log_energies(std::span<const double> frame) const {
    require(frame.size() == frame_, ErrorCode::InvalidArgument, "LFCC frame length mismatch");
    std::vector<double> buf(fft_size_, 0.0);
    for (std::size_t i = 0; i < frame_; ++i) buf[i] = window_[i] * frame[i];
    std::vector<std::complex<double>> spec(bins_);
    fft_.forward_real(buf, spec);

    const std::size_t nf = params_.n_filters;
    std::vector<double> out(nf);
    for (std::size_t m = 0; m < nf; ++m) {
        double e = 0.0;
        for (std::size_t k = 0; k < bins_; ++k) {
            e += filters_[m * bins_ + k] * std::norm(spec[k]);
        }
        out[m] = std::log(std::max(e, params_.log_floor));
    }
    return out;
}

std::vector<double> LfccExtractor::cepstrum(std::span<const double> frame) const {
    const auto log_e = log_energies(frame);
    const std::size_t nf = params_.n_filters;
    std::vector<double> out(params_.n_coeffs);
    for (std::size_t k = 0; k < out.size(); ++k) {
        double acc = 0.0;
        for (std::size_t m = 0; m < nf; ++m) acc += dct_[k * nf + m] * log_e[m];
        out[k] = acc;
    }
    return out;
}

FeatureTensor LfccExtractor::extract(const SignalView& window) const {
    require(window.sample_rate_hz == sample_rate_hz_, ErrorCode::InvalidArgument,
            "window sample rate does not match the LFCC extractor");
    const std::size_t frames = frame_count(window.n_samples);
    const std::size_t nc = params_.n_coeffs;
    const auto n = static_cast<long long>(window.n_samples);
    const long long offset = params_.pad ? static_cast<long long>(hop_) : 0;

    std::vector<float> data(window.n_channels * nc * frames);
    std::vector<double> frame(frame_);
    for (std::size_t c = 0; c < window.n_channels; ++c) {
        const auto x = window.channel(c);
        for (std::size_t t = 0; t < frames; ++t) {
            const long long start = static_cast<long long>(t * hop_) - offset;
            for (std::size_t i = 0; i < frame_; ++i) {
                frame[i] = static_cast<double>(x[reflect(start + static_cast<long long>(i), n)]);
            }
            const auto coeffs = cepstrum(frame);
            for (std::size_t k = 0; k < nc; ++k) {
                data[(c * nc + k) * frames + t] = static_cast<float>(std::abs(coeffs[k]));
            }
        }
    }
    return FeatureTensor(ExtractorId::Lfcc, {window.n_channels, nc, frames}, std::move(data));
}

FeatureTensor lfcc(const SignalView& window, const LfccParams& params) {
    return LfccExtractor(params, window.sample_rate_hz).extract(window);
}

} // namespace rtsd
