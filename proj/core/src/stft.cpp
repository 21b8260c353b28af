#include "rtsd/features/stft.hpp"

#include "rtsd/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rtsd {
namespace {

// std::abs goes through hypot, which is several times slower and buys no
// accuracy at these magnitudes.
double magnitude(std::complex<double> z) {
    return std::sqrt(z.real() * z.real() + z.imag() * z.imag());
}

} // namespace

StftParams StftParams::literal() {
    return StftParams{};
}

StftParams StftParams::shape_compat() {
    StftParams p;
    p.frame_samples = 198;
    p.hop_samples = 8;
    p.fft_size = 198;
    p.padding = StftPadding::Centered;
    return p;
}

std::size_t StftGeometry::frame_count(std::size_t n_samples) const {
    if (padding == StftPadding::Centered) {
        require(n_samples >= 1, ErrorCode::InvalidArgument, "empty STFT input");
        return (n_samples + hop - 1) / hop;
    }
    require(frame <= n_samples, ErrorCode::InvalidArgument,
            "STFT frame of " + std::to_string(frame) + " samples is longer than the " + std::to_string(n_samples) +
                "-sample window");
    return (n_samples - frame) / hop + 1;
}

StftGeometry resolve_stft(const StftParams& params, int sample_rate_hz) {
    require(sample_rate_hz > 0, ErrorCode::InvalidArgument, "sample rate must be positive");
    StftGeometry g;
    g.padding = params.padding;
    if (params.frame_samples > 0) {
        g.frame = params.frame_samples;
    } else {
        require(params.frame_len_s > 0.0, ErrorCode::InvalidArgument, "STFT frame length must be positive");
        g.frame = static_cast<std::size_t>(std::llround(params.frame_len_s * sample_rate_hz));
    }
    require(g.frame >= 1, ErrorCode::InvalidArgument, "STFT frame is shorter than one sample");
    if (params.hop_samples > 0) {
        g.hop = params.hop_samples;
    } else {
        require(params.hop_fraction > 0.0 && params.hop_fraction <= 1.0, ErrorCode::InvalidArgument,
                "hop fraction must be in (0, 1]");
        g.hop = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(params.hop_fraction * g.frame)));
    }
    g.fft = params.fft_size == 0 ? g.frame : params.fft_size;
    require(g.fft >= g.frame, ErrorCode::InvalidArgument, "FFT size is smaller than the frame");
    g.bins = g.fft / 2 + 1;
    return g;
}

std::vector<double> hann_window(std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
    }
    return w;
}

Spectrogram::Spectrogram(const StftParams& params, int sample_rate_hz)
    : geom_(resolve_stft(params, sample_rate_hz)),
      sample_rate_hz_(sample_rate_hz),
      window_(hann_window(geom_.frame)),
      fft_(geom_.fft) {}

void Spectrogram::fill_frame(std::span<const float> x, std::size_t t, std::vector<double>& buf) const {
    std::fill(buf.begin(), buf.end(), 0.0);
    const auto n = static_cast<long long>(x.size());
    if (geom_.padding == StftPadding::None) {
        const std::size_t start = t * geom_.hop;
        for (std::size_t i = 0; i < geom_.frame; ++i) {
            buf[i] = window_[i] * static_cast<double>(x[start + i]);
        }
        return;
    }
    // Zeros outside the signal: mirrored edges would flip the phase of a
    // sinusoid mid-frame and make edge frames phase dependent.
    const long long start = static_cast<long long>(t * geom_.hop) - static_cast<long long>(geom_.frame / 2);
    const long long lo = std::max(0LL, -start);
    const long long hi = std::min(static_cast<long long>(geom_.frame), n - start);
    for (long long i = lo; i < hi; ++i) {
        buf[static_cast<std::size_t>(i)] = window_[static_cast<std::size_t>(i)] * static_cast<double>(x[static_cast<std::size_t>(start + i)]);
    }
}

std::vector<double> Spectrogram::magnitudes(std::span<const float> x) const {
    const std::size_t frames = geom_.frame_count(x.size());
    std::vector<double> out(geom_.bins * frames);
    std::vector<double> buf(geom_.fft);
    std::vector<std::complex<double>> spec(geom_.bins);
    for (std::size_t t = 0; t < frames; ++t) {
        fill_frame(x, t, buf);
        fft_.forward_real(buf, spec);
        for (std::size_t k = 0; k < geom_.bins; ++k) out[k * frames + t] = magnitude(spec[k]);
    }
    return out;
}

void Spectrogram::magnitudes_pair(std::span<const float> a, std::span<const float> b, std::vector<double>& out_a,
                                  std::vector<double>& out_b) const {
    require(a.size() == b.size(), ErrorCode::InvalidArgument, "paired channels differ in length");
    const std::size_t frames = geom_.frame_count(a.size());
    out_a.assign(geom_.bins * frames, 0.0);
    out_b.assign(geom_.bins * frames, 0.0);
    std::vector<double> buf_a(geom_.fft);
    std::vector<double> buf_b(geom_.fft);
    std::vector<std::complex<double>> spec_a(geom_.bins);
    std::vector<std::complex<double>> spec_b(geom_.bins);
    for (std::size_t t = 0; t < frames; ++t) {
        fill_frame(a, t, buf_a);
        fill_frame(b, t, buf_b);
        fft_.forward_real_pair(buf_a, buf_b, spec_a, spec_b);
        for (std::size_t k = 0; k < geom_.bins; ++k) {
            out_a[k * frames + t] = magnitude(spec_a[k]);
            out_b[k * frames + t] = magnitude(spec_b[k]);
        }
    }
}

std::vector<double> Spectrogram::frame_magnitudes(std::span<const double> frame) const {
    require(frame.size() == geom_.frame, ErrorCode::InvalidArgument, "frame length mismatch");
    std::vector<double> buf(geom_.fft, 0.0);
    for (std::size_t i = 0; i < geom_.frame; ++i) buf[i] = window_[i] * frame[i];
    std::vector<std::complex<double>> spec(geom_.bins);
    fft_.forward_real(buf, spec);
    std::vector<double> out(geom_.bins);
    for (std::size_t k = 0; k < geom_.bins; ++k) out[k] = magnitude(spec[k]);
    return out;
}

void Spectrogram::for_each_channel(const SignalView& window,
                                   const std::function<void(std::size_t, const std::vector<double>&)>& sink) const {
    require(window.sample_rate_hz == sample_rate_hz_, ErrorCode::InvalidArgument,
            "window sample rate " + std::to_string(window.sample_rate_hz) + " Hz does not match the " +
                std::to_string(sample_rate_hz_) + " Hz spectrogram");
    std::vector<double> ma;
    std::vector<double> mb;
    std::size_t c = 0;
    for (; c + 1 < window.n_channels; c += 2) {
        magnitudes_pair(window.channel(c), window.channel(c + 1), ma, mb);
        sink(c, ma);
        sink(c + 1, mb);
    }
    if (c < window.n_channels) {
        sink(c, magnitudes(window.channel(c)));
    }
}

FeatureTensor stft(const Spectrogram& engine, const SignalView& window) {
    const auto& g = engine.geometry();
    const std::size_t frames = g.frame_count(window.n_samples);
    const std::size_t plane = g.bins * frames;
    std::vector<float> data(window.n_channels * plane);
    engine.for_each_channel(window, [&](std::size_t c, const std::vector<double>& mags) {
        std::transform(mags.begin(), mags.end(), data.begin() + static_cast<std::ptrdiff_t>(c * plane),
                       [](double v) { return static_cast<float>(v); });
    });
    return FeatureTensor(ExtractorId::Stft, {window.n_channels, g.bins, frames}, std::move(data));
}

FeatureTensor stft(const SignalView& window, const StftParams& params) {
    return stft(Spectrogram(params, window.sample_rate_hz), window);
}

} // namespace rtsd
