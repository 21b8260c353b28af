#include "rtsd/data/resample.hpp"

#include "rtsd/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace rtsd {
namespace {

// Zeroth-order modified Bessel function of the first kind (power series).
double bessel_i0(double x) {
    double sum = 1.0;
    double term = 1.0;
    const double q = x * x / 4.0;
    for (int k = 1; k < 64; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return sum;
}

double sinc_pi(double x) {
    if (x == 0.0) return 1.0;
    const double a = std::numbers::pi * x;
    return std::sin(a) / a;
}

} // namespace

PolyphaseResampler::PolyphaseResampler(int from_hz, int to_hz) {
    require(from_hz > 0 && to_hz > 0, ErrorCode::InvalidArgument, "sample rates must be positive");
    const int g = std::gcd(from_hz, to_hz);
    up_ = to_hz / g;
    down_ = from_hz / g;

    // Cutoff in cycles per input sample, scaled so the kernel passes DC at 1.
    const double scale = std::min(1.0, static_cast<double>(up_) / static_cast<double>(down_));
    const double half = kTapsPerPhase / 2.0;
    const double i0_beta = bessel_i0(kKaiserBeta);

    table_.assign(static_cast<std::size_t>(up_) * kTapsPerPhase, 0.0);
    for (int phase = 0; phase < up_; ++phase) {
        const double frac = static_cast<double>(phase) / static_cast<double>(up_);
        double* row = table_.data() + static_cast<std::size_t>(phase) * kTapsPerPhase;
        double sum = 0.0;
        for (int k = 0; k < kTapsPerPhase; ++k) {
            // offset of input tap (n0 - half + 1 + k) from the output instant (n0 + frac)
            const double t = static_cast<double>(k) - (half - 1.0) - frac;
            const double r = t / half;
            const double window = std::abs(r) <= 1.0 ? bessel_i0(kKaiserBeta * std::sqrt(1.0 - r * r)) / i0_beta : 0.0;
            row[k] = scale * sinc_pi(scale * t) * window;
            sum += row[k];
        }
        for (int k = 0; k < kTapsPerPhase; ++k) {
            row[k] /= sum;
        }
    }
}

std::size_t PolyphaseResampler::output_length(std::size_t n_in) const {
    // round-half-up of n * up / down in integer arithmetic
    const auto num = static_cast<unsigned long long>(n_in) * static_cast<unsigned long long>(up_);
    const auto den = static_cast<unsigned long long>(down_);
    return static_cast<std::size_t>((2 * num + den) / (2 * den));
}

std::vector<float> PolyphaseResampler::process(std::span<const float> input) const {
    const std::size_t n_out = output_length(input.size());
    std::vector<float> out(n_out);
    if (input.empty()) return out;

    const auto last = static_cast<long long>(input.size()) - 1;
    const long long first_offset = 1 - kTapsPerPhase / 2;
    for (std::size_t j = 0; j < n_out; ++j) {
        const auto pos = static_cast<long long>(j) * down_;
        const long long n0 = pos / up_;
        const auto phase = static_cast<std::size_t>(pos % up_);
        const double* row = table_.data() + phase * kTapsPerPhase;
        double acc = 0.0;
        for (int k = 0; k < kTapsPerPhase; ++k) {
            const long long idx = std::clamp(n0 + first_offset + k, 0LL, last);
            acc += row[k] * static_cast<double>(input[static_cast<std::size_t>(idx)]);
        }
        out[j] = static_cast<float>(acc);
    }
    return out;
}

std::vector<float> resample(std::span<const float> input, int from_hz, int to_hz) {
    return PolyphaseResampler(from_hz, to_hz).process(input);
}

Recording resample(const Recording& rec, int target_hz) {
    require(target_hz > 0, ErrorCode::InvalidArgument, "target sample rate must be positive");
    if (target_hz == rec.sample_rate_hz()) return rec;

    const PolyphaseResampler resampler(rec.sample_rate_hz(), target_hz);
    const std::size_t n_out = resampler.output_length(rec.n_samples());
    std::vector<float> samples;
    samples.reserve(rec.n_channels() * n_out);
    for (std::size_t c = 0; c < rec.n_channels(); ++c) {
        const auto channel = resampler.process(rec.channel(c));
        samples.insert(samples.end(), channel.begin(), channel.end());
    }
    return Recording(target_hz, rec.channel_names(), std::move(samples), rec.montage());
}

} // namespace rtsd
