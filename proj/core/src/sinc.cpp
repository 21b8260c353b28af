#include "rtsd/features/sinc.hpp"

#include "rtsd/error.hpp"
#include "rtsd/features/bands.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace rtsd {
namespace {

double sinc(double x) {
    return x == 0.0 ? 1.0 : std::sin(x) / x;
}

} // namespace

std::vector<double> sinc_bandpass_taps(double f1_hz, double f2_hz, std::size_t kernel_len, int sample_rate_hz) {
    require(sample_rate_hz > 0, ErrorCode::InvalidArgument, "sample rate must be positive");
    require(kernel_len >= 2 && kernel_len % 2 == 0, ErrorCode::InvalidArgument, "sinc kernel length must be even");
    require(f1_hz >= 0.0 && f1_hz < f2_hz && f2_hz <= sample_rate_hz / 2.0, ErrorCode::InvalidArgument,
            "sinc band needs 0 <= f1 < f2 <= Nyquist");
    const double f1 = f1_hz / sample_rate_hz;
    const double f2 = f2_hz / sample_rate_hz;
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> h(kernel_len);
    const auto centre = static_cast<long long>(kernel_len / 2);
    for (std::size_t k = 0; k < kernel_len; ++k) {
        const auto n = static_cast<double>(static_cast<long long>(k) - centre);
        h[k] = 2.0 * f2 * sinc(two_pi * f2 * n) - 2.0 * f1 * sinc(two_pi * f1 * n);
    }
    return h;
}

double kernel_response(const std::vector<double>& kernel, double freq_hz, int sample_rate_hz) {
    const double w = 2.0 * std::numbers::pi * freq_hz / sample_rate_hz;
    const auto centre = static_cast<long long>(kernel.size() / 2);
    std::complex<double> acc = 0.0;
    for (std::size_t k = 0; k < kernel.size(); ++k) {
        acc += kernel[k] * std::polar(1.0, -w * static_cast<double>(static_cast<long long>(k) - centre));
    }
    return std::abs(acc);
}

std::vector<double> design_sinc_kernel(double f1_hz, double f2_hz, std::size_t kernel_len, int sample_rate_hz) {
    auto h = sinc_bandpass_taps(f1_hz, f2_hz, kernel_len, sample_rate_hz);
    // periodic Hamming, peak 1 at the centre tap
    for (std::size_t k = 0; k < kernel_len; ++k) {
        h[k] *= 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(kernel_len));
    }
    const double gain = kernel_response(h, 0.5 * (f1_hz + f2_hz), sample_rate_hz);
    require(gain > 0.0, ErrorCode::InvalidArgument, "sinc kernel has no gain in its pass band");
    for (auto& v : h) v /= gain;
    return h;
}

SincBank SincBank::defaults() {
    SincBank bank;
    bank.bands = BandSpec::defaults().edges;
    return bank;
}

SincFilterbank::SincFilterbank(const SincBank& bank, int sample_rate_hz)
    : sample_rate_hz_(sample_rate_hz), stride_(bank.stride) {
    require(!bank.bands.empty(), ErrorCode::InvalidArgument, "sinc bank has no filters");
    require(bank.stride >= 1, ErrorCode::InvalidArgument, "sinc stride must be positive");
    for (const auto& [f1, f2] : bank.bands) {
        kernels_.push_back(design_sinc_kernel(f1, f2, bank.kernel_len, sample_rate_hz));
    }
}

FeatureTensor SincFilterbank::extract(const SignalView& window) const {
    require(window.sample_rate_hz == sample_rate_hz_, ErrorCode::InvalidArgument,
            "window sample rate does not match the sinc filterbank");
    const std::size_t n = window.n_samples;
    const std::size_t out_len = output_length(n);
    const std::size_t nf = kernels_.size();
    const std::size_t nc = window.n_channels;
    std::vector<float> data(nf * nc * out_len);

    std::vector<double> x;
    for (std::size_t c = 0; c < nc; ++c) {
        const auto src = window.channel(c);
        x.assign(src.begin(), src.end());
        for (std::size_t f = 0; f < nf; ++f) {
            const auto& h = kernels_[f];
            const auto len = static_cast<long long>(h.size());
            const long long pad = len / 2;
            float* dst = data.data() + (f * nc + c) * out_len;
            for (std::size_t j = 0; j < out_len; ++j) {
                const long long base = static_cast<long long>(j * stride_) - pad;
                const long long k0 = std::max(0LL, -base);
                const long long k1 = std::min(len, static_cast<long long>(n) - base);
                double acc = 0.0;
                for (long long k = k0; k < k1; ++k) {
                    acc += h[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(base + k)];
                }
                dst[j] = static_cast<float>(acc);
            }
        }
    }
    return FeatureTensor(ExtractorId::SincNet, {nf, nc, out_len}, std::move(data));
}

FeatureTensor sinc_filterbank(const SignalView& window, const SincBank& bank) {
    return SincFilterbank(bank, window.sample_rate_hz).extract(window);
}

} // namespace rtsd
