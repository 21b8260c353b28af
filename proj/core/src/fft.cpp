#include "rtsd/features/fft.hpp"

#include "rtsd/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rtsd {
namespace {

using cd = std::complex<double>;

// Plain product; std::complex's operator* adds an Annex G NaN recovery path.
inline cd cmul(cd a, cd b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

std::vector<cd>& buffer(int slot, std::size_t n) {
    thread_local std::vector<cd> buffers[3];
    buffers[slot].resize(n);
    return buffers[slot];
}

} // namespace

Fft::Fft(std::size_t n) : n_(n) {
    require(n > 0, ErrorCode::InvalidArgument, "FFT size must be positive");
    std::size_t rest = n;
    auto push = [&](std::size_t p) {
        rest /= p;
        stages_.push_back({p, rest});
        max_radix_ = std::max(max_radix_, p);
    };
    while (rest % 2 == 0) push(2);
    for (std::size_t p = 3; p * p <= rest;) {
        if (rest % p == 0) {
            push(p);
        } else {
            p += 2;
        }
    }
    if (rest > 1) push(rest);

    for (auto& st : stages_) {
        st.root_offset = roots_.size();
        for (std::size_t j = 0; j < st.radix; ++j) {
            const double a = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(st.radix);
            roots_.push_back(std::cos(a));
            roots_.push_back(std::sin(a));
        }
    }

    twiddles_.resize(n);
    const double step = -2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        twiddles_[k] = std::polar(1.0, step * static_cast<double>(k));
    }
}

void Fft::work(std::complex<double>* out, const std::complex<double>* in, std::size_t stride, std::size_t stage,
               std::complex<double>* scratch) const {
    const std::size_t p = stages_[stage].radix;
    const std::size_t m = stages_[stage].span;

    if (m == 1) {
        for (std::size_t j = 0; j < p; ++j) out[j] = in[j * stride];
    } else {
        for (std::size_t j = 0; j < p; ++j) {
            work(out + j * m, in + j * stride, stride * p, stage + 1, scratch);
        }
    }

    // Combine p sub-transforms of length m; twiddle index stride is `stride`.
    if (p == 2) {
        for (std::size_t u = 0; u < m; ++u) {
            const cd t = cmul(out[u + m], twiddles_[u * stride]);
            out[u + m] = out[u] - t;
            out[u] += t;
        }
        return;
    }
    if (p == 3) {
        const double s3 = twiddles_[stride * m].imag();  // -sin(2 pi / 3)
        for (std::size_t u = 0; u < m; ++u) {
            const cd a = out[u];
            const cd b = cmul(out[u + m], twiddles_[u * stride]);
            const cd c = cmul(out[u + 2 * m], twiddles_[2 * u * stride]);
            const cd sum = b + c;
            const cd diff = b - c;
            const cd mid = a - 0.5 * sum;
            const cd rot{-s3 * diff.imag(), s3 * diff.real()};
            out[u] = a + sum;
            out[u + m] = mid + rot;
            out[u + 2 * m] = mid - rot;
        }
        return;
    }
    // Generic odd radix: pair q with p - q so each output pair shares one
    // pass of real-by-complex products.
    const std::size_t half = (p - 1) / 2;
    const double* cs = roots_.data() + stages_[stage].root_offset;  // cos, sin interleaved
    cd* sums = scratch + p;
    cd* diffs = scratch + p + half + 1;
    for (std::size_t u = 0; u < m; ++u) {
        scratch[0] = out[u];
        for (std::size_t q = 1; q < p; ++q) scratch[q] = cmul(out[u + q * m], twiddles_[q * u * stride]);
        cd dc = scratch[0];
        for (std::size_t q = 1; q <= half; ++q) {
            sums[q] = scratch[q] + scratch[p - q];
            diffs[q] = scratch[q] - scratch[p - q];
            dc += sums[q];
        }
        out[u] = dc;
        for (std::size_t q1 = 1; q1 <= half; ++q1) {
            cd re = scratch[0];
            cd im = 0.0;
            std::size_t idx = 0;
            for (std::size_t q = 1; q <= half; ++q) {
                idx += q1;
                if (idx >= p) idx -= p;
                re += cs[2 * idx] * sums[q];
                im += cs[2 * idx + 1] * diffs[q];
            }
            out[u + q1 * m] = re + cd(im.imag(), -im.real());
            out[u + (p - q1) * m] = re + cd(-im.imag(), im.real());
        }
    }
}

void Fft::forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const {
    require(in.size() == n_ && out.size() == n_, ErrorCode::InvalidArgument, "FFT buffer size mismatch");
    if (stages_.empty()) {  // n == 1
        out[0] = in[0];
        return;
    }
    auto& scratch = buffer(0, 2 * max_radix_ + 1);
    work(out.data(), in.data(), 1, 0, scratch.data());
}

void Fft::forward_real_pair(std::span<const double> a, std::span<const double> b,
                            std::span<std::complex<double>> out_a, std::span<std::complex<double>> out_b) const {
    const std::size_t half = n_ / 2 + 1;
    require(a.size() == n_ && b.size() == n_ && out_a.size() >= half && out_b.size() >= half,
            ErrorCode::InvalidArgument, "real FFT buffer size mismatch");
    auto& packed = buffer(1, n_);
    auto& spec = buffer(2, n_);
    for (std::size_t i = 0; i < n_; ++i) packed[i] = {a[i], b[i]};
    forward(packed, spec);
    for (std::size_t k = 0; k < half; ++k) {
        const std::complex<double> x = spec[k];
        const std::complex<double> y = std::conj(spec[(n_ - k) % n_]);
        out_a[k] = 0.5 * (x + y);
        // (x - y) / 2i
        const std::complex<double> d = 0.5 * (x - y);
        out_b[k] = {d.imag(), -d.real()};
    }
}

void Fft::forward_real(std::span<const double> in, std::span<std::complex<double>> out) const {
    const std::size_t half = n_ / 2 + 1;
    require(in.size() == n_ && out.size() >= half, ErrorCode::InvalidArgument, "real FFT buffer size mismatch");
    auto& packed = buffer(1, n_);
    auto& spec = buffer(2, n_);
    std::copy(in.begin(), in.end(), packed.begin());
    forward(packed, spec);
    std::copy(spec.begin(), spec.begin() + static_cast<std::ptrdiff_t>(half), out.begin());
}

std::vector<std::complex<double>> naive_dft(std::span<const std::complex<double>> in) {
    const std::size_t n = in.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            const double angle = -2.0 * std::numbers::pi * static_cast<double>((k * t) % n) / static_cast<double>(n);
            acc += in[t] * std::polar(1.0, angle);
        }
        out[k] = acc;
    }
    return out;
}

} // namespace rtsd
