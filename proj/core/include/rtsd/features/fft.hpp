#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace rtsd {

/// Mixed-radix complex FFT for any length (radix-2 and generic odd-prime
/// butterflies). A plan is immutable after construction and can be shared
/// across threads.
class Fft {
public:
    explicit Fft(std::size_t n);

    std::size_t size() const noexcept { return n_; }

    /// Forward transform X[k] = sum_n x[n] exp(-2 pi i k n / N), out of place.
    void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const;

    /// Transforms two real sequences with one complex FFT. Each output holds
    /// the one-sided spectrum (N/2 + 1 bins).
    void forward_real_pair(std::span<const double> a, std::span<const double> b,
                           std::span<std::complex<double>> out_a, std::span<std::complex<double>> out_b) const;

    /// One-sided spectrum of a single real sequence.
    void forward_real(std::span<const double> in, std::span<std::complex<double>> out) const;

private:
    struct Stage {
        std::size_t radix;
        std::size_t span;  // n / (product of radices up to and including this one)
        std::size_t root_offset = 0;
    };

    void work(std::complex<double>* out, const std::complex<double>* in, std::size_t stride, std::size_t stage,
              std::complex<double>* scratch) const;

    std::size_t n_ = 0;
    std::vector<Stage> stages_;
    std::vector<std::complex<double>> twiddles_;
    std::vector<double> roots_;  // per stage: cos, sin of 2 pi j / radix
    std::size_t max_radix_ = 1;
};

/// O(N^2) reference DFT; used by tests as an independent oracle.
std::vector<std::complex<double>> naive_dft(std::span<const std::complex<double>> in);

} // namespace rtsd
