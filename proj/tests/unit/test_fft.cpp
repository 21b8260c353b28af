#include "rtsd/error.hpp"
#include "rtsd/features/fft.hpp"
#include "rtsd/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace rtsd {
namespace {

using cd = std::complex<double>;

double max_abs_diff(const std::vector<cd>& a, const std::vector<cd>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

// Direct evaluation without the library's helper, to keep the oracle independent.
std::vector<cd> direct_dft(const std::vector<cd>& x) {
    const std::size_t n = x.size();
    std::vector<cd> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        long double re = 0, im = 0;
        for (std::size_t t = 0; t < n; ++t) {
            const long double a = -2.0L * std::numbers::pi_v<long double> * static_cast<long double>((k * t) % n) /
                                  static_cast<long double>(n);
            re += x[t].real() * std::cos(a) - x[t].imag() * std::sin(a);
            im += x[t].real() * std::sin(a) + x[t].imag() * std::cos(a);
        }
        out[k] = {static_cast<double>(re), static_cast<double>(im)};
    }
    return out;
}

TEST(Fft, MatchesDirectDftForAwkwardLengths) {
    Rng rng(11);
    for (std::size_t n : {1u, 2u, 3u, 5u, 7u, 8u, 12u, 25u, 49u, 64u, 97u, 100u, 121u, 198u, 210u, 243u, 400u}) {
        std::vector<cd> x(n);
        for (auto& v : x) v = {rng.normal(), rng.normal()};
        std::vector<cd> got(n);
        Fft(n).forward(x, got);
        EXPECT_LT(max_abs_diff(got, direct_dft(x)), 1e-10 * std::sqrt(static_cast<double>(n)) + 1e-12) << "n=" << n;
    }
}

TEST(Fft, NaiveHelperAgreesWithDirect) {
    Rng rng(3);
    std::vector<cd> x(30);
    for (auto& v : x) v = {rng.normal(), rng.normal()};
    EXPECT_LT(max_abs_diff(naive_dft(x), direct_dft(x)), 1e-11);
}

TEST(Fft, SingleToneLandsInOneBin) {
    const std::size_t n = 198;
    std::vector<cd> x(n);
    for (std::size_t t = 0; t < n; ++t) x[t] = std::polar(1.0, 2.0 * std::numbers::pi * 17.0 * t / n);
    std::vector<cd> out(n);
    Fft(n).forward(x, out);
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(std::abs(out[k]), k == 17 ? double(n) : 0.0, 1e-9);
}

TEST(Fft, RealPairMatchesSeparateTransforms) {
    Rng rng(5);
    for (std::size_t n : {8u, 15u, 64u, 198u}) {
        std::vector<double> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = rng.normal();
            b[i] = rng.normal();
        }
        std::vector<cd> ca(a.begin(), a.end()), cb(b.begin(), b.end());
        const auto ra = direct_dft(ca), rb = direct_dft(cb);
        const std::size_t half = n / 2 + 1;
        std::vector<cd> oa(half), ob(half), single(half);
        const Fft plan(n);
        plan.forward_real_pair(a, b, oa, ob);
        plan.forward_real(a, single);
        for (std::size_t k = 0; k < half; ++k) {
            EXPECT_LT(std::abs(oa[k] - ra[k]), 1e-10);
            EXPECT_LT(std::abs(ob[k] - rb[k]), 1e-10);
            EXPECT_LT(std::abs(single[k] - ra[k]), 1e-10);
        }
    }
}

TEST(Fft, RejectsBadSizes) {
    EXPECT_THROW(Fft(0), Error);
    std::vector<cd> in(4), out(5);
    EXPECT_THROW(Fft(4).forward(in, out), Error);
}

} // namespace
} // namespace rtsd
