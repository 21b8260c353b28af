#include "rtsd/features/bands.hpp"
#include "rtsd/features/extractor.hpp"
#include "rtsd/features/lfcc.hpp"
#include "rtsd/features/multirate.hpp"
#include "rtsd/features/sinc.hpp"
#include "rtsd/features/stft.hpp"
#include "rtsd/random.hpp"
#include "test_support.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace rtsd {
namespace {

using test::throws_code;

constexpr int kFs = 200;

struct Block {
    std::vector<float> samples;
    std::size_t channels;
    std::size_t n;
    SignalView view() const { return {samples, channels, n, kFs}; }
};

Block sine_block(std::size_t channels, std::size_t n, double freq, double amp = 1.0, double phase = 0.0) {
    Block b{std::vector<float>(channels * n), channels, n};
    for (std::size_t c = 0; c < channels; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            b.samples[c * n + i] = static_cast<float>(amp * std::sin(2.0 * std::numbers::pi * freq * i / kFs + phase));
        }
    }
    return b;
}

Block noise_block(std::size_t channels, std::size_t n, std::uint64_t seed, double amp = 10.0) {
    Rng rng(seed);
    Block b{std::vector<float>(channels * n), channels, n};
    for (auto& v : b.samples) v = static_cast<float>(amp * rng.normal());
    return b;
}

Block zero_block(std::size_t channels, std::size_t n) { return {std::vector<float>(channels * n, 0.0f), channels, n}; }

std::vector<double> periodic_hann(std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / n);
    return w;
}

// One-sided DFT magnitudes of a real sequence, evaluated term by term.
std::vector<double> direct_magnitudes(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<double> out(n / 2 + 1);
    for (std::size_t k = 0; k < out.size(); ++k) {
        std::complex<double> acc = 0.0;
        for (std::size_t t = 0; t < n; ++t) acc += x[t] * std::polar(1.0, -2.0 * std::numbers::pi * double((k * t) % n) / n);
        out[k] = std::abs(acc);
    }
    return out;
}

TEST(Raw, PassthroughShapeAndValues) {
    const Block b = noise_block(20, 800, 1);
    const FeatureTensor t = extract_raw(b.view());
    EXPECT_EQ(t.shape(), (Shape3{20, 1, 800}));
    EXPECT_TRUE(std::equal(t.data().begin(), t.data().end(), b.samples.begin()));

    const Block tiny{{1.0f, -2.0f, 3.0f, 4.5f}, 1, 4};
    EXPECT_EQ(extract_raw(tiny.view()).shape(), (Shape3{1, 1, 4}));
    EXPECT_EQ(extract_raw(tiny.view()).at(0, 0, 3), 4.5f);
}

TEST(Raw, RejectsNonFinite) {
    Block b = noise_block(2, 10, 1);
    b.samples[7] = std::numeric_limits<float>::quiet_NaN();
    EXPECT_TRUE(throws_code([&] { extract_raw(b.view()); }, ErrorCode::InvalidArgument));
    b.samples[7] = std::numeric_limits<float>::infinity();
    EXPECT_TRUE(throws_code([&] { extract_raw(b.view()); }, ErrorCode::InvalidArgument));
}

TEST(Shapes, FourSecondTwentyChannelWindow) {
    const Block b = noise_block(20, 800, 2);
    EXPECT_EQ(frequency_bands(b.view()).shape(), (Shape3{20, 7, 100}));
    EXPECT_EQ(sinc_filterbank(b.view()).shape(), (Shape3{7, 20, 400}));
    EXPECT_EQ(stft(b.view()).shape(), (Shape3{20, 100, 100}));
    EXPECT_EQ(lfcc(b.view()).shape(), (Shape3{20, 8, 25}));
    const auto streams = multirate(b.view());
    ASSERT_EQ(streams.size(), 3u);
    EXPECT_EQ(streams[0].shape(), (Shape3{20, 1, 800}));
    EXPECT_EQ(streams[1].shape(), (Shape3{20, 1, 400}));
    EXPECT_EQ(streams[2].shape(), (Shape3{20, 1, 200}));
    EXPECT_EQ(multirate_concat(b.view()).shape(), (Shape3{20, 1, 1400}));
}

TEST(Shapes, LiteralPresetAndPaddedLfcc) {
    const Block b = noise_block(2, 800, 3);
    // 25-sample frames, hop round(12.5) = 13: floor((800 - 25) / 13) + 1 = 60 frames, 13 bins
    EXPECT_EQ(stft(b.view(), StftParams::literal()).shape(), (Shape3{2, 13, 60}));
    LfccParams padded;
    padded.pad = true;
    EXPECT_EQ(lfcc(b.view(), padded).shape(), (Shape3{2, 8, 27}));
}

TEST(Shapes, HoldForOtherWindowSizes) {
    Rng rng(4);
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t ch = 1 + rng.index(6);
        const std::size_t n = 4 * (60 + rng.index(200));  // multiple of 4 for the 50 Hz stream
        const Block b = noise_block(ch, n, rng.next_u64());
        EXPECT_EQ(make_extractor(ExtractorId::Raw)->extract(b.view()).shape(), (Shape3{ch, 1, n}));
        EXPECT_EQ(make_extractor(ExtractorId::Stft)->extract(b.view()).shape(), (Shape3{ch, 100, (n + 7) / 8}));
        EXPECT_EQ(make_extractor(ExtractorId::Bands)->extract(b.view()).shape(), (Shape3{ch, 7, (n + 7) / 8}));
        EXPECT_EQ(make_extractor(ExtractorId::SincNet)->extract(b.view()).shape(), (Shape3{7, ch, (n + 1) / 2}));
        EXPECT_EQ(make_extractor(ExtractorId::Lfcc)->extract(b.view()).shape(), (Shape3{ch, 8, (n - 60) / 30 + 1}));
        EXPECT_EQ(make_extractor(ExtractorId::MultiRate)->extract(b.view()).shape(), (Shape3{ch, 1, n + n / 2 + n / 4}));
    }
}

TEST(Extractors, DeterministicAndNamed) {
    const Block b = noise_block(3, 800, 5);
    for (const char* name : {"raw", "sincnet", "stft", "bands", "lfcc", "multirate"}) {
        const auto x = make_extractor(name);
        EXPECT_EQ(to_string(x->id()), name);
        const FeatureTensor a = x->extract(b.view());
        const FeatureTensor c = x->extract(b.view());
        EXPECT_EQ(a, c) << name;
        EXPECT_EQ(a.id(), x->id());
    }
    EXPECT_TRUE(throws_code([] { make_extractor("mfcc"); }, ErrorCode::InvalidArgument));
}

TEST(Extractors, ZeroWindowGivesZeroFeatures) {
    const Block z = zero_block(4, 800);
    for (ExtractorId id : {ExtractorId::Stft, ExtractorId::Bands, ExtractorId::SincNet, ExtractorId::MultiRate}) {
        const FeatureTensor t = make_extractor(id)->extract(z.view());
        for (float v : t.data()) ASSERT_EQ(v, 0.0f) << to_string(id);
    }
}

TEST(Stft, MatchesDirectDftOnOneFrame) {
    Rng rng(6);
    for (const StftParams& params : {StftParams::literal(), StftParams::shape_compat()}) {
        const Spectrogram engine(params, kFs);
        const std::size_t n = engine.geometry().frame;
        std::vector<double> frame(n);
        for (auto& v : frame) v = rng.normal();
        const auto got = engine.frame_magnitudes(frame);
        const auto w = periodic_hann(n);
        std::vector<double> xw(n);
        for (std::size_t i = 0; i < n; ++i) xw[i] = w[i] * frame[i];
        const auto want = direct_magnitudes(xw);
        ASSERT_EQ(got.size(), want.size());
        for (std::size_t k = 0; k < want.size(); ++k) EXPECT_NEAR(got[k], want[k], 1e-9);
    }
}

TEST(Stft, ParsevalOverRandomFrames) {
    Rng rng(7);
    for (const StftParams& params : {StftParams::literal(), StftParams::shape_compat()}) {
        const Spectrogram engine(params, kFs);
        const std::size_t n = engine.geometry().fft;
        const auto w = periodic_hann(n);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> frame(n);
            const double scale = std::exp(rng.uniform(-3.0, 3.0));
            for (auto& v : frame) v = scale * rng.normal();
            const auto mag = engine.frame_magnitudes(frame);
            double spectral = mag[0] * mag[0];
            for (std::size_t k = 1; k < mag.size(); ++k) {
                const bool nyquist = n % 2 == 0 && k == n / 2;
                spectral += (nyquist ? 1.0 : 2.0) * mag[k] * mag[k];
            }
            double energy = 0.0;
            for (std::size_t i = 0; i < n; ++i) energy += (w[i] * frame[i]) * (w[i] * frame[i]);
            EXPECT_NEAR(spectral / (n * energy), 1.0, 1e-6);
        }
    }
}

std::size_t argmax_bin(const FeatureTensor& t, std::size_t frame) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < t.shape().d1; ++k) {
        if (t.at(0, k, frame) > t.at(0, best, frame)) best = k;
    }
    return best;
}

TEST(Stft, SineArgmaxIsNearestBin) {
    const Block b = sine_block(1, 800, 8.0);
    for (const StftParams& params : {StftParams::literal(), StftParams::shape_compat()}) {
        const Spectrogram engine(params, kFs);
        const auto& g = engine.geometry();
        const FeatureTensor t = stft(engine, b.view());
        std::size_t nearest = 0;
        for (std::size_t k = 0; k < g.bins; ++k) {
            if (std::abs(engine.bin_hz(k) - 8.0) < std::abs(engine.bin_hz(nearest) - 8.0)) nearest = k;
        }
        const auto w = periodic_hann(g.frame);
        for (std::size_t f = 0; f < t.shape().d2; ++f) {
            // The frame exactly as the engine sees it, zero beyond the edges.
            const long long start = static_cast<long long>(f * g.hop) -
                                    (g.padding == StftPadding::Centered ? static_cast<long long>(g.frame / 2) : 0);
            std::vector<double> xw(g.fft, 0.0);
            bool inside = true;
            for (std::size_t i = 0; i < g.frame; ++i) {
                long long idx = start + static_cast<long long>(i);
                if (idx < 0 || idx >= 800) {
                    inside = false;
                    continue;
                }
                xw[i] = w[i] * b.samples[static_cast<std::size_t>(idx)];
            }
            const auto oracle = direct_magnitudes(xw);
            const auto oracle_best =
                static_cast<std::size_t>(std::max_element(oracle.begin(), oracle.end()) - oracle.begin());
            EXPECT_EQ(argmax_bin(t, f), oracle_best) << "frame " << f;
            if (inside) EXPECT_EQ(argmax_bin(t, f), nearest) << "frame " << f;
        }
    }
}

TEST(Stft, RejectsFrameLongerThanWindow) {
    const Block b = noise_block(1, 20, 1);
    EXPECT_TRUE(throws_code([&] { stft(b.view(), StftParams::literal()); }, ErrorCode::InvalidArgument));
}

double band_mean(const FeatureTensor& t, std::size_t band) {
    double s = 0.0;
    for (std::size_t c = 0; c < t.shape().d0; ++c)
        for (std::size_t f = 0; f < t.shape().d2; ++f) s += t.at(c, band, f);
    return s / static_cast<double>(t.shape().d0 * t.shape().d2);
}

TEST(Bands, TenHertzDominatesAlphaBand) {
    const FeatureTensor t = frequency_bands(sine_block(2, 800, 10.0).view());
    const double alpha = band_mean(t, 2);
    for (std::size_t b = 0; b < 7; ++b) {
        if (b != 2) EXPECT_GT(alpha, 10.0 * band_mean(t, b)) << "band " << b;
    }
}

TEST(Bands, PowerStatAlsoPeaksInAlpha) {
    const FeatureTensor t = frequency_bands(sine_block(1, 800, 10.0).view(), StftParams::shape_compat(),
                                            BandSpec::defaults(), BandStat::Power);
    for (std::size_t b = 0; b < 7; ++b) {
        if (b != 2) EXPECT_GT(band_mean(t, 2), 10.0 * band_mean(t, b));
    }
}

TEST(Bands, PhaseInvariant) {
    const BandSpec spec = BandSpec::defaults();
    for (double freq : {2.5, 6.0, 10.0, 20.0, 40.0, 60.0, 85.0}) {
        std::size_t band = 0;
        while (!(freq >= spec.edges[band].first && freq < spec.edges[band].second)) ++band;
        const FeatureTensor a = frequency_bands(sine_block(1, 800, freq).view());
        const FeatureTensor b = frequency_bands(sine_block(1, 800, freq, 1.0, std::numbers::pi / 2).view());
        EXPECT_NEAR(band_mean(a, band) / band_mean(b, band), 1.0, 0.02) << freq << " Hz";
    }
}

TEST(Bands, Validation) {
    EXPECT_TRUE(throws_code([] { BandExtractor(StftParams::shape_compat(), BandSpec{{{50.0, 120.0}}}, kFs); },
                            ErrorCode::InvalidArgument));
    EXPECT_TRUE(throws_code([] { BandExtractor(StftParams::shape_compat(), BandSpec{{{8.0, 4.0}}}, kFs); },
                            ErrorCode::InvalidArgument));
}

TEST(Lfcc, ZeroWindowIsTransformOfLogFloor) {
    const FeatureTensor t = lfcc(zero_block(2, 800).view());
    const double c0 = std::abs(std::log(1e-10)) * std::sqrt(20.0);  // orthonormal DCT of a constant vector
    for (std::size_t c = 0; c < 2; ++c) {
        for (std::size_t f = 0; f < t.shape().d2; ++f) {
            EXPECT_NEAR(t.at(c, 0, f), c0, 1e-4 * c0);
            for (std::size_t k = 1; k < 8; ++k) EXPECT_NEAR(t.at(c, k, f), 0.0, 1e-4);
        }
    }
}

TEST(Lfcc, ScalingShiftsOnlyFirstCoefficient) {
    const LfccExtractor x(LfccParams{}, kFs);
    Rng rng(8);
    std::vector<double> frame(x.frame_samples()), doubled(x.frame_samples());
    for (std::size_t i = 0; i < frame.size(); ++i) {
        frame[i] = rng.normal();
        doubled[i] = 2.0 * frame[i];
    }
    const auto a = x.cepstrum(frame);
    const auto b = x.cepstrum(doubled);
    ASSERT_EQ(a.size(), 8u);
    EXPECT_NEAR(b[0] - a[0], std::log(4.0) * std::sqrt(20.0), 1e-9);
    for (std::size_t k = 1; k < 8; ++k) EXPECT_NEAR(b[k], a[k], 1e-6);
}

TEST(Lfcc, CepstrumIsOrthonormalDctOfLogEnergies) {
    const LfccExtractor x(LfccParams{}, kFs);
    Rng rng(9);
    std::vector<double> frame(x.frame_samples());
    for (auto& v : frame) v = rng.normal();
    const auto e = x.log_energies(frame);
    const auto c = x.cepstrum(frame);
    const std::size_t m = e.size();
    ASSERT_EQ(m, 20u);
    for (std::size_t k = 0; k < c.size(); ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m; ++j) acc += e[j] * std::cos(std::numbers::pi * k * (j + 0.5) / m);
        acc *= std::sqrt((k == 0 ? 1.0 : 2.0) / m);
        EXPECT_NEAR(c[k], acc, 1e-9);
    }
}

TEST(Lfcc, TensorHoldsAbsoluteCepstrum) {
    const Block b = noise_block(1, 800, 10);
    const LfccExtractor x(LfccParams{}, kFs);
    const FeatureTensor t = x.extract(b.view());
    std::vector<double> frame(x.frame_samples());
    const std::size_t f = 3;
    for (std::size_t i = 0; i < frame.size(); ++i) frame[i] = b.samples[f * x.hop_samples() + i];
    const auto c = x.cepstrum(frame);
    for (std::size_t k = 0; k < 8; ++k) EXPECT_NEAR(t.at(0, k, f), std::abs(c[k]), 1e-4 * (1.0 + std::abs(c[k])));
}

TEST(Sinc, CentreTapBeforeWindowing) {
    const auto h = sinc_bandpass_taps(8.0, 12.0, 80, kFs);
    ASSERT_EQ(h.size(), 80u);
    EXPECT_NEAR(h[40], 2.0 * (12.0 - 8.0) / kFs, 1e-15);
}

TEST(Sinc, LowPassHasUnitDcGain) {
    const auto h = design_sinc_kernel(0.0, 30.0, 80, kFs);
    EXPECT_NEAR(kernel_response(h, 0.0, kFs), 1.0, 0.02);
}

TEST(Sinc, BandPassSelectivity) {
    const auto h = design_sinc_kernel(8.0, 12.0, 80, kFs);
    EXPECT_NEAR(kernel_response(h, 10.0, kFs), 1.0, 1e-12);
    EXPECT_GT(kernel_response(h, 10.0, kFs), 10.0 * kernel_response(h, 40.0, kFs));
    EXPECT_TRUE(throws_code([] { design_sinc_kernel(12.0, 8.0, 80, kFs); }, ErrorCode::InvalidArgument));
    EXPECT_TRUE(throws_code([] { design_sinc_kernel(50.0, 120.0, 80, kFs); }, ErrorCode::InvalidArgument));
}

TEST(Sinc, FilterbankRoutesTenHertz) {
    const FeatureTensor t = sinc_filterbank(sine_block(2, 800, 10.0).view());
    auto rms = [&](std::size_t f) {
        double s = 0.0;
        for (std::size_t c = 0; c < 2; ++c)
            for (std::size_t j = 0; j < t.shape().d2; ++j) s += double(t.at(f, c, j)) * t.at(f, c, j);
        return std::sqrt(s / (2.0 * t.shape().d2));
    };
    EXPECT_GT(rms(2), 5.0 * rms(6));
}

TEST(Sinc, FilterbankIsHomogeneous) {
    const Block b = noise_block(3, 800, 11);
    Block scaled = b;
    for (auto& v : scaled.samples) v *= 4.0f;  // power of two keeps the input exact
    const FeatureTensor t1 = sinc_filterbank(b.view());
    const FeatureTensor t4 = sinc_filterbank(scaled.view());
    double peak = 0.0;
    for (float v : t1.data()) peak = std::max(peak, double(std::abs(v)));
    for (std::size_t i = 0; i < t1.size(); ++i) {
        EXPECT_NEAR(t4.data()[i], 4.0 * t1.data()[i], 1e-6 * 4.0 * peak);
    }
}

TEST(Sinc, OutputSampleIsCentredConvolution) {
    const Block b = noise_block(1, 100, 12);
    const SincFilterbank bank(SincBank::defaults(), kFs);
    const FeatureTensor t = bank.extract(b.view());
    const auto& h = bank.kernel(3);
    const std::size_t j = 25;
    double acc = 0.0;
    for (std::size_t k = 0; k < h.size(); ++k) {
        const long long idx = static_cast<long long>(j * 2 + k) - 40;
        if (idx >= 0 && idx < 100) acc += h[k] * b.samples[static_cast<std::size_t>(idx)];
    }
    EXPECT_NEAR(t.at(3, 0, j), acc, 1e-4);
}

TEST(MultiRate, DecimatesByTakingEveryKthSample) {
    const Block b = noise_block(2, 800, 13);
    const auto streams = multirate(b.view());
    for (std::size_t j = 0; j < 200; ++j) {
        EXPECT_EQ(streams[1].at(1, 0, j), b.samples[800 + 2 * j]);
        EXPECT_EQ(streams[2].at(0, 0, j), b.samples[4 * j]);
    }
}

TEST(MultiRate, ConstantStaysConstant) {
    const Block b{std::vector<float>(1600, 3.5f), 2, 800};
    for (bool aa : {false, true}) {
        MultiRateParams p;
        p.anti_alias = aa;
        for (const auto& s : multirate(b.view(), p))
            for (float v : s.data()) EXPECT_NEAR(v, 3.5f, 1e-5);
    }
}

TEST(MultiRate, AntiAliasAtFullBandMatchesPlainDecimation) {
    const Block b = sine_block(1, 800, 30.0);
    MultiRateParams on;
    on.anti_alias = true;
    const auto plain = multirate(b.view());
    const auto filtered = multirate(b.view(), on);
    for (std::size_t s = 0; s < 3; ++s)
        for (std::size_t i = 0; i < plain[s].size(); ++i) EXPECT_NEAR(filtered[s].data()[i], plain[s].data()[i], 1e-3);
}

TEST(MultiRate, RejectsNonDivisorRate) {
    const Block b = noise_block(1, 800, 14);
    MultiRateParams p;
    p.rates_hz = {200, 75};
    EXPECT_TRUE(throws_code([&] { multirate(b.view(), p); }, ErrorCode::InvalidArgument));
}

TEST(Tensor, TextAndBinaryRoundTrip) {
    const FeatureTensor t = frequency_bands(noise_block(2, 800, 15).view());
    for (TensorFormat fmt : {TensorFormat::Text, TensorFormat::Binary}) {
        std::stringstream io(std::ios::in | std::ios::out | std::ios::binary);
        write_tensor(io, t, fmt);
        EXPECT_EQ(read_tensor(io), t);
    }
}

TEST(Tensor, RejectsShapeMismatchAndNonFinite) {
    EXPECT_TRUE(throws_code([] { FeatureTensor(ExtractorId::Raw, {1, 1, 3}, {1.0f, 2.0f}); }, ErrorCode::InvalidArgument));
    EXPECT_TRUE(throws_code([] { FeatureTensor(ExtractorId::Raw, {1, 1, 1}, {std::numeric_limits<float>::quiet_NaN()}); },
                            ErrorCode::InvalidArgument));
}

} // namespace
} // namespace rtsd
