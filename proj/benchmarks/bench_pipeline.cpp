#include "rtsd/bench/stream.hpp"
#include "rtsd/data/synth.hpp"
#include "rtsd/detectors/linear_detector.hpp"
#include "rtsd/features/extractor.hpp"
#include "rtsd/features/fft.hpp"
#include "rtsd/metrics/curves.hpp"
#include "rtsd/metrics/scoring.hpp"
#include "rtsd/random.hpp"

#include <benchmark/benchmark.h>

namespace {

const rtsd::Recording& recording() {
    static const rtsd::Recording rec = [] {
        rtsd::SynthConfig cfg;
        cfg.duration_s = 30.0;
        cfg.events = {{10.0, 20.0}};
        cfg.seed = 42;
        return rtsd::synth_recording(cfg).recording;
    }();
    return rec;
}

void BM_Extract(benchmark::State& state) {
    const auto id = static_cast<rtsd::ExtractorId>(state.range(0));
    const auto extractor = rtsd::make_extractor(id);
    const rtsd::Window w = rtsd::extract_window(recording(), {}, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(extractor->extract(w.view()));
    }
    state.SetLabel(std::string(rtsd::to_string(id)));
}
BENCHMARK(BM_Extract)->DenseRange(0, 5)->Unit(benchmark::kMicrosecond);

void BM_LinearScore(benchmark::State& state) {
    const auto extractor = rtsd::make_extractor(rtsd::ExtractorId::Bands);
    const rtsd::Window w = rtsd::extract_window(recording(), {}, 0);
    const rtsd::FeatureTensor t = extractor->extract(w.view());
    const rtsd::LinearDetector detector(rtsd::zero_model(t.id(), t.shape()));
    rtsd::DetectorState s;
    for (auto _ : state) {
        benchmark::DoNotOptimize(detector.score(t, s));
    }
}
BENCHMARK(BM_LinearScore)->Unit(benchmark::kMicrosecond);

void BM_StreamWindow(benchmark::State& state) {
    const auto extractor = rtsd::make_extractor(rtsd::ExtractorId::Raw);
    const rtsd::Window w = rtsd::extract_window(recording(), {}, 0);
    const rtsd::LinearDetector detector(rtsd::zero_model(rtsd::ExtractorId::Raw, extractor->extract(w.view()).shape()));
    for (auto _ : state) {
        const auto result = rtsd::run_stream(recording(), *extractor, detector, {});
        benchmark::DoNotOptimize(result.hypothesis.scores.data());
    }
    state.SetItemsProcessed(state.iterations() * 27);
}
BENCHMARK(BM_StreamWindow)->Unit(benchmark::kMillisecond);

void BM_Fft(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const rtsd::Fft fft(n);
    rtsd::Rng rng(1);
    std::vector<std::complex<double>> in(n);
    std::vector<std::complex<double>> out(n);
    for (auto& v : in) v = {rng.normal(), rng.normal()};
    for (auto _ : state) {
        fft.forward(in, out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_Fft)->Arg(25)->Arg(64)->Arg(198)->Arg(1024);

void BM_CurveMetrics(benchmark::State& state) {
    rtsd::Rng rng(7);
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<int> labels(n);
    std::vector<double> scores(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = rng.uniform() < 0.3 ? 1 : 0;
        scores[i] = rng.uniform();
    }
    labels[0] = 1;
    labels[1] = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rtsd::curve_metrics(labels, scores).auroc);
    }
}
BENCHMARK(BM_CurveMetrics)->Arg(1000)->Arg(100000);

} // namespace

BENCHMARK_MAIN();
