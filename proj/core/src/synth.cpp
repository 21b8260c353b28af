#include "rtsd/data/synth.hpp"

#include "rtsd/error.hpp"
#include "rtsd/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace rtsd {
namespace {

constexpr double kEventGap_s = 5.0;

// Paul Kellet's refined pink filter: -3 dB/octave over ~9 octaves.
class PinkNoise {
public:
    double next(double white) {
        b_[0] = 0.99886 * b_[0] + white * 0.0555179;
        b_[1] = 0.99332 * b_[1] + white * 0.0750759;
        b_[2] = 0.96900 * b_[2] + white * 0.1538520;
        b_[3] = 0.86650 * b_[3] + white * 0.3104856;
        b_[4] = 0.55000 * b_[4] + white * 0.5329522;
        b_[5] = -0.7616 * b_[5] - white * 0.0168980;
        const double out = b_[0] + b_[1] + b_[2] + b_[3] + b_[4] + b_[5] + b_[6] + white * 0.5362;
        b_[6] = white * 0.115926;
        return out;
    }

private:
    double b_[7] = {};
};

std::vector<Interval> place_events(const SynthConfig& cfg, Rng& rng) {
    std::vector<Interval> events = cfg.events;
    for (std::size_t i = 0; i < cfg.n_random_events; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
            const double len = rng.uniform(cfg.random_event_min_s, cfg.random_event_max_s);
            const double lo = kEventGap_s;
            const double hi = cfg.duration_s - kEventGap_s - len;
            if (hi <= lo) continue;
            // whole milliseconds keep the label file exact
            const double start = std::round(rng.uniform(lo, hi) * 1000.0) / 1000.0;
            const Interval cand{start, start + std::round(len * 1000.0) / 1000.0};
            placed = std::none_of(events.begin(), events.end(), [&](const Interval& e) {
                return cand.start_s < e.stop_s + kEventGap_s && e.start_s < cand.stop_s + kEventGap_s;
            });
            if (placed) events.push_back(cand);
        }
        require(placed, ErrorCode::InvalidArgument, "cannot place " + std::to_string(cfg.n_random_events) +
                                                        " random events in " + std::to_string(cfg.duration_s) + " s");
    }
    std::sort(events.begin(), events.end(), [](const Interval& a, const Interval& b) { return a.start_s < b.start_s; });
    return events;
}

} // namespace

SynthResult synth_recording(const SynthConfig& cfg) {
    require(cfg.duration_s > 0.0 && cfg.sample_rate_hz > 0, ErrorCode::InvalidArgument,
            "synthetic duration and sample rate must be positive");
    require(cfg.background_amplitude_uv > 0.0 && cfg.ictal_amplitude_uv >= 0.0, ErrorCode::InvalidArgument,
            "background amplitude must be positive and ictal amplitude non-negative");
    require(cfg.ictal_base_freq_hz > 0.0, ErrorCode::InvalidArgument, "ictal base frequency must be positive");
    require(cfg.random_event_min_s > 0.0 && cfg.random_event_max_s >= cfg.random_event_min_s,
            ErrorCode::InvalidArgument, "random event length range is invalid");

    std::vector<std::string> names = cfg.channel_names;
    if (names.empty()) {
        require(cfg.n_channels > 0, ErrorCode::InvalidArgument, "need at least one channel");
        char buf[16];
        for (std::size_t c = 0; c < cfg.n_channels; ++c) {
            std::snprintf(buf, sizeof(buf), "CH%02zu", c + 1);
            names.emplace_back(buf);
        }
    }

    for (const auto& e : cfg.events) {
        require(e.start_s >= 0.0 && e.stop_s > e.start_s && e.stop_s <= cfg.duration_s, ErrorCode::InvalidArgument,
                "synthetic event lies outside the recording");
    }

    Rng rng(cfg.seed);
    const auto events = place_events(cfg, rng);
    for (std::size_t i = 1; i < events.size(); ++i) {
        require(events[i].start_s >= events[i - 1].stop_s, ErrorCode::InvalidArgument, "synthetic events overlap");
    }

    const int fs = cfg.sample_rate_hz;
    const auto n = static_cast<std::size_t>(std::llround(cfg.duration_s * fs));
    Recording rec(fs, names, n, Montage::Unipolar);

    // Per-event base frequency jitter of +-10 %.
    std::vector<double> event_freq;
    for (std::size_t i = 0; i < events.size(); ++i) {
        event_freq.push_back(cfg.ictal_base_freq_hz * (0.9 + 0.2 * rng.uniform()));
    }

    const double two_pi = 2.0 * std::numbers::pi;
    // RMS of sin + 0.5 sin(2x) + 0.25 sin(3x)
    const double spike_wave_rms = std::sqrt((1.0 + 0.25 + 0.0625) / 2.0);
    std::vector<double> pink(n);
    for (std::size_t c = 0; c < rec.n_channels(); ++c) {
        PinkNoise filter;
        for (int warm = 0; warm < 4096; ++warm) filter.next(rng.normal());
        double energy = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            pink[t] = filter.next(rng.normal());
            energy += pink[t] * pink[t];
        }
        const double gain = cfg.background_amplitude_uv / std::sqrt(energy / static_cast<double>(n));

        const double channel_gain = 0.6 + 0.4 * rng.uniform();
        const double phase = two_pi * rng.uniform();
        const double ictal_scale = cfg.ictal_amplitude_uv * channel_gain / spike_wave_rms;

        auto dst = rec.channel(c);
        for (std::size_t t = 0; t < n; ++t) {
            dst[t] = static_cast<float>(pink[t] * gain);
        }
        for (std::size_t i = 0; i < events.size(); ++i) {
            const auto begin = static_cast<std::size_t>(std::ceil(events[i].start_s * fs - 1e-9));
            const auto end = std::min(n, static_cast<std::size_t>(std::ceil(events[i].stop_s * fs - 1e-9)));
            const double w = two_pi * event_freq[i];
            for (std::size_t t = begin; t < end; ++t) {
                const double x = w * static_cast<double>(t) / fs + phase;
                const double spike = std::sin(x) + 0.5 * std::sin(2.0 * x) + 0.25 * std::sin(3.0 * x);
                dst[t] = static_cast<float>(static_cast<double>(dst[t]) + ictal_scale * spike);
            }
        }
    }

    std::vector<Event> labelled;
    for (const auto& e : events) {
        labelled.push_back({e.start_s, e.stop_s, cfg.event_label});
    }
    return {std::move(rec), LabelTrack(std::move(labelled), static_cast<double>(n) / fs)};
}

} // namespace rtsd
