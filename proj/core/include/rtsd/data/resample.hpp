#pragma once

#include "rtsd/data/recording.hpp"

#include <span>
#include <vector>

namespace rtsd {

/// Rational-ratio polyphase resampler built from a Kaiser-windowed sinc
/// (beta 8, 64 taps per phase). The low-pass cutoff sits at the lower of
/// the two Nyquist frequencies. Edges are extended by sample replication.
class PolyphaseResampler {
public:
    static constexpr int kTapsPerPhase = 64;
    static constexpr double kKaiserBeta = 8.0;

    PolyphaseResampler(int from_hz, int to_hz);

    int up() const noexcept { return up_; }
    int down() const noexcept { return down_; }

    /// round(n * to / from) output samples.
    std::size_t output_length(std::size_t n_in) const;
    std::vector<float> process(std::span<const float> input) const;

private:
    int up_ = 1;
    int down_ = 1;
    // phase-major: up_ rows of kTapsPerPhase coefficients
    std::vector<double> table_;
};

std::vector<float> resample(std::span<const float> input, int from_hz, int to_hz);
Recording resample(const Recording& rec, int target_hz);

} // namespace rtsd
