#pragma once

#include "rtsd/features/tensor.hpp"

#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace rtsd {

/// Per-stream memory carried from one window to the next. Empty for
/// stateless detectors. Never share one state between streams.
struct DetectorState {
    std::vector<double> memory;

    friend bool operator==(const DetectorState&, const DetectorState&) = default;
};

/// Per-window seizure detector. Implementations are immutable and may be
/// shared across threads; all mutation goes through DetectorState.
class Detector {
public:
    virtual ~Detector() = default;

    virtual std::string_view kind() const = 0;
    virtual DetectorState initial_state() const { return {}; }

    /// Ictal probability in [0, 1] for one window; may advance `state`.
    /// Throws IncompatibleFeature when the tensor does not fit the model.
    virtual double score(const FeatureTensor& features, DetectorState& state) const = 0;
};

struct Detection {
    double score = 0.0;
    DetectorState state;
};

/// Pure form of Detector::score: returns the score and the advanced state.
Detection detect_window(const Detector& detector, const DetectorState& state, const FeatureTensor& features);

/// Fresh state for a new recording.
DetectorState reset_state(const Detector& detector);

/// Scores a sequence of windows in order, starting from a reset state.
std::vector<double> score_sequence(const Detector& detector, std::span<const FeatureTensor> windows);

double logistic(double x);

/// Exponential smoothing over an inner detector's scores:
/// s_k = alpha * raw_k + (1 - alpha) * s_{k-1}. The state holds s_{k-1}.
class SmoothingDetector final : public Detector {
public:
    SmoothingDetector(std::shared_ptr<const Detector> inner, double alpha);

    std::string_view kind() const override { return "smoothed"; }
    DetectorState initial_state() const override;
    double score(const FeatureTensor& features, DetectorState& state) const override;

    const Detector& inner() const noexcept { return *inner_; }
    double alpha() const noexcept { return alpha_; }

private:
    std::shared_ptr<const Detector> inner_;
    double alpha_;
};

} // namespace rtsd
