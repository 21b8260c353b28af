#include "rtsd/detectors/detector.hpp"

#include "rtsd/error.hpp"

#include <cmath>

namespace rtsd {

double logistic(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

Detection detect_window(const Detector& detector, const DetectorState& state, const FeatureTensor& features) {
    Detection out{0.0, state};
    out.score = detector.score(features, out.state);
    return out;
}

DetectorState reset_state(const Detector& detector) {
    return detector.initial_state();
}

std::vector<double> score_sequence(const Detector& detector, std::span<const FeatureTensor> windows) {
    DetectorState state = reset_state(detector);
    std::vector<double> scores;
    scores.reserve(windows.size());
    for (const auto& w : windows) {
        scores.push_back(detector.score(w, state));
    }
    return scores;
}

SmoothingDetector::SmoothingDetector(std::shared_ptr<const Detector> inner, double alpha)
    : inner_(std::move(inner)), alpha_(alpha) {
    require(inner_ != nullptr, ErrorCode::InvalidArgument, "smoothing needs an inner detector");
    require(alpha > 0.0 && alpha <= 1.0, ErrorCode::InvalidArgument, "smoothing factor must be in (0, 1]");
}

DetectorState SmoothingDetector::initial_state() const {
    // [has_previous, previous_score, inner state...]
    DetectorState state{{0.0, 0.0}};
    const auto inner = inner_->initial_state();
    state.memory.insert(state.memory.end(), inner.memory.begin(), inner.memory.end());
    return state;
}

double SmoothingDetector::score(const FeatureTensor& features, DetectorState& state) const {
    require(state.memory.size() >= 2, ErrorCode::InvalidArgument, "smoothing state is not initialised");
    DetectorState inner_state{{state.memory.begin() + 2, state.memory.end()}};
    const double raw = inner_->score(features, inner_state);
    const double smoothed = state.memory[0] == 0.0 ? raw : alpha_ * raw + (1.0 - alpha_) * state.memory[1];
    state.memory.resize(2);
    state.memory[0] = 1.0;
    state.memory[1] = smoothed;
    state.memory.insert(state.memory.end(), inner_state.memory.begin(), inner_state.memory.end());
    return smoothed;
}

} // namespace rtsd
