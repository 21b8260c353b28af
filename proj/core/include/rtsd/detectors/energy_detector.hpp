#pragma once

#include "rtsd/detectors/detector.hpp"

#include <cstddef>
#include <span>

namespace rtsd {

/// Logistic score over the mean energy of one frequency band.
struct EnergyModel {
    std::size_t band_index = 0;
    double midpoint = 0.0;
    double scale = 1.0;

    friend bool operator==(const EnergyModel&, const EnergyModel&) = default;
};

/// Mean of band `band` over all channels and frames of a bands tensor.
double mean_band_energy(const FeatureTensor& features, std::size_t band);

/// Fits the midpoint to the median background energy and the scale so the
/// 90th percentile maps to a score of 0.9.
EnergyModel calibrate_energy(std::span<const FeatureTensor> background, std::size_t band_index);

/// logistic((energy - midpoint) / scale); monotone in band energy.
double energy_score(const FeatureTensor& features, const EnergyModel& model);

class EnergyDetector final : public Detector {
public:
    explicit EnergyDetector(EnergyModel model);

    std::string_view kind() const override { return "energy"; }
    double score(const FeatureTensor& features, DetectorState& state) const override;
    const EnergyModel& model() const noexcept { return model_; }

private:
    EnergyModel model_;
};

} // namespace rtsd
