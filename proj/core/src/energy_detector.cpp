#include "rtsd/detectors/energy_detector.hpp"

#include "rtsd/error.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace rtsd {
namespace {

double percentile(std::vector<double> values, double q) {
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

} // namespace

double mean_band_energy(const FeatureTensor& features, std::size_t band) {
    require(features.id() == ExtractorId::Bands, ErrorCode::IncompatibleFeature,
            "energy detector needs bands features, got " + std::string(to_string(features.id())));
    const auto& s = features.shape();
    require(band < s.d1, ErrorCode::IncompatibleFeature,
            "band index " + std::to_string(band) + " out of range for " + to_string(s));
    double acc = 0.0;
    for (std::size_t c = 0; c < s.d0; ++c) {
        for (std::size_t t = 0; t < s.d2; ++t) acc += features.at(c, band, t);
    }
    return acc / static_cast<double>(s.d0 * s.d2);
}

EnergyModel calibrate_energy(std::span<const FeatureTensor> background, std::size_t band_index) {
    require(!background.empty(), ErrorCode::DegenerateDataset, "no background windows to calibrate on");
    std::vector<double> energy;
    energy.reserve(background.size());
    for (const auto& f : background) energy.push_back(mean_band_energy(f, band_index));
    const double p50 = percentile(energy, 0.5);
    const double p90 = percentile(energy, 0.9);
    EnergyModel model;
    model.band_index = band_index;
    model.midpoint = p50;
    model.scale = std::max(p90 - p50, 1e-12 * std::max(1.0, std::abs(p50))) / std::log(9.0);
    return model;
}

double energy_score(const FeatureTensor& features, const EnergyModel& model) {
    return logistic((mean_band_energy(features, model.band_index) - model.midpoint) / model.scale);
}

EnergyDetector::EnergyDetector(EnergyModel model) : model_(model) {
    require(model.scale > 0.0 && std::isfinite(model.scale) && std::isfinite(model.midpoint),
            ErrorCode::InvalidArgument, "energy calibration must have a finite positive scale");
}

double EnergyDetector::score(const FeatureTensor& features, DetectorState&) const {
    return energy_score(features, model_);
}

} // namespace rtsd
