#pragma once

#include "rtsd/detectors/energy_detector.hpp"
#include "rtsd/detectors/linear_detector.hpp"

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <variant>

namespace rtsd {

using DetectorModel = std::variant<LinearModel, EnergyModel>;

// Model file: text metadata lines
//   RTSD-MODEL / version 1 / kind linear|energy / extractor <name> / ...
//   payload f64le
// followed by raw little-endian doubles. Linear payload: weights, mean,
// stddev (dims each), then bias. Energy payload: midpoint, scale.
void write_model(std::ostream& out, const DetectorModel& model);
DetectorModel read_model(std::istream& in);
void save_model(const DetectorModel& model, const std::filesystem::path& path);
DetectorModel load_model(const std::filesystem::path& path);

/// Extractor the model consumes.
ExtractorId model_extractor(const DetectorModel& model);

std::shared_ptr<const Detector> make_detector(const DetectorModel& model);

} // namespace rtsd
