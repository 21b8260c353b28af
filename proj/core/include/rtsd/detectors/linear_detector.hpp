#pragma once

#include "rtsd/detectors/detector.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace rtsd {

/// Logistic regression over the flattened feature tensor. Features are
/// standardised with frozen training statistics and divided by sqrt(dims)
/// so a typical sample has unit norm.
struct LinearModel {
    ExtractorId extractor = ExtractorId::Raw;
    Shape3 shape;
    std::vector<double> weights;
    std::vector<double> mean;
    std::vector<double> stddev;
    double bias = 0.0;

    std::size_t dims() const noexcept { return shape.size(); }
    /// Throws InvalidArgument on inconsistent sizes or non-positive stddev.
    void validate() const;
    /// Throws IncompatibleFeature unless `features` matches extractor and shape.
    void check_compatible(const FeatureTensor& features) const;

    friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

/// All-zero weights with identity normalisation; scores 0.5 everywhere.
LinearModel zero_model(ExtractorId extractor, Shape3 shape);

double linear_score(const LinearModel& model, const FeatureTensor& features);

struct TrainConfig {
    double learning_rate = 0.5;
    std::size_t epochs = 30;
    std::size_t batch_size = 64;
    double l2 = 1e-4;
    std::uint64_t seed = 0;

    void validate() const;
};

struct TrainResult {
    LinearModel model;
    std::vector<double> epoch_loss;  // regularised mean log-loss after each epoch
};

/// Mini-batch gradient descent on the L2-regularised log-loss. Deterministic
/// for a fixed seed. Throws DegenerateDataset when only one class is present.
TrainResult train_linear(std::span<const FeatureTensor> features, std::span<const int> labels, const TrainConfig& cfg);

class LinearDetector final : public Detector {
public:
    explicit LinearDetector(LinearModel model);

    std::string_view kind() const override { return "linear"; }
    double score(const FeatureTensor& features, DetectorState& state) const override;
    const LinearModel& model() const noexcept { return model_; }

private:
    LinearModel model_;
};

} // namespace rtsd
