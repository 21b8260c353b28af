#include "rtsd/detectors/linear_detector.hpp"

#include "rtsd/error.hpp"
#include "rtsd/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rtsd {
namespace {

double log_loss(double z, int y) {
    // log(1 + exp(-z)) for y = 1, log(1 + exp(z)) for y = 0, overflow-safe
    const double m = y == 1 ? -z : z;
    return m > 0.0 ? m + std::log1p(std::exp(-m)) : std::log1p(std::exp(m));
}

} // namespace

void LinearModel::validate() const {
    const std::size_t d = dims();
    require(d > 0, ErrorCode::InvalidArgument, "linear model has no dimensions");
    require(weights.size() == d && mean.size() == d && stddev.size() == d, ErrorCode::InvalidArgument,
            "linear model vectors do not match its shape " + to_string(shape));
    for (std::size_t i = 0; i < d; ++i) {
        require(stddev[i] > 0.0 && std::isfinite(stddev[i]), ErrorCode::InvalidArgument,
                "linear model stddev must be positive");
        require(std::isfinite(weights[i]) && std::isfinite(mean[i]), ErrorCode::InvalidArgument,
                "linear model holds non-finite parameters");
    }
    require(std::isfinite(bias), ErrorCode::InvalidArgument, "linear model bias is not finite");
}

void LinearModel::check_compatible(const FeatureTensor& features) const {
    if (features.id() != extractor || features.shape() != shape) {
        fail(ErrorCode::IncompatibleFeature, "model expects " + std::string(to_string(extractor)) + " " +
                                                 to_string(shape) + ", got " + std::string(to_string(features.id())) +
                                                 " " + to_string(features.shape()));
    }
}

LinearModel zero_model(ExtractorId extractor, Shape3 shape) {
    LinearModel m;
    m.extractor = extractor;
    m.shape = shape;
    m.weights.assign(shape.size(), 0.0);
    m.mean.assign(shape.size(), 0.0);
    m.stddev.assign(shape.size(), 1.0);
    return m;
}

double linear_score(const LinearModel& model, const FeatureTensor& features) {
    model.check_compatible(features);
    const auto x = features.data();
    const double norm = 1.0 / std::sqrt(static_cast<double>(model.dims()));
    double z = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        z += model.weights[i] * ((static_cast<double>(x[i]) - model.mean[i]) / model.stddev[i]);
    }
    return logistic(z * norm + model.bias);
}

void TrainConfig::validate() const {
    require(learning_rate > 0.0, ErrorCode::InvalidArgument, "learning rate must be positive");
    require(epochs >= 1, ErrorCode::InvalidArgument, "need at least one epoch");
    require(batch_size >= 1, ErrorCode::InvalidArgument, "batch size must be positive");
    require(l2 >= 0.0, ErrorCode::InvalidArgument, "L2 penalty must be non-negative");
}

TrainResult train_linear(std::span<const FeatureTensor> features, std::span<const int> labels, const TrainConfig& cfg) {
    cfg.validate();
    require(features.size() == labels.size(), ErrorCode::InvalidArgument, "features and labels differ in length");
    require(!features.empty(), ErrorCode::DegenerateDataset, "empty training set");
    const std::size_t n_pos = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
    require(n_pos > 0 && n_pos < labels.size(), ErrorCode::DegenerateDataset, "training set holds a single class");

    const ExtractorId id = features.front().id();
    const Shape3 shape = features.front().shape();
    const std::size_t n = features.size();
    const std::size_t d = shape.size();
    for (std::size_t i = 0; i < n; ++i) {
        require(labels[i] == 0 || labels[i] == 1, ErrorCode::InvalidArgument, "labels must be 0 or 1");
        if (features[i].id() != id || features[i].shape() != shape) {
            fail(ErrorCode::IncompatibleFeature, "training tensors differ in extractor or shape");
        }
    }

    TrainResult result;
    LinearModel& model = result.model;
    model = zero_model(id, shape);

    for (const auto& f : features) {
        const auto x = f.data();
        for (std::size_t j = 0; j < d; ++j) model.mean[j] += x[j];
    }
    for (auto& m : model.mean) m /= static_cast<double>(n);
    std::vector<double> var(d, 0.0);
    for (const auto& f : features) {
        const auto x = f.data();
        for (std::size_t j = 0; j < d; ++j) {
            const double diff = x[j] - model.mean[j];
            var[j] += diff * diff;
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        const double s = std::sqrt(var[j] / static_cast<double>(n));
        model.stddev[j] = s > 1e-12 ? s : 1.0;
    }

    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    std::vector<float> z(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = features[i].data();
        for (std::size_t j = 0; j < d; ++j) {
            z[i * d + j] = static_cast<float>((x[j] - model.mean[j]) / model.stddev[j] * norm);
        }
    }

    auto margin = [&](std::size_t i) {
        const float* row = z.data() + i * d;
        double acc = model.bias;
        for (std::size_t j = 0; j < d; ++j) acc += model.weights[j] * row[j];
        return acc;
    };
    auto objective = [&] {
        double loss = 0.0;
        for (std::size_t i = 0; i < n; ++i) loss += log_loss(margin(i), labels[i]);
        double reg = 0.0;
        for (double w : model.weights) reg += w * w;
        return loss / static_cast<double>(n) + 0.5 * cfg.l2 * reg;
    };

    Rng rng(cfg.seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> grad(d);
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(std::span<std::size_t>(order));
        for (std::size_t begin = 0; begin < n; begin += cfg.batch_size) {
            const std::size_t end = std::min(n, begin + cfg.batch_size);
            const double inv = 1.0 / static_cast<double>(end - begin);
            std::fill(grad.begin(), grad.end(), 0.0);
            double grad_bias = 0.0;
            for (std::size_t b = begin; b < end; ++b) {
                const std::size_t i = order[b];
                const double err = logistic(margin(i)) - labels[i];
                const float* row = z.data() + i * d;
                for (std::size_t j = 0; j < d; ++j) grad[j] += err * row[j];
                grad_bias += err;
            }
            for (std::size_t j = 0; j < d; ++j) {
                model.weights[j] -= cfg.learning_rate * (grad[j] * inv + cfg.l2 * model.weights[j]);
            }
            model.bias -= cfg.learning_rate * grad_bias * inv;
        }
        result.epoch_loss.push_back(objective());
    }

    model.validate();
    return result;
}

LinearDetector::LinearDetector(LinearModel model) : model_(std::move(model)) {
    model_.validate();
}

double LinearDetector::score(const FeatureTensor& features, DetectorState&) const {
    return linear_score(model_, features);
}

} // namespace rtsd
