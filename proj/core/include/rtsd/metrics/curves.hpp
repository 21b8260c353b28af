#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace rtsd {

/// Decision rule score >= threshold. The first point is the +inf sentinel
/// (nothing predicted positive).
struct CurvePoint {
    double threshold = 0.0;
    std::size_t tp = 0;
    std::size_t fp = 0;
    double tpr = 0.0;
    double fpr = 0.0;
    double precision = 1.0;  // 1 at the sentinel

    double tnr() const noexcept { return 1.0 - fpr; }
};

struct CurveMetrics {
    std::vector<CurvePoint> points;  // thresholds descending
    std::size_t n_pos = 0;
    std::size_t n_neg = 0;
    double auroc = 0.0;
    double auprc = 0.0;
};

/// Throws DegenerateDataset unless both classes are present.
CurveMetrics curve_metrics(std::span<const int> window_labels, std::span<const double> window_scores);

struct OperatingPoints {
    double youden_threshold = 0.0;
    /// Absent when no threshold reaches TNR 0.95.
    std::optional<double> tnr95_threshold;
};

/// Lowest threshold maximising TPR + TNR, and lowest threshold with
/// TNR >= 0.95. Only finite thresholds qualify.
OperatingPoints operating_points(const CurveMetrics& curve);

void write_roc_csv(std::ostream& out, const CurveMetrics& curve);
void write_pr_csv(std::ostream& out, const CurveMetrics& curve);

} // namespace rtsd
