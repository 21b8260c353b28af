#include "rtsd/metrics/curves.hpp"

#include "rtsd/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>

namespace rtsd {
namespace {

void put_threshold(char* buf, std::size_t n, double t) {
    if (std::isinf(t)) {
        std::snprintf(buf, n, "inf");
    } else {
        std::snprintf(buf, n, "%.9g", t);
    }
}

} // namespace

CurveMetrics curve_metrics(std::span<const int> window_labels, std::span<const double> window_scores) {
    require(window_labels.size() == window_scores.size(), ErrorCode::InvalidArgument,
            "window labels and scores differ in length");
    CurveMetrics out;
    for (std::size_t i = 0; i < window_labels.size(); ++i) {
        require(std::isfinite(window_scores[i]), ErrorCode::InvalidArgument, "scores must be finite");
        (window_labels[i] != 0 ? out.n_pos : out.n_neg) += 1;
    }
    require(out.n_pos > 0 && out.n_neg > 0, ErrorCode::DegenerateDataset,
            "curve metrics need both classes (positives " + std::to_string(out.n_pos) + ", negatives " +
                std::to_string(out.n_neg) + ")");

    std::vector<std::size_t> order(window_scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return window_scores[a] > window_scores[b]; });

    const double pos = static_cast<double>(out.n_pos);
    const double neg = static_cast<double>(out.n_neg);
    out.points.push_back({std::numeric_limits<double>::infinity(), 0, 0, 0.0, 0.0, 1.0});
    std::size_t tp = 0;
    std::size_t fp = 0;
    for (std::size_t i = 0; i < order.size();) {
        const double t = window_scores[order[i]];
        while (i < order.size() && window_scores[order[i]] == t) {
            (window_labels[order[i]] != 0 ? tp : fp) += 1;
            ++i;
        }
        CurvePoint p;
        p.threshold = t;
        p.tp = tp;
        p.fp = fp;
        p.tpr = static_cast<double>(tp) / pos;
        p.fpr = static_cast<double>(fp) / neg;
        p.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
        out.points.push_back(p);
    }

    for (std::size_t i = 1; i < out.points.size(); ++i) {
        const auto& a = out.points[i - 1];
        const auto& b = out.points[i];
        out.auroc += (b.fpr - a.fpr) * (a.tpr + b.tpr) * 0.5;
        out.auprc += (b.tpr - a.tpr) * b.precision;
    }
    return out;
}

OperatingPoints operating_points(const CurveMetrics& curve) {
    require(curve.points.size() >= 2, ErrorCode::DegenerateDataset, "curve has no finite thresholds");
    OperatingPoints op;
    // Youden's J scaled by n_pos * n_neg, so ties compare exactly.
    std::uint64_t best = 0;
    bool have = false;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const auto& p = curve.points[i];
        const std::uint64_t j = static_cast<std::uint64_t>(p.tp) * curve.n_neg +
                                static_cast<std::uint64_t>(curve.n_neg - p.fp) * curve.n_pos;
        if (!have || j >= best) {  // thresholds descend, so >= keeps the lowest on ties
            have = true;
            best = j;
            op.youden_threshold = p.threshold;
        }
        if (20 * (curve.n_neg - p.fp) >= 19 * curve.n_neg) op.tnr95_threshold = p.threshold;
    }
    return op;
}

void write_roc_csv(std::ostream& out, const CurveMetrics& curve) {
    out << "threshold,fpr,tpr\n";
    char t[32];
    char line[96];
    for (const auto& p : curve.points) {
        put_threshold(t, sizeof t, p.threshold);
        std::snprintf(line, sizeof line, "%s,%.9f,%.9f\n", t, p.fpr, p.tpr);
        out << line;
    }
}

void write_pr_csv(std::ostream& out, const CurveMetrics& curve) {
    out << "threshold,recall,precision\n";
    char t[32];
    char line[96];
    for (const auto& p : curve.points) {
        put_threshold(t, sizeof t, p.threshold);
        std::snprintf(line, sizeof line, "%s,%.9f,%.9f\n", t, p.tpr, p.precision);
        out << line;
    }
}

} // namespace rtsd
