#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>

#include "icfr/core.hpp"

namespace icfr {

class EmptyEvaluationError : public std::runtime_error {
public:
    EmptyEvaluationError() : std::runtime_error("ground truth has no valid pixels") {}
};

enum class SmoothL1Variant {
    Literal,    // x * 0.5 below 1
    Quadratic,  // 0.5 * x^2 below 1
};

/// x - 0.5 for x >= 1. Throws std::invalid_argument for negative x.
double smooth_l1(double x, SmoothL1Variant variant = SmoothL1Variant::Literal);

struct EvalReport {
    double epe = 0.0;
    double er1 = 0.0;  // |error| > 1 px
    double er3 = 0.0;  // |error| > 3 px
    double d1 = 0.0;   // |error| > 3 px and > 5 % of ground truth
    std::size_t n_valid = 0;
    std::size_t n_total = 0;
    double smooth_l1 = 0.0;
    std::optional<double> weighted_loss;
};

/// Metrics over pixels where gt is valid. Throws EmptyEvaluationError when there are none.
EvalReport evaluate(const DisparityMap& pred, const DisparityMap& gt,
                    SmoothL1Variant variant = SmoothL1Variant::Literal);

/// sum_i weights[i] * losses[i].
double weighted_loss(std::span<const double> losses, std::span<const double> weights);

/// Mean smooth-L1 of each prediction against gt (ground truth is downsampled to each prediction's
/// scale), combined with weighted_loss.
double multi_prediction_loss(std::span<const DisparityMap> predictions, const DisparityMap& gt,
                             std::span<const double> weights, SmoothL1Variant variant = SmoothL1Variant::Literal);

/// Nearest-valid downsampling of full-resolution ground truth by an integer factor;
/// values are divided by the factor.
DisparityMap downsample_ground_truth(const DisparityMap& gt, int factor);

}  // namespace icfr
