#include "icfr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace icfr {

double smooth_l1(double x, SmoothL1Variant variant) {
    if (!(x >= 0.0)) throw std::invalid_argument("smooth_l1 expects a non-negative argument");
    if (x >= 1.0) return x - 0.5;
    return variant == SmoothL1Variant::Literal ? x * 0.5 : 0.5 * x * x;
}

EvalReport evaluate(const DisparityMap& pred, const DisparityMap& gt, SmoothL1Variant variant) {
    if (!pred.same_size(gt)) throw ShapeError("prediction and ground truth differ in size");
    EvalReport rep;
    rep.n_total = gt.size();
    double abs_sum = 0.0, sl1_sum = 0.0;
    std::size_t n1 = 0, n3 = 0, nd1 = 0;
    const auto& p = pred.values();
    const auto& g = gt.values();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!gt.valid()[i]) continue;
        const double err = std::abs(static_cast<double>(p[i]) - static_cast<double>(g[i]));
        ++rep.n_valid;
        abs_sum += err;
        sl1_sum += smooth_l1(err, variant);
        if (err > 1.0) ++n1;
        if (err > 3.0) {
            ++n3;
            if (err > 0.05 * std::abs(static_cast<double>(g[i]))) ++nd1;
        }
    }
    if (rep.n_valid == 0) throw EmptyEvaluationError();
    const double n = static_cast<double>(rep.n_valid);
    rep.epe = abs_sum / n;
    rep.smooth_l1 = sl1_sum / n;
    rep.er1 = static_cast<double>(n1) / n;
    rep.er3 = static_cast<double>(n3) / n;
    rep.d1 = static_cast<double>(nd1) / n;
    return rep;
}

double weighted_loss(std::span<const double> losses, std::span<const double> weights) {
    if (losses.size() != weights.size()) throw std::invalid_argument("losses and weights differ in length");
    double total = 0.0;
    for (std::size_t i = 0; i < losses.size(); ++i) {
        if (weights[i] < 0.0) throw std::invalid_argument("loss weights must be non-negative");
        total += weights[i] * losses[i];
    }
    return total;
}

DisparityMap downsample_ground_truth(const DisparityMap& gt, int factor) {
    if (factor < 1) throw std::invalid_argument("factor must be positive");
    if (factor == 1) return gt;
    const int ow = gt.width() / factor;
    const int oh = gt.height() / factor;
    DisparityMap out(ow, oh, gt.scale_den() * factor, 0.0f, false);
    const int c = factor / 2;
    for (int y = 0; y < oh; ++y)
        for (int x = 0; x < ow; ++x) {
            // Nearest valid sample to the block centre, scanning outward in Chebyshev rings.
            bool found = false;
            for (int ring = 0; ring < factor && !found; ++ring)
                for (int dy = -ring; dy <= ring && !found; ++dy)
                    for (int dx = -ring; dx <= ring && !found; ++dx) {
                        if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
                        const int sy = y * factor + c + dy;
                        const int sx = x * factor + c + dx;
                        if (sy < y * factor || sy >= (y + 1) * factor || sx < x * factor || sx >= (x + 1) * factor)
                            continue;
                        if (!gt.is_valid(sy, sx)) continue;
                        out.value(y, x) = gt.value(sy, sx) / static_cast<float>(factor);
                        out.set_valid(y, x, true);
                        found = true;
                    }
        }
    return out;
}

double multi_prediction_loss(std::span<const DisparityMap> predictions, const DisparityMap& gt,
                             std::span<const double> weights, SmoothL1Variant variant) {
    std::vector<double> losses;
    losses.reserve(predictions.size());
    for (const auto& pred : predictions) {
        if (pred.scale_den() % gt.scale_den() != 0) throw ShapeError("prediction scale incompatible with ground truth");
        const DisparityMap g = downsample_ground_truth(gt, pred.scale_den() / gt.scale_den());
        losses.push_back(evaluate(pred, g, variant).smooth_l1);
    }
    return weighted_loss(losses, weights);
}

}  // namespace icfr
