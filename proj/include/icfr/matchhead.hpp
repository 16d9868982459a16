#pragma once

#include <span>

#include "icfr/core.hpp"

namespace icfr {

/// Costs in [0, 1] of matching left pixel x against right pixel x - d for every stored candidate d.
/// census: mean absolute difference of the bit-planes (normalized Hamming distance for binary input).
/// sad: absolute luminance difference.
/// ncc: (1 - ncc) / 2 over a 5x5 window.
/// Right-view samples outside the row are clamped to the edge column.
SymmetricCostVolume build_cost_volume(const PlanarImage& f_left, const PlanarImage& f_right, int d_cv,
                                      HeadKind head, int scale_den = 1);

/// Spatial cost aggregation; the candidate layout is preserved.
SymmetricCostVolume aggregate(const SymmetricCostVolume& cv, const PlanarImage& guide,
                              const AggregatorParams& params);

/// Soft-argmax of one pixel's candidate costs: sum_k cand(k) * softmax(-cost)_k.
double regress_costs(std::span<const float> costs, int d_cv);

/// Soft-argmax over every pixel of the volume. All output pixels are valid.
DisparityMap regress_disparity(const SymmetricCostVolume& cv);

/// Cost volume, aggregation and regression at one scale.
DisparityMap predict(const PlanarImage& f_left, const PlanarImage& f_right, int d_cv, HeadKind head,
                     const AggregatorParams& params, int scale_den = 1);

}  // namespace icfr
