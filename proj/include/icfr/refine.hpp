#pragma once

#include <cstdint>
#include <vector>

#include "icfr/core.hpp"

namespace icfr {

/// |lum(left) - lum(right warped by d_full)| per pixel.
PlanarImage photometric_error(const PlanarImage& left, const PlanarImage& right, const DisparityMap& d_full);

/// Pixel x is consistent iff |d_left(x) - d_right(round(x - d_left(x)))| <= tol.
/// d_right holds the right view's (positive) disparities; a right pixel x' matches left x' + d_right(x').
std::vector<std::uint8_t> lr_consistency_mask(const DisparityMap& d_left, const DisparityMap& d_right, float tol);

/// Replaces each invalid pixel by the smaller of its nearest valid row neighbours (left and right).
/// Rows without any valid pixel are left unchanged.
DisparityMap fill_background(const DisparityMap& d, const std::vector<std::uint8_t>& valid);

/// Separable joint bilateral pass guided by luminance; neighbour weights are scaled by
/// 1 / (1 + err / photometric_scale).
DisparityMap guided_filter(const DisparityMap& d, const PlanarImage& guide_lum, const PlanarImage& photo_err,
                           const RefineParams& params);

/// Right-view disparity at the finest scale, computed by running the pipeline on the mirrored, swapped pair.
DisparityMap right_view_disparity(const PlanarImage& left, const PlanarImage& right, const IcfrConfig& cfg);

/// Brings the finest-scale disparity to full (padded) resolution, removes inconsistent pixels,
/// fills them from the background, filters, and crops to the original size.
/// left/right are the padded full-resolution inputs. When d_right_finest is null and refinement
/// is enabled it is computed with right_view_disparity.
DisparityMap refine_full(const DisparityMap& d_finest, const PlanarImage& left, const PlanarImage& right,
                         const IcfrConfig& cfg, int original_width, int original_height,
                         const DisparityMap* d_right_finest = nullptr);

PlanarImage flip_horizontal(const PlanarImage& img);
DisparityMap flip_horizontal(const DisparityMap& d);

}  // namespace icfr
