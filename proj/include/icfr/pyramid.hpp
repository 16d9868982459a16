#pragma once

#include <vector>

#include "icfr/core.hpp"

namespace icfr {

struct PaddedImage {
    PlanarImage image;
    int original_width = 0;
    int original_height = 0;
};

/// Pads right and bottom edges up to the next multiple with mirror reflection (edge sample not repeated).
PaddedImage pad_to_multiple(const PlanarImage& img, int multiple);

/// Top-left crop back to width x height.
PlanarImage crop(const PlanarImage& img, int width, int height);
DisparityMap crop(const DisparityMap& d, int width, int height);

/// Mean over factor x factor blocks. Dimensions must be divisible by factor.
PlanarImage downsample_block(const PlanarImage& img, int factor);
PlanarImage downsample_by_two(const PlanarImage& img);

/// Luminance of a 1- or 3-channel image (ITU-R BT.601 weights).
PlanarImage luminance(const PlanarImage& img);

inline constexpr int kCensusRadius = 2;
inline constexpr int kCensusBits = (2 * kCensusRadius + 1) * (2 * kCensusRadius + 1) - 1;

// Channel 0 is always luminance. Census adds 24 bit-planes, one per 5x5 neighbour in
// row-major order with the centre skipped; a bit is 1 iff the neighbour is strictly brighter.
// Out-of-image neighbours are clamped to the edge.
PlanarImage extract_features(const PlanarImage& img, HeadKind kind);

struct PyramidLevel {
    int scale_den = 1;
    PlanarImage features;
};

struct FeaturePyramid {
    std::vector<PyramidLevel> levels;  // coarse to fine
    HeadKind kind = HeadKind::Census;
    int padded_width = 0;
    int padded_height = 0;
    int original_width = 0;
    int original_height = 0;

    const PyramidLevel& level_for(int scale_den) const;
};

/// Expects a validated config. Pads to the coarsest denominator, then block-averages
/// full -> finest denominator and by each successive ratio towards the coarsest.
FeaturePyramid build_pyramid(const PlanarImage& img, const IcfrConfig& cfg);

}  // namespace icfr
