#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "icfr/core.hpp"
#include "icfr/pyramid.hpp"

namespace icfr {

struct ScaleRecord {
    int scale_den = 1;
    DisparityMap disparity;  // after accumulation
    DisparityMap residual;   // head output at this scale
    double head_ms = 0.0;    // prediction head only
    double total_ms = 0.0;   // upsample + warp + head + accumulate
    std::size_t cells = 0;   // cost-volume cells evaluated by the head
};

struct IcfrTrace {
    std::vector<ScaleRecord> scales;  // coarse to fine
    double d_max = 0.0;

    std::size_t total_cells() const;
};

struct IcfrResult {
    DisparityMap disparity;  // at the finest configured scale
    IcfrTrace trace;
};

struct IcfrOptions {
    // When set, the coarsest scale starts from this constant disparity (in coarsest-scale pixels)
    // and predicts a residual on warped features, like every finer scale.
    std::optional<float> coarse_init;
};

/// Bilinear upsampling (align-corners false) by from/to ratio; values are multiplied by that ratio
/// and validity is sampled nearest-neighbour.
DisparityMap upsample_disparity(const DisparityMap& d, int to_den);

/// out(x, y) = f_right(x - d(x, y), y), linear along the row, clamped to the edge columns.
PlanarImage warp_features(const PlanarImage& f_right, const DisparityMap& d);

IcfrResult run_icfr(const FeaturePyramid& left, const FeaturePyramid& right, const IcfrConfig& cfg,
                    const IcfrOptions& options = {});

struct ReachabilityReport {
    bool ok = true;
    double budget = 0.0;
    double requested = 0.0;
    double shortfall = 0.0;
    int suggested_d_cv = 0;  // smallest even d_cv meeting the request; equals cfg.d_cv when ok
    double suggested_budget = 0.0;
};

ReachabilityReport reachability_check(const IcfrConfig& cfg, double requested_d_max);

}  // namespace icfr
