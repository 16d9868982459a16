#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "icfr/core.hpp"
#include "icfr/icfr.hpp"

namespace icfr {

struct MatchResult {
    DisparityMap disparity;  // full resolution, original (unpadded) size
    DisparityMap finest;     // finest configured scale, padded size
    IcfrTrace trace;
    double pyramid_ms = 0.0;
    double icfr_ms = 0.0;
    double refine_ms = 0.0;
    double total_ms = 0.0;
};

/// Pyramid construction, coarse-to-fine estimation and refinement for one stereo pair.
MatchResult match_pair(const PlanarImage& left, const PlanarImage& right, const IcfrConfig& cfg,
                       const IcfrOptions& options = {});

struct Resolution {
    std::string label;
    int width = 0;
    int height = 0;
};

/// "KITTI" (1242x375), "HD" (1280x720), "4K" (3840x2160) or "WxH".
Resolution parse_resolution(const std::string& s);

struct BenchRow {
    Resolution resolution;
    bool fit = true;
    int repetitions = 0;
    double mean_ms = 0.0;
    double stddev_ms = 0.0;
    std::size_t peak_cells = 0;               // sum of per-scale cost-volume cells for one estimation pass
    std::vector<int> scale_dens;
    std::vector<double> scale_head_mean_ms;   // per scale, same order as scale_dens
    long peak_rss_kb = 0;                     // best effort, 0 when unavailable
};

struct BenchOptions {
    int repetitions = 100;
    int warmup = 1;
    std::uint64_t seed = 7;
    float scene_disparity = 20.0f;
};

/// Times match_pair on seeded synthetic pairs at each resolution. Warm-up runs are excluded.
/// A resolution that runs out of memory yields a row with fit == false.
std::vector<BenchRow> run_bench(const std::vector<Resolution>& resolutions, const IcfrConfig& cfg,
                                const BenchOptions& options);

/// Header plus one line per row.
std::string bench_csv(const std::vector<BenchRow>& rows);

long peak_rss_kb();

}  // namespace icfr
