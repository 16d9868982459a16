#include "icfr/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace icfr {

namespace {

// Uniform [0, 1) from the raw 64-bit stream; independent of the standard library's distributions.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

float disparity_at(const SceneParams& p, int x, int y) {
    switch (p.kind) {
        case SceneKind::Constant: return p.far;
        case SceneKind::TwoPlane: {
            const bool fg = x >= p.width / 3 && x < 2 * p.width / 3 && y >= p.height / 4 && y < 3 * p.height / 4;
            return fg ? p.near : p.far;
        }
        case SceneKind::Ramp:
            return p.width > 1 ? p.far + (p.near - p.far) * static_cast<float>(x) / static_cast<float>(p.width - 1)
                               : p.far;
        case SceneKind::StepOcclusion: return x < p.width / 2 ? p.far : p.near;
    }
    return p.far;
}

bool on_near_layer(const SceneParams& p, float d) {
    return (p.kind == SceneKind::TwoPlane || p.kind == SceneKind::StepOcclusion) && d == p.near && p.near > p.far;
}

}  // namespace

SceneKind parse_scene_kind(const std::string& s) {
    if (s == "constant") return SceneKind::Constant;
    if (s == "two-plane") return SceneKind::TwoPlane;
    if (s == "ramp") return SceneKind::Ramp;
    if (s == "step-occlusion") return SceneKind::StepOcclusion;
    throw std::invalid_argument("unknown scene kind: " + s);
}

std::string to_string(SceneKind kind) {
    switch (kind) {
        case SceneKind::Constant: return "constant";
        case SceneKind::TwoPlane: return "two-plane";
        case SceneKind::Ramp: return "ramp";
        case SceneKind::StepOcclusion: return "step-occlusion";
    }
    return "?";
}

PlanarImage random_dot_texture(int width, int height, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> acc(static_cast<std::size_t>(width) * height, 0.0);
    for (int cell = 1; cell <= 64; cell *= 2) {
        const int gw = width / cell + 2;
        const int gh = height / cell + 2;
        std::vector<double> grid(static_cast<std::size_t>(gw) * gh);
        for (double& g : grid) g = unit(rng);
        for (int y = 0; y < height; ++y) {
            const double fy = static_cast<double>(y) / cell;
            const int y0 = static_cast<int>(fy);
            const double ty = fy - y0;
            for (int x = 0; x < width; ++x) {
                const double fx = static_cast<double>(x) / cell;
                const int x0 = static_cast<int>(fx);
                const double tx = fx - x0;
                auto g = [&](int gy, int gx) { return grid[static_cast<std::size_t>(gy) * gw + gx]; };
                const double top = g(y0, x0) + tx * (g(y0, x0 + 1) - g(y0, x0));
                const double bot = g(y0 + 1, x0) + tx * (g(y0 + 1, x0 + 1) - g(y0 + 1, x0));
                acc[static_cast<std::size_t>(y) * width + x] += top + ty * (bot - top);
            }
        }
    }
    const auto [lo, hi] = std::minmax_element(acc.begin(), acc.end());
    const double span = std::max(*hi - *lo, 1e-12);
    std::vector<float> data(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) data[i] = static_cast<float>((acc[i] - *lo) / span);
    return PlanarImage(width, height, 1, std::move(data));
}

StereoScene make_scene(const SceneParams& p) {
    if (p.width < 2 || p.height < 1) throw std::invalid_argument("scene too small");
    const float dmax = std::max({std::abs(p.far), std::abs(p.near)});
    if (dmax >= static_cast<float>(p.width)) throw std::invalid_argument("disparity exceeds image width");
    if (p.far < 0.0f || p.near < 0.0f) throw std::invalid_argument("scene disparities must be non-negative");

    const int w = p.width;
    const int h = p.height;
    const PlanarImage base = random_dot_texture(w, h, p.seed);
    const PlanarImage fill = random_dot_texture(w, h, p.seed ^ 0x9e3779b97f4a7c15ULL);

    StereoScene s{PlanarImage(w, h, 1), PlanarImage(w, h, 1), DisparityMap(w, h, 1, 0.0f, false)};
    const float scale = 1.0f - p.layer_contrast;
    std::vector<float> disp(w), zbuf(w);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            disp[x] = disparity_at(p, x, y);
            const float tex = base.at(0, y, x) * scale;
            s.left.at(0, y, x) = on_near_layer(p, disp[x]) ? tex + p.layer_contrast : tex;
        }
        auto lrow = s.left.row(0, y);
        auto rrow = s.right.row(0, y);
        std::fill(zbuf.begin(), zbuf.end(), -std::numeric_limits<float>::infinity());

        auto splat = [&](int xr, float depth, float value) {
            if (xr < 0 || xr >= w || depth <= zbuf[xr]) return;
            zbuf[xr] = depth;
            rrow[xr] = value;
        };
        for (int x = 0; x < w; ++x) {
            const double r = x - static_cast<double>(disp[x]);
            const double rr = std::round(r);
            if (std::abs(r - rr) < 1e-6) splat(static_cast<int>(rr), disp[x], lrow[x]);
            // Interior of a continuous surface segment between x and x + 1.
            if (x + 1 < w && std::abs(disp[x + 1] - disp[x]) < 0.5f) {
                const double r1 = x + 1 - static_cast<double>(disp[x + 1]);
                if (r1 <= r) continue;
                for (int xr = static_cast<int>(std::floor(r)) + 1; xr < r1; ++xr) {
                    if (std::abs(xr - r) < 1e-6 || std::abs(xr - r1) < 1e-6) continue;
                    const double t = (xr - r) / (r1 - r);
                    splat(xr, static_cast<float>(disp[x] + t * (disp[x + 1] - disp[x])),
                          static_cast<float>(lrow[x] + t * (lrow[x + 1] - lrow[x])));
                }
            }
        }
        for (int x = 0; x < w; ++x)
            if (zbuf[x] == -std::numeric_limits<float>::infinity()) rrow[x] = fill.at(0, y, x) * scale;

        for (int x = 0; x < w; ++x) {
            const double r = x - static_cast<double>(disp[x]);
            const long xr = std::lround(r);
            s.gt.value(y, x) = disp[x];
            const bool visible = xr >= 0 && xr < w && zbuf[xr] <= disp[x] + 0.5f;
            s.gt.set_valid(y, x, visible);
        }
    }
    return s;
}

}  // namespace icfr
