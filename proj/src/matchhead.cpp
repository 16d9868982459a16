#include "icfr/matchhead.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "icfr/parallel.hpp"
#include "icfr/pyramid.hpp"

namespace icfr {

namespace {

constexpr int kNccRadius = 2;

void check_pair(const PlanarImage& f_left, const PlanarImage& f_right) {
    if (!f_left.same_size(f_right) || f_left.channels() != f_right.channels())
        throw ShapeError("left and right features differ in shape");
}

void census_row(const PlanarImage& l, const PlanarImage& r, int y, int d_cv, std::span<float> out) {
    const int w = l.width();
    const int channels = l.channels() - 1;
    std::fill(out.begin(), out.end(), 0.0f);
    for (int c = 1; c <= channels; ++c) {
        auto lrow = l.row(c, y);
        auto rrow = r.row(c, y);
        for (int x = 0; x < w; ++x) {
            float* cell = out.data() + static_cast<std::size_t>(x) * d_cv;
            for (int k = 0; k < d_cv; ++k) {
                const int sx = std::clamp(x - candidate_of_index(k, d_cv), 0, w - 1);
                cell[k] += std::abs(lrow[x] - rrow[sx]);
            }
        }
    }
    const float inv = 1.0f / static_cast<float>(channels);
    for (float& v : out) v = std::min(v * inv, 1.0f);
}

void sad_row(const PlanarImage& l, const PlanarImage& r, int y, int d_cv, std::span<float> out) {
    const int w = l.width();
    auto lrow = l.row(0, y);
    auto rrow = r.row(0, y);
    for (int x = 0; x < w; ++x)
        for (int k = 0; k < d_cv; ++k) {
            const int sx = std::clamp(x - candidate_of_index(k, d_cv), 0, w - 1);
            out[static_cast<std::size_t>(x) * d_cv + k] = std::min(std::abs(lrow[x] - rrow[sx]), 1.0f);
        }
}

void ncc_row(const PlanarImage& l, const PlanarImage& r, int y, int d_cv, std::span<float> out) {
    const int w = l.width();
    const int h = l.height();
    constexpr int n = (2 * kNccRadius + 1) * (2 * kNccRadius + 1);
    float lp[n];
    float rp[n];
    for (int x = 0; x < w; ++x) {
        int i = 0;
        double lmean = 0.0;
        for (int dy = -kNccRadius; dy <= kNccRadius; ++dy)
            for (int dx = -kNccRadius; dx <= kNccRadius; ++dx, ++i) {
                lp[i] = l.at(0, std::clamp(y + dy, 0, h - 1), std::clamp(x + dx, 0, w - 1));
                lmean += lp[i];
            }
        lmean /= n;
        double lvar = 0.0;
        for (float v : lp) lvar += (v - lmean) * (v - lmean);

        for (int k = 0; k < d_cv; ++k) {
            const int xr = x - candidate_of_index(k, d_cv);
            i = 0;
            double rmean = 0.0;
            for (int dy = -kNccRadius; dy <= kNccRadius; ++dy)
                for (int dx = -kNccRadius; dx <= kNccRadius; ++dx, ++i) {
                    rp[i] = r.at(0, std::clamp(y + dy, 0, h - 1), std::clamp(xr + dx, 0, w - 1));
                    rmean += rp[i];
                }
            rmean /= n;
            double rvar = 0.0;
            double cov = 0.0;
            for (int j = 0; j < n; ++j) {
                rvar += (rp[j] - rmean) * (rp[j] - rmean);
                cov += (lp[j] - lmean) * (rp[j] - rmean);
            }
            constexpr double eps = 1e-12;
            double ncc;
            if (lvar < eps && rvar < eps) ncc = std::abs(lmean - rmean) < 1e-6 ? 1.0 : 0.0;
            else if (lvar < eps || rvar < eps) ncc = 0.0;
            else ncc = std::clamp(cov / std::sqrt(lvar * rvar), -1.0, 1.0);
            out[static_cast<std::size_t>(x) * d_cv + k] = static_cast<float>((1.0 - ncc) * 0.5);
        }
    }
}

SymmetricCostVolume box_aggregate(const SymmetricCostVolume& cv, int radius, int iterations) {
    const int w = cv.width();
    const int h = cv.height();
    const int d = cv.d_cv();
    SymmetricCostVolume cur = cv;
    SymmetricCostVolume tmp(w, h, d, cv.scale_den());
    const float inv = 1.0f / static_cast<float>(2 * radius + 1);
    for (int it = 0; it < iterations; ++it) {
        parallel_for(0, h, [&](int y) {
            for (int x = 0; x < w; ++x) {
                auto dst = tmp.costs(y, x);
                std::fill(dst.begin(), dst.end(), 0.0f);
                for (int o = -radius; o <= radius; ++o) {
                    auto src = cur.costs(y, std::clamp(x + o, 0, w - 1));
                    for (int k = 0; k < d; ++k) dst[k] += src[k];
                }
                for (float& v : dst) v *= inv;
            }
        });
        parallel_for(0, h, [&](int y) {
            for (int x = 0; x < w; ++x) {
                auto dst = cur.costs(y, x);
                std::fill(dst.begin(), dst.end(), 0.0f);
                for (int o = -radius; o <= radius; ++o) {
                    auto src = tmp.costs(std::clamp(y + o, 0, h - 1), x);
                    for (int k = 0; k < d; ++k) dst[k] += src[k];
                }
                for (float& v : dst) v *= inv;
            }
        });
    }
    return cur;
}

// One SGM path along a pixel sequence; adds the path costs into acc.
// The recursion subtracts the previous minimum so values stay bounded.
void sgm_scan(const SymmetricCostVolume& cv, std::vector<double>& acc, int y0, int x0, int dy, int dx, int steps,
              float p1, float p2, std::vector<float>& prev, std::vector<float>& cur) {
    const int d = cv.d_cv();
    const int w = cv.width();
    int y = y0;
    int x = x0;
    for (int s = 0; s < steps; ++s, y += dy, x += dx) {
        auto c = cv.costs(y, x);
        if (s == 0) {
            std::copy(c.begin(), c.end(), cur.begin());
        } else {
            const float m = *std::min_element(prev.begin(), prev.end());
            for (int k = 0; k < d; ++k) {
                float best = std::min(prev[k], m + p2);
                if (k > 0) best = std::min(best, prev[k - 1] + p1);
                if (k + 1 < d) best = std::min(best, prev[k + 1] + p1);
                cur[k] = c[k] + (best - m);
            }
        }
        double* a = acc.data() + (static_cast<std::size_t>(y) * w + x) * d;
        for (int k = 0; k < d; ++k) a[k] += cur[k];
        std::swap(prev, cur);
    }
}

SymmetricCostVolume sgm_aggregate(const SymmetricCostVolume& cv, float p1, float p2) {
    const int w = cv.width();
    const int h = cv.height();
    const int d = cv.d_cv();
    std::vector<double> acc(cv.cell_count(), 0.0);

    struct Path {
        int dy, dx;
    };
    constexpr Path paths[] = {{0, 1}, {0, -1}, {1, 0}, {-1, 0}};
    for (const Path& p : paths) {
        const bool horizontal = p.dy == 0;
        const int lines = horizontal ? h : w;
        parallel_for(0, lines, [&](int line) {
            std::vector<float> prev(d), cur(d);
            if (horizontal) sgm_scan(cv, acc, line, p.dx > 0 ? 0 : w - 1, 0, p.dx, w, p1, p2, prev, cur);
            else sgm_scan(cv, acc, p.dy > 0 ? 0 : h - 1, line, p.dy, 0, h, p1, p2, prev, cur);
        });
    }

    SymmetricCostVolume out(w, h, d, cv.scale_den());
    constexpr double inv_paths = 1.0 / std::size(paths);
    auto& dst = out.raw();
    for (std::size_t i = 0; i < acc.size(); ++i) dst[i] = static_cast<float>(acc[i] * inv_paths);
    return out;
}

}  // namespace

SymmetricCostVolume build_cost_volume(const PlanarImage& f_left, const PlanarImage& f_right, int d_cv,
                                      HeadKind head, int scale_den) {
    check_pair(f_left, f_right);
    if (head == HeadKind::Census && f_left.channels() != 1 + kCensusBits)
        throw ShapeError("census head expects luminance plus 24 census channels");
    SymmetricCostVolume cv(f_left.width(), f_left.height(), d_cv, scale_den);
    const std::size_t row_cells = static_cast<std::size_t>(f_left.width()) * d_cv;
    parallel_for(0, f_left.height(), [&](int y) {
        std::span<float> out(cv.raw().data() + y * row_cells, row_cells);
        switch (head) {
            case HeadKind::Census: census_row(f_left, f_right, y, d_cv, out); break;
            case HeadKind::Sad: sad_row(f_left, f_right, y, d_cv, out); break;
            case HeadKind::Ncc: ncc_row(f_left, f_right, y, d_cv, out); break;
        }
    });
    return cv;
}

SymmetricCostVolume aggregate(const SymmetricCostVolume& cv, const PlanarImage& guide,
                              const AggregatorParams& params) {
    if (guide.width() != cv.width() || guide.height() != cv.height())
        throw ShapeError("aggregation guide does not match the cost volume");
    switch (params.kind) {
        case AggregatorKind::None: return cv;
        case AggregatorKind::Box: return box_aggregate(cv, params.box_radius, params.filter_iterations);
        case AggregatorKind::Sgm: return sgm_aggregate(cv, params.sgm_p1, params.sgm_p2);
    }
    return cv;
}

double regress_costs(std::span<const float> costs, int d_cv) {
    const float m = *std::min_element(costs.begin(), costs.end());
    double num = 0.0;
    double den = 0.0;
    for (int k = 0; k < d_cv; ++k) {
        const double p = std::exp(-(static_cast<double>(costs[k]) - m));
        num += p * candidate_of_index(k, d_cv);
        den += p;
    }
    return num / den;
}

DisparityMap regress_disparity(const SymmetricCostVolume& cv) {
    DisparityMap out(cv.width(), cv.height(), cv.scale_den());
    parallel_for(0, cv.height(), [&](int y) {
        for (int x = 0; x < cv.width(); ++x)
            out.value(y, x) = static_cast<float>(regress_costs(cv.costs(y, x), cv.d_cv()));
    });
    return out;
}

DisparityMap predict(const PlanarImage& f_left, const PlanarImage& f_right, int d_cv, HeadKind head,
                     const AggregatorParams& params, int scale_den) {
    const auto cv = build_cost_volume(f_left, f_right, d_cv, head, scale_den);
    if (params.kind == AggregatorKind::None) return regress_disparity(cv);
    PlanarImage guide(f_left.width(), f_left.height(), 1,
                      std::vector<float>(f_left.plane(0).begin(), f_left.plane(0).end()));
    return regress_disparity(aggregate(cv, guide, params));
}

}  // namespace icfr
