#include "icfr/icfr.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "icfr/matchhead.hpp"
#include "icfr/parallel.hpp"

namespace icfr {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

std::size_t IcfrTrace::total_cells() const {
    std::size_t n = 0;
    for (const auto& s : scales) n += s.cells;
    return n;
}

DisparityMap upsample_disparity(const DisparityMap& d, int to_den) {
    if (to_den < 1 || d.scale_den() % to_den != 0)
        throw std::invalid_argument("upsampling ratio " + std::to_string(d.scale_den()) + "/" +
                                    std::to_string(to_den) + " is not an integer");
    const int r = d.scale_den() / to_den;
    if (r == 1) return d;
    const int w = d.width();
    const int h = d.height();
    DisparityMap out(w * r, h * r, to_den);
    const float scale = static_cast<float>(r);
    const float inv_r = 1.0f / scale;

    auto source = [&](int i, int n, int& i0, int& i1, float& t) {
        const float s = std::clamp((static_cast<float>(i) + 0.5f) * inv_r - 0.5f, 0.0f, static_cast<float>(n - 1));
        i0 = static_cast<int>(std::floor(s));
        i1 = std::min(i0 + 1, n - 1);
        t = s - static_cast<float>(i0);
    };

    parallel_for(0, h * r, [&](int y) {
        int y0, y1;
        float ty;
        source(y, h, y0, y1, ty);
        for (int x = 0; x < w * r; ++x) {
            int x0, x1;
            float tx;
            source(x, w, x0, x1, tx);
            const float top = d.value(y0, x0) + tx * (d.value(y0, x1) - d.value(y0, x0));
            const float bottom = d.value(y1, x0) + tx * (d.value(y1, x1) - d.value(y1, x0));
            out.value(y, x) = (top + ty * (bottom - top)) * scale;
            out.set_valid(y, x, d.is_valid(y / r, x / r));
        }
    });
    return out;
}

PlanarImage warp_features(const PlanarImage& f_right, const DisparityMap& d) {
    if (f_right.width() != d.width() || f_right.height() != d.height())
        throw ShapeError("warp: features and disparity differ in size");
    const int w = f_right.width();
    PlanarImage out(w, f_right.height(), f_right.channels());
    parallel_for(0, f_right.height(), [&](int y) {
        for (int x = 0; x < w; ++x) {
            const float s = std::clamp(static_cast<float>(x) - d.value(y, x), 0.0f, static_cast<float>(w - 1));
            const int x0 = static_cast<int>(std::floor(s));
            const int x1 = std::min(x0 + 1, w - 1);
            const float t = s - static_cast<float>(x0);
            for (int c = 0; c < f_right.channels(); ++c) {
                const float a = f_right.at(c, y, x0);
                out.at(c, y, x) = a + t * (f_right.at(c, y, x1) - a);
            }
        }
    });
    return out;
}

IcfrResult run_icfr(const FeaturePyramid& left, const FeaturePyramid& right, const IcfrConfig& cfg,
                    const IcfrOptions& options) {
    const auto validated = validate_config(cfg);
    if (left.levels.size() != cfg.scale_dens.size() || right.levels.size() != cfg.scale_dens.size())
        throw ShapeError("pyramids do not match the configured scale set");

    IcfrResult result;
    result.trace.d_max = validated.d_max;
    DisparityMap disp;
    for (std::size_t i = 0; i < cfg.scale_dens.size(); ++i) {
        const int den = cfg.scale_dens[i];
        const auto& fl = left.level_for(den).features;
        const auto& fr = right.level_for(den).features;
        if (!fl.same_size(fr)) throw ShapeError("left and right pyramid levels differ in size");

        const auto t0 = Clock::now();
        ScaleRecord rec;
        rec.scale_den = den;
        rec.cells = static_cast<std::size_t>(fl.width()) * fl.height() * cfg.d_cv;

        const bool coarse = i == 0;
        if (coarse && !options.coarse_init) {
            const auto th = Clock::now();
            disp = predict(fl, fr, cfg.d_cv, cfg.head, cfg.aggregator, den);
            rec.head_ms = ms_since(th);
            rec.residual = disp;
        } else {
            disp = coarse ? DisparityMap(fl.width(), fl.height(), den, *options.coarse_init)
                          : upsample_disparity(disp, den);
            const PlanarImage warped = warp_features(fr, disp);
            const auto th = Clock::now();
            rec.residual = predict(fl, warped, cfg.d_cv, cfg.head, cfg.aggregator, den);
            rec.head_ms = ms_since(th);
            auto& v = disp.values();
            const auto& r = rec.residual.values();
            for (std::size_t k = 0; k < v.size(); ++k) v[k] += r[k];
        }
        rec.disparity = disp;
        rec.total_ms = ms_since(t0);
        result.trace.scales.push_back(std::move(rec));
    }
    result.disparity = std::move(disp);
    return result;
}

ReachabilityReport reachability_check(const IcfrConfig& cfg, double requested_d_max) {
    ReachabilityReport rep;
    rep.requested = requested_d_max;
    rep.budget = d_max_budget(cfg.d_cv, cfg.scale_dens);
    rep.ok = rep.budget >= requested_d_max;
    rep.shortfall = rep.ok ? 0.0 : requested_d_max - rep.budget;

    // budget(d_cv) = (d_cv / 2) * sum(dens), so the smallest half-count is ceil(request / sum).
    const double per_half = d_max_budget(2, cfg.scale_dens);
    const int half = std::max(1, static_cast<int>(std::ceil(requested_d_max / per_half)));
    rep.suggested_d_cv = rep.ok ? cfg.d_cv : 2 * half;
    rep.suggested_budget = d_max_budget(rep.suggested_d_cv, cfg.scale_dens);
    return rep;
}

}  // namespace icfr
