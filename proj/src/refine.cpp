#include "icfr/refine.hpp"

#include <algorithm>
#include <cmath>

#include "icfr/icfr.hpp"
#include "icfr/parallel.hpp"
#include "icfr/pyramid.hpp"

namespace icfr {

PlanarImage flip_horizontal(const PlanarImage& img) {
    PlanarImage out(img.width(), img.height(), img.channels());
    for (int c = 0; c < img.channels(); ++c)
        for (int y = 0; y < img.height(); ++y) {
            auto src = img.row(c, y);
            std::reverse_copy(src.begin(), src.end(), out.row(c, y).begin());
        }
    return out;
}

DisparityMap flip_horizontal(const DisparityMap& d) {
    DisparityMap out(d.width(), d.height(), d.scale_den());
    const int w = d.width();
    for (int y = 0; y < d.height(); ++y)
        for (int x = 0; x < w; ++x) {
            out.value(y, x) = d.value(y, w - 1 - x);
            out.set_valid(y, x, d.is_valid(y, w - 1 - x));
        }
    return out;
}

PlanarImage photometric_error(const PlanarImage& left, const PlanarImage& right, const DisparityMap& d_full) {
    if (!left.same_size(right) || left.width() != d_full.width() || left.height() != d_full.height())
        throw ShapeError("photometric_error: inputs differ in size");
    const PlanarImage l = luminance(left);
    const PlanarImage warped = warp_features(luminance(right), d_full);
    PlanarImage out(l.width(), l.height(), 1);
    auto a = l.plane(0);
    auto b = warped.plane(0);
    auto dst = out.plane(0);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = std::abs(a[i] - b[i]);
    return out;
}

std::vector<std::uint8_t> lr_consistency_mask(const DisparityMap& d_left, const DisparityMap& d_right, float tol) {
    if (!d_left.same_size(d_right)) throw ShapeError("lr_consistency_mask: maps differ in size");
    const int w = d_left.width();
    std::vector<std::uint8_t> mask(d_left.size(), 0);
    for (int y = 0; y < d_left.height(); ++y)
        for (int x = 0; x < w; ++x) {
            if (!d_left.is_valid(y, x)) continue;
            const float dl = d_left.value(y, x);
            const long xr = std::lround(static_cast<double>(x) - dl);
            if (xr < 0 || xr >= w) continue;
            const int xi = static_cast<int>(xr);
            if (!d_right.is_valid(y, xi)) continue;
            if (std::abs(dl - d_right.value(y, xi)) <= tol) mask[static_cast<std::size_t>(y) * w + x] = 1;
        }
    return mask;
}

DisparityMap fill_background(const DisparityMap& d, const std::vector<std::uint8_t>& valid) {
    DisparityMap out = d;
    const int w = d.width();
    std::vector<float> left_val(w), right_val(w);
    std::vector<std::uint8_t> has_left(w), has_right(w);
    for (int y = 0; y < d.height(); ++y) {
        const std::uint8_t* v = valid.data() + static_cast<std::size_t>(y) * w;
        bool seen = false;
        float last = 0.0f;
        for (int x = 0; x < w; ++x) {
            if (v[x]) {
                seen = true;
                last = d.value(y, x);
            }
            has_left[x] = seen;
            left_val[x] = last;
        }
        seen = false;
        for (int x = w - 1; x >= 0; --x) {
            if (v[x]) {
                seen = true;
                last = d.value(y, x);
            }
            has_right[x] = seen;
            right_val[x] = last;
        }
        for (int x = 0; x < w; ++x) {
            if (v[x]) continue;
            if (has_left[x] && has_right[x]) out.value(y, x) = std::min(left_val[x], right_val[x]);
            else if (has_left[x]) out.value(y, x) = left_val[x];
            else if (has_right[x]) out.value(y, x) = right_val[x];
        }
    }
    return out;
}

DisparityMap guided_filter(const DisparityMap& d, const PlanarImage& guide_lum, const PlanarImage& photo_err,
                           const RefineParams& params) {
    const int w = d.width();
    const int h = d.height();
    if (guide_lum.width() != w || guide_lum.height() != h || photo_err.width() != w || photo_err.height() != h)
        throw ShapeError("guided_filter: guide and disparity differ in size");

    const int radius = static_cast<int>(std::ceil(2.0f * params.spatial_sigma));
    std::vector<float> spatial(2 * radius + 1);
    for (int o = -radius; o <= radius; ++o)
        spatial[o + radius] = std::exp(-0.5f * static_cast<float>(o * o) / (params.spatial_sigma * params.spatial_sigma));
    const float range_k = -0.5f / (params.range_sigma * params.range_sigma);

    std::vector<float> photo(photo_err.plane_size());
    {
        auto e = photo_err.plane(0);
        for (std::size_t i = 0; i < photo.size(); ++i) photo[i] = 1.0f / (1.0f + e[i] / params.photometric_scale);
    }
    auto g = guide_lum.plane(0);
    auto at = [w](int y, int x) { return static_cast<std::size_t>(y) * w + x; };

    std::vector<float> tmp(d.size());
    parallel_for(0, h, [&](int y) {
        for (int x = 0; x < w; ++x) {
            const float gc = g[at(y, x)];
            double num = 0.0, den = 0.0;
            for (int o = std::max(-radius, -x); o <= std::min(radius, w - 1 - x); ++o) {
                const std::size_t q = at(y, x + o);
                const float diff = g[q] - gc;
                const double wt = spatial[o + radius] * std::exp(range_k * diff * diff) * photo[q];
                num += wt * d.values()[q];
                den += wt;
            }
            tmp[at(y, x)] = den > 0.0 ? static_cast<float>(num / den) : d.values()[at(y, x)];
        }
    });

    DisparityMap out = d;
    parallel_for(0, h, [&](int y) {
        for (int x = 0; x < w; ++x) {
            const float gc = g[at(y, x)];
            double num = 0.0, den = 0.0;
            for (int o = std::max(-radius, -y); o <= std::min(radius, h - 1 - y); ++o) {
                const std::size_t q = at(y + o, x);
                const float diff = g[q] - gc;
                const double wt = spatial[o + radius] * std::exp(range_k * diff * diff) * photo[q];
                num += wt * tmp[q];
                den += wt;
            }
            out.value(y, x) = den > 0.0 ? static_cast<float>(num / den) : tmp[at(y, x)];
        }
    });
    // Convex weights can still round a hair outside the input range.
    const auto [lo, hi] = std::minmax_element(d.values().begin(), d.values().end());
    for (float& v : out.values()) v = std::clamp(v, *lo, *hi);
    return out;
}

DisparityMap right_view_disparity(const PlanarImage& left, const PlanarImage& right, const IcfrConfig& cfg) {
    const PlanarImage mirrored_left = flip_horizontal(right);
    const PlanarImage mirrored_right = flip_horizontal(left);
    const auto pl = build_pyramid(mirrored_left, cfg);
    const auto pr = build_pyramid(mirrored_right, cfg);
    return flip_horizontal(run_icfr(pl, pr, cfg).disparity);
}

DisparityMap refine_full(const DisparityMap& d_finest, const PlanarImage& left, const PlanarImage& right,
                         const IcfrConfig& cfg, int original_width, int original_height,
                         const DisparityMap* d_right_finest) {
    DisparityMap full = upsample_disparity(d_finest, 1);
    if (full.width() != left.width() || full.height() != left.height() || !left.same_size(right))
        throw ShapeError("refine_full: disparity does not upsample to the image size");
    if (cfg.refinement == RefinementKind::None) return crop(full, original_width, original_height);

    DisparityMap right_finest = d_right_finest ? *d_right_finest : right_view_disparity(left, right, cfg);
    const DisparityMap right_full = upsample_disparity(right_finest, 1);

    const auto mask = lr_consistency_mask(full, right_full, cfg.refine.lr_tolerance);
    const DisparityMap filled = fill_background(full, mask);
    const PlanarImage err = photometric_error(left, right, filled);
    DisparityMap refined = guided_filter(filled, luminance(left), err, cfg.refine);
    return crop(refined, original_width, original_height);
}

}  // namespace icfr
