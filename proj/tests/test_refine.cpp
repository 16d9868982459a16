#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "icfr/icfr.hpp"
#include "icfr/pipeline.hpp"
#include "icfr/pyramid.hpp"
#include "icfr/refine.hpp"
#include "icfr/synth.hpp"

using namespace icfr;

TEST_CASE("photometric_error") {
    SUBCASE("true disparity on a noise-free pair") {
        SceneParams p;
        p.kind = SceneKind::TwoPlane;
        p.width = 240;
        p.height = 120;
        p.far = 10.0f;
        p.near = 30.0f;
        const auto s = make_scene(p);
        const auto err = photometric_error(s.left, s.right, s.gt);
        double sum = 0.0;
        int n = 0;
        for (int y = 0; y < p.height; ++y)
            for (int x = 0; x < p.width; ++x)
                if (s.gt.is_valid(y, x)) {
                    sum += err.at(0, y, x);
                    ++n;
                }
        CHECK(sum / n < 1e-3);
    }
    SUBCASE("identical images, zero disparity") {
        const auto img = testutil::random_image(20, 10, 1);
        const auto e = photometric_error(img, img, DisparityMap(20, 10, 1));
        for (float v : e.data()) CHECK(v == 0.0f);
    }
    SUBCASE("unit-offset ramp pair") {
        const auto l = testutil::ramp_image(20, 4);
        auto r = l;
        for (float& v : r.data()) v += 1.0f;
        const auto e = photometric_error(l, r, DisparityMap(20, 4, 1));
        for (float v : e.data()) CHECK(v == 1.0f);
    }
}

TEST_CASE("lr_consistency_mask") {
    SUBCASE("perfect agreement") {
        const DisparityMap d(30, 4, 1, 3.0f);
        const auto m = lr_consistency_mask(d, d, 1.0f);
        for (int y = 0; y < 4; ++y)
            for (int x = 3; x < 30; ++x) CHECK(m[y * 30 + x] == 1);
    }
    SUBCASE("uniform disagreement") {
        const DisparityMap l(30, 4, 1, 3.0f);
        const DisparityMap r(30, 4, 1, 8.0f);
        for (auto v : lr_consistency_mask(l, r, 1.0f)) CHECK(v == 0);
    }
    SUBCASE("half-occluded step edge: band width equals the disparity jump") {
        const int w = 100, far = 10, near = 25;
        DisparityMap l(w, 1, 1), r(w, 1, 1);
        for (int x = 0; x < w; ++x) l.value(0, x) = x < 50 ? far : near;
        // The near surface covers right-view columns [50 - near, 100 - near) and beyond.
        for (int x = 0; x < w; ++x) r.value(0, x) = x >= 50 - near ? near : far;
        const auto m = lr_consistency_mask(l, r, 1.0f);
        int invalid = 0;
        for (int x = far; x < w; ++x) {
            invalid += m[x] == 0;
            if (m[x] == 0) {
                CHECK(x >= 50 - (near - far));
                CHECK(x < 50);
            }
        }
        CHECK(invalid == near - far);
    }
}

TEST_CASE("fill_background takes the farther neighbour") {
    DisparityMap d(7, 1, 1);
    d.values() = {9, 9, 0, 0, 4, 0, 0};
    const std::vector<std::uint8_t> valid{1, 1, 0, 0, 1, 0, 0};
    const auto f = fill_background(d, valid);
    CHECK(f.values() == std::vector<float>{9, 9, 4, 4, 4, 4, 4});
}

TEST_CASE("guided_filter") {
    const auto guide = testutil::random_image(40, 30, 4);
    const PlanarImage err(40, 30, 1, 0.0f);
    const auto flat = guided_filter(DisparityMap(40, 30, 1, 7.5f), guide, err, RefineParams{});
    for (float v : flat.values()) CHECK(v == doctest::Approx(7.5f));

    DisparityMap noisy(40, 30, 1);
    std::mt19937 rng(1);
    for (float& v : noisy.values()) v = static_cast<float>(rng() % 100) / 7.0f;
    const auto out = guided_filter(noisy, guide, err, RefineParams{});
    const auto [lo, hi] = std::minmax_element(noisy.values().begin(), noisy.values().end());
    for (float v : out.values()) {
        CHECK(v >= *lo);
        CHECK(v <= *hi);
    }
}

TEST_CASE("refine_full without refinement is upsample and crop") {
    IcfrConfig cfg;
    cfg.refinement = RefinementKind::None;
    DisparityMap d(32, 16, 3);
    std::mt19937 rng(2);
    for (float& v : d.values()) v = static_cast<float>(rng() % 50) / 5.0f;
    const PlanarImage img(96, 48, 1);
    const auto out = refine_full(d, img, img, cfg, 90, 45);
    CHECK(out.width() == 90);
    CHECK(out.height() == 45);
    CHECK(out.values() == crop(upsample_disparity(d, 1), 90, 45).values());
    const auto exact = refine_full(d, img, img, cfg, 96, 48);
    CHECK(exact.values() == upsample_disparity(d, 1).values());
}

TEST_CASE("refine_full with refinement: range and size") {
    const IcfrConfig cfg;
    const auto l = testutil::random_image(150, 70, 8);
    const auto r = testutil::random_image(150, 70, 9);
    const auto pl = pad_to_multiple(l, 24);
    const auto pr = pad_to_multiple(r, 24);
    const auto est = run_icfr(build_pyramid(l, cfg), build_pyramid(r, cfg), cfg);
    const auto out = refine_full(est.disparity, pl.image, pr.image, cfg, 150, 70);
    CHECK(out.width() == 150);
    CHECK(out.height() == 70);
    const auto full = upsample_disparity(est.disparity, 1);
    const auto [lo, hi] = std::minmax_element(full.values().begin(), full.values().end());
    for (float v : out.values()) {
        CHECK(v >= *lo);
        CHECK(v <= *hi);
    }
}

// The per-scale regression bias survives refinement as a ~0.5 px offset at d = 20.
TEST_CASE("refined constant-disparity pair" * doctest::may_fail()) {
    SceneParams p;
    p.width = 1248;
    p.height = 384;
    p.far = 20.0f;
    const auto s = make_scene(p);
    const auto r = match_pair(s.left, s.right, IcfrConfig{});
    int good = 0, n = 0;
    for (int y = 0; y < p.height; ++y)
        for (int x = 0; x < p.width; ++x)
            if (s.gt.is_valid(y, x)) {
                good += std::abs(r.disparity.value(y, x) - 20.0f) <= 0.3f;
                ++n;
            }
    MESSAGE("fraction within 0.3 px: " << static_cast<double>(good) / n);
    CHECK(static_cast<double>(good) / n >= 0.99);
}

namespace {

// Median over rows of |x50 - edge|, where x50 is the first column past the 50 % level.
double edge_offset(const DisparityMap& d, int edge, float lo, float hi, int y0, int y1) {
    const float mid = 0.5f * (lo + hi);
    std::vector<double> offs;
    for (int y = y0; y < y1; ++y) {
        int x = edge - 60;
        while (x < edge + 60 && d.value(y, x) < mid) ++x;
        offs.push_back(std::abs(x - edge));
    }
    std::nth_element(offs.begin(), offs.begin() + offs.size() / 2, offs.end());
    return offs[offs.size() / 2];
}

}  // namespace

// SGM smoothing spreads foreground disparity into the half-occluded band; one filter pass only
// pulls the crossing part of the way back.
TEST_CASE("refined two-plane edge position" * doctest::may_fail()) {
    SceneParams p;
    p.kind = SceneKind::TwoPlane;
    p.width = 1248;
    p.height = 384;
    p.far = 10.0f;
    p.near = 40.0f;
    const auto s = make_scene(p);
    const auto r = match_pair(s.left, s.right, IcfrConfig{});
    const auto before = crop(upsample_disparity(r.finest, 1), p.width, p.height);
    const int edge = p.width / 3;
    const double off_before = edge_offset(before, edge, p.far, p.near, p.height / 4 + 20, 3 * p.height / 4 - 20);
    const double off_after = edge_offset(r.disparity, edge, p.far, p.near, p.height / 4 + 20, 3 * p.height / 4 - 20);
    MESSAGE("edge offset before " << off_before << " px, after " << off_after << " px");
    CHECK(off_after < off_before);
    CHECK(off_after <= 2.0);
}
