#include <doctest.h>

#include <set>

#include "icfr/synth.hpp"

using namespace icfr;

TEST_CASE("scenes are reproducible") {
    SceneParams p;
    const auto a = make_scene(p);
    const auto b = make_scene(p);
    CHECK(a.left.data() == b.left.data());
    CHECK(a.right.data() == b.right.data());
    CHECK(a.gt.values() == b.gt.values());
    p.seed = 8;
    CHECK(make_scene(p).left.data() != a.left.data());
}

TEST_CASE("constant scene: out-of-view band only") {
    SceneParams p;
    p.width = 200;
    p.height = 20;
    p.far = 20.0f;
    const auto s = make_scene(p);
    for (int y = 0; y < p.height; ++y)
        for (int x = 0; x < p.width; ++x) {
            CHECK(s.gt.value(y, x) == 20.0f);
            CHECK(s.gt.is_valid(y, x) == (x >= 20));
        }
}

TEST_CASE("two-plane gt has exactly two values") {
    SceneParams p;
    p.kind = SceneKind::TwoPlane;
    p.width = 300;
    p.height = 120;
    p.far = 10.0f;
    p.near = 40.0f;
    const auto s = make_scene(p);
    const std::set<float> values(s.gt.values().begin(), s.gt.values().end());
    CHECK(values == std::set<float>{10.0f, 40.0f});
}

TEST_CASE("step occlusion band equals the disparity jump") {
    SceneParams p;
    p.kind = SceneKind::StepOcclusion;
    p.width = 200;
    p.height = 8;
    p.far = 10.0f;
    p.near = 25.0f;
    const auto s = make_scene(p);
    for (int y = 0; y < p.height; ++y) {
        int band = 0;
        for (int x = static_cast<int>(p.far); x < p.width; ++x)
            if (!s.gt.is_valid(y, x)) {
                CHECK(x >= 100 - 15);
                CHECK(x < 100);
                ++band;
            }
        CHECK(band == 15);
    }
}

TEST_CASE("scene parameter checks") {
    SceneParams p;
    p.width = 30;
    p.far = 30.0f;
    CHECK_THROWS_AS(make_scene(p), std::invalid_argument);
    p.far = -1.0f;
    CHECK_THROWS_AS(make_scene(p), std::invalid_argument);
    CHECK(parse_scene_kind(to_string(SceneKind::Ramp)) == SceneKind::Ramp);
}

TEST_CASE("texture covers [0, 1]") {
    const auto t = random_dot_texture(64, 64, 1);
    const auto [lo, hi] = std::minmax_element(t.data().begin(), t.data().end());
    CHECK(*lo == 0.0f);
    CHECK(*hi == 1.0f);
}
