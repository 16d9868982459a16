#include <doctest.h>

#include <limits>
#include <string>
#include <vector>

#include "icfr/core.hpp"

using namespace icfr;

TEST_CASE("d_max_budget matches the published D_cv / D_max pairs") {
    const std::vector<int> five{48, 24, 12, 6, 3};
    const std::vector<int> four{24, 12, 6, 3};
    CHECK(d_max_budget(4, five) == 186.0);
    CHECK(d_max_budget(8, four) == 180.0);
    CHECK(d_max_budget(2, std::vector<int>{1}) == 1.0);
}

TEST_CASE("d_max_budget is linear in d_cv and additive in scales") {
    const std::vector<std::vector<int>> sets{{1}, {3}, {6, 3}, {24, 12, 6, 3}, {48, 24, 12, 6, 3}, {64, 32, 16}};
    for (const auto& s : sets) {
        const double unit = d_max_budget(2, s);
        for (int k = 1; k <= 32; ++k) CHECK(d_max_budget(2 * k, s) == k * unit);
        for (int d_cv = 2; d_cv <= 16; d_cv += 2) {
            auto grown = s;
            grown.insert(grown.begin(), s.front() * 2);
            CHECK(d_max_budget(d_cv, grown) == d_max_budget(d_cv, s) + (d_cv / 2) * s.front() * 2);
        }
    }
}

TEST_CASE("d_max_budget rejects bad d_cv") {
    const std::vector<int> s{3};
    CHECK_THROWS_AS(d_max_budget(7, s), ConfigError);
    CHECK_THROWS_AS(d_max_budget(0, s), ConfigError);
    CHECK_THROWS_AS(d_max_budget(2, std::vector<int>{}), ConfigError);
}

TEST_CASE("candidate layout is a bijection onto the symmetric range") {
    for (int d_cv = 2; d_cv <= 64; d_cv += 2) {
        std::vector<int> seen;
        for (int k = 0; k < d_cv; ++k) {
            const int c = candidate_of_index(k, d_cv);
            CHECK(index_of_candidate(c, d_cv) == k);
            seen.push_back(c);
        }
        CHECK(seen.front() == -d_cv / 2 + 1);
        CHECK(seen.back() == d_cv / 2);
        for (std::size_t i = 1; i < seen.size(); ++i) CHECK(seen[i] == seen[i - 1] + 1);
        CHECK(candidate_of_index(d_cv / 2 - 1, d_cv) == 0);
        CHECK(min_candidate(d_cv) == seen.front());
        CHECK(max_candidate(d_cv) == seen.back());
    }
}

TEST_CASE("rescale_disparity_value") {
    CHECK(rescale_disparity_value(12, 24, 3) == 96.0);
    CHECK(rescale_disparity_value(5, 6, 6) == 5.0);
    CHECK(rescale_disparity_value(1.5, 12, 3) == 6.0);
    static_assert(rescale_disparity_value(12, 24, 3) == 96.0);
}

TEST_CASE("validate_config") {
    SUBCASE("defaults") {
        const auto v = validate_config(IcfrConfig{});
        CHECK(v.d_max == 180.0);
        CHECK(v.config.d_cv == 8);
        CHECK(v.config.scale_dens == std::vector<int>{24, 12, 6, 3});
    }
    SUBCASE("odd d_cv") {
        IcfrConfig cfg;
        cfg.d_cv = 7;
        try {
            validate_config(cfg);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.has(ConfigErrorCode::DcvOdd));
            CHECK(std::string(e.what()).find("d_cv must be even") != std::string::npos);
        }
    }
    SUBCASE("non-integer ratio") {
        IcfrConfig cfg;
        cfg.scale_dens = {48, 18};
        try {
            validate_config(cfg);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.has(ConfigErrorCode::NonIntegerScaleRatio));
            CHECK(std::string(e.what()).find("non-integer scale ratio") != std::string::npos);
        }
    }
    SUBCASE("every violation is reported") {
        IcfrConfig cfg;
        cfg.d_cv = 5;
        cfg.scale_dens = {3, 6};
        cfg.aggregator.sgm_p1 = 2.0f;
        cfg.aggregator.sgm_p2 = 1.0f;
        cfg.aggregator.filter_iterations = 0;
        cfg.aggregator.box_radius = -1;
        const auto issues = check_config(cfg);
        CHECK(issues.size() >= 5);
        CHECK_THROWS_AS(validate_config(cfg), ConfigError);
    }
    SUBCASE("empty and non-positive scales") {
        IcfrConfig cfg;
        cfg.scale_dens = {};
        CHECK_THROWS_AS(validate_config(cfg), ConfigError);
        cfg.scale_dens = {6, 0};
        CHECK_THROWS_AS(validate_config(cfg), ConfigError);
    }
}

TEST_CASE("selector names round trip") {
    for (auto k : {HeadKind::Census, HeadKind::Sad, HeadKind::Ncc}) CHECK(parse_head_kind(to_string(k)) == k);
    for (auto k : {AggregatorKind::None, AggregatorKind::Box, AggregatorKind::Sgm})
        CHECK(parse_aggregator_kind(to_string(k)) == k);
    for (auto k : {RefinementKind::None, RefinementKind::Photometric}) CHECK(parse_refinement_kind(to_string(k)) == k);
    CHECK_THROWS(parse_head_kind("bogus"));
}

TEST_CASE("PlanarImage rejects bad payloads") {
    CHECK_THROWS_AS(PlanarImage(2, 2, 1, std::vector<float>(3)), std::invalid_argument);
    CHECK_THROWS_AS(PlanarImage(1, 1, 1, std::vector<float>{std::numeric_limits<float>::quiet_NaN()}),
                    std::invalid_argument);
    PlanarImage img(3, 2, 2, std::vector<float>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11});
    CHECK(img.at(1, 1, 2) == 11.0f);
    CHECK(img.at(0, 1, 0) == 3.0f);
}
