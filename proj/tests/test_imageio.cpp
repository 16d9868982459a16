#include <doctest.h>

#include <cstring>
#include <fstream>
#include <iterator>

#include "helpers.hpp"
#include "icfr/imageio.hpp"

using namespace icfr;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const fs::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary);
    out << bytes;
}

std::string floats_le(std::initializer_list<float> v) {
    std::string s;
    for (float f : v) {
        char b[4];
        std::memcpy(b, &f, 4);
        s.append(b, 4);
    }
    return s;
}

}  // namespace

TEST_CASE("pfm reader") {
    testutil::TempDir dir("pfm");
    SUBCASE("single pixel") {
        spit(dir / "a.pfm", "Pf\n1 1\n-1.0\n" + floats_le({3.5f}));
        const auto img = read_pfm(dir / "a.pfm");
        CHECK(img.width() == 1);
        CHECK(img.at(0, 0, 0) == 3.5f);
    }
    SUBCASE("rows are stored bottom to top") {
        spit(dir / "b.pfm", "Pf\n2 2\n-1.0\n" + floats_le({1, 2, 3, 4}));
        const auto img = read_pfm(dir / "b.pfm");
        CHECK(img.at(0, 0, 0) == 3.0f);
        CHECK(img.at(0, 0, 1) == 4.0f);
        CHECK(img.at(0, 1, 0) == 1.0f);
        CHECK(img.at(0, 1, 1) == 2.0f);
    }
    SUBCASE("three channels") {
        spit(dir / "c.pfm", "PF\n1 1\n-1.0\n" + floats_le({0.1f, 0.2f, 0.3f}));
        const auto img = read_pfm(dir / "c.pfm");
        CHECK(img.channels() == 3);
        CHECK(img.at(2, 0, 0) == 0.3f);
    }
    SUBCASE("errors") {
        spit(dir / "t.pfm", "Pf\n2 2\n-1.0\n" + floats_le({1, 2, 3}));
        CHECK_THROWS_AS(read_pfm(dir / "t.pfm"), FormatError);
        spit(dir / "h.pfm", "P7\n2 2\n-1.0\n");
        CHECK_THROWS_AS(read_pfm(dir / "h.pfm"), FormatError);
        spit(dir / "n.pfm", "Pf\n1 1\n-1.0\n" + floats_le({std::numeric_limits<float>::infinity()}));
        try {
            read_pfm(dir / "n.pfm");
            FAIL("expected FormatError");
        } catch (const FormatError& e) {
            CHECK(e.code() == FormatErrorCode::NonFinite);
        }
        CHECK_THROWS_AS(read_pfm(dir / "missing.pfm"), FormatError);
    }
}

TEST_CASE("pfm round trip is byte-identical") {
    testutil::TempDir dir("pfmrt");
    for (int i = 0; i < 10; ++i) {
        const auto img = testutil::random_image(3 + i, 2 + i, i, i % 2 ? 3 : 1);
        write_pfm(img, dir / "a.pfm");
        const auto back = read_pfm(dir / "a.pfm");
        CHECK(back.data() == img.data());
        write_pfm(back, dir / "b.pfm");
        CHECK(slurp(dir / "a.pfm") == slurp(dir / "b.pfm"));
    }
}

TEST_CASE("kitti disparity png") {
    testutil::TempDir dir("kitti");
    DisparityMap d(3, 2, 1);
    d.values() = {100.0f, 0.5f, 3.0f, 1.25f, 7.0f, 255.99609375f};
    d.set_valid(0, 2, false);
    write_kitti_disparity(d, dir / "d.png");
    const auto back = read_kitti_disparity(dir / "d.png");
    CHECK(back.value(0, 0) == 100.0f);
    CHECK(back.is_valid(0, 0));
    CHECK_FALSE(back.is_valid(0, 2));
    CHECK(back.value(1, 2) == 255.99609375f);
    write_kitti_disparity(back, dir / "e.png");
    const auto again = read_kitti_disparity(dir / "e.png");
    CHECK(again.values() == back.values());
    CHECK(again.valid() == back.valid());

    write_png(PlanarImage(2, 2, 1, 0.5f), dir / "g8.png");
    try {
        read_kitti_disparity(dir / "g8.png");
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(e.code() == FormatErrorCode::WrongBitDepth);
    }
}

TEST_CASE("read_disparity and write_disparity") {
    testutil::TempDir dir("disp");
    DisparityMap d(4, 1, 1);
    d.values() = {1.5f, 0.0f, 2.0f, 9.0f};
    d.set_valid(0, 1, false);
    d.set_valid(0, 3, false);
    for (const char* name : {"d.pfm", "d.png"}) {
        write_disparity(d, dir / name);
        const auto back = read_disparity(dir / name);
        CHECK(back.value(0, 0) == 1.5f);
        CHECK(back.value(0, 2) == 2.0f);
        CHECK(back.valid() == std::vector<std::uint8_t>{1, 0, 1, 0});
    }
}

TEST_CASE("read_image") {
    testutil::TempDir dir("img");
    const auto img = testutil::random_image(5, 4, 1, 3);
    write_png(img, dir / "c.png");
    const auto back = read_image(dir / "c.png");
    CHECK(back.channels() == 3);
    for (std::size_t i = 0; i < img.data().size(); ++i) CHECK(std::abs(back.data()[i] - img.data()[i]) <= 0.5f / 255.0f + 1e-6f);

    spit(dir / "g.pgm", std::string("P5\n2 1\n255\n") + char(0) + char(255));
    const auto g = read_image(dir / "g.pgm");
    CHECK(g.at(0, 0, 0) == 0.0f);
    CHECK(g.at(0, 0, 1) == 1.0f);
    spit(dir / "bad.pgm", "P5\n2 1\n255\n");
    CHECK_THROWS_AS(read_image(dir / "bad.pgm"), FormatError);
}

TEST_CASE("colormap") {
    const auto zero = render_colormap(DisparityMap(3, 2, 1, 0.0f), 10.0f);
    const Rgb lowest = turbo(0.0f);
    for (int y = 0; y < 2; ++y)
        for (int x = 0; x < 3; ++x) {
            CHECK(zero.at(0, y, x) == lowest.r);
            CHECK(zero.at(1, y, x) == lowest.g);
            CHECK(zero.at(2, y, x) == lowest.b);
        }
    const auto black = render_colormap(DisparityMap(3, 2, 1, 5.0f, false), 10.0f);
    for (float v : black.data()) CHECK(v == 0.0f);

    // Published Turbo endpoints.
    CHECK(lowest.r == doctest::Approx(0.18995).epsilon(1e-4));
    CHECK(lowest.g == doctest::Approx(0.07176).epsilon(1e-4));
    CHECK(lowest.b == doctest::Approx(0.23217).epsilon(1e-4));
    const Rgb top = turbo(1.0f);
    CHECK(top.r == doctest::Approx(0.47960).epsilon(1e-4));
    CHECK(top.g == doctest::Approx(0.01583).epsilon(1e-4));
    CHECK(top.b == doctest::Approx(0.01055).epsilon(1e-4));

    // Hue moves monotonically from blue through green to red: the red-minus-blue balance rises
    // across the ramp once past the dark blue start.
    DisparityMap ramp(101, 1, 1);
    for (int x = 0; x <= 100; ++x) ramp.value(0, x) = static_cast<float>(x);
    const auto img = render_colormap(ramp, 100.0f);
    int first_red = -1;
    for (int x = 0; x <= 100; ++x)
        if (first_red < 0 && img.at(0, 0, x) > img.at(2, 0, x) && x > 10) first_red = x;
    CHECK(first_red > 30);
    for (int x = first_red; x <= 100; ++x) CHECK(img.at(0, 0, x) > img.at(2, 0, x));
    CHECK(img.at(2, 0, 15) > img.at(0, 0, 15));
}
