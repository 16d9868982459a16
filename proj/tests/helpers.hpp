#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "icfr/core.hpp"

namespace testutil {

inline icfr::PlanarImage random_image(int w, int h, std::uint64_t seed, int channels = 1) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<float> u(0.0f, 1.0f);
    icfr::PlanarImage img(w, h, channels);
    for (float& v : img.data()) v = u(rng);
    return img;
}

inline icfr::PlanarImage ramp_image(int w, int h) {
    icfr::PlanarImage img(w, h, 1);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) img.at(0, y, x) = static_cast<float>(x);
    return img;
}

// Fresh directory under the system temp dir, removed on destruction.
struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path = std::filesystem::temp_directory_path() / ("icfr_" + tag + "_" + std::to_string(rd()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::filesystem::path operator/(const std::string& name) const { return path / name; }
};

}  // namespace testutil
