#pragma once

#include <cstdint>
#include <string>

#include "icfr/core.hpp"

namespace icfr {

enum class SceneKind { Constant, TwoPlane, Ramp, StepOcclusion };

SceneKind parse_scene_kind(const std::string& s);
std::string to_string(SceneKind kind);

struct SceneParams {
    SceneKind kind = SceneKind::Constant;
    int width = 384;
    int height = 384;
    // constant: near ignored. two-plane: far = background, near = foreground rectangle.
    // ramp: disparity goes linearly from far (x = 0) to near (x = width - 1).
    // step-occlusion: far on the left half, near on the right half.
    float far = 20.0f;
    float near = 40.0f;
    // Brightness offset of the nearer surface so discontinuities carry a luminance edge.
    float layer_contrast = 0.3f;
    std::uint64_t seed = 7;
};

struct StereoScene {
    PlanarImage left;
    PlanarImage right;
    DisparityMap gt;  // left view, full resolution; occluded and out-of-view pixels invalid
};

/// Multi-octave random-dot left image; the right image is rendered by inverse warping the left
/// surfaces with a depth test, and pixels seen only by the right camera get fresh texture.
/// Throws std::invalid_argument if any disparity reaches the image width.
StereoScene make_scene(const SceneParams& params);

/// Random-dot texture in [0, 1] with energy at every octave from 1 to 64 pixels.
PlanarImage random_dot_texture(int width, int height, std::uint64_t seed);

}  // namespace icfr
