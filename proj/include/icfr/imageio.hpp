#pragma once

#include <filesystem>
#include <stdexcept>

#include "icfr/core.hpp"

namespace icfr {

enum class FormatErrorCode { Io, MalformedHeader, Truncated, NonFinite, WrongBitDepth, Unsupported };

class FormatError : public std::runtime_error {
public:
    FormatError(FormatErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    FormatErrorCode code() const { return code_; }

private:
    FormatErrorCode code_;
};

// PFM: "Pf" (1 channel) or "PF" (3 channels), "width height", scale (negative = little-endian),
// then float32 rows stored bottom-to-top. Images are returned top-to-bottom.
PlanarImage read_pfm(const std::filesystem::path& path);
/// Always little-endian with scale -1.0.
void write_pfm(const PlanarImage& img, const std::filesystem::path& path);

/// KITTI 16-bit PNG: disparity = value / 256, value 0 = invalid.
DisparityMap read_kitti_disparity(const std::filesystem::path& path);
/// Rounds to the nearest 1/256; invalid or negative pixels are stored as 0.
void write_kitti_disparity(const DisparityMap& d, const std::filesystem::path& path);

/// 8/16-bit PNG or binary PPM/PGM, converted to floats in [0, 1]. Gray+alpha and RGBA drop alpha.
PlanarImage read_image(const std::filesystem::path& path);
/// 8-bit PNG of a 1- or 3-channel image with samples in [0, 1] (clamped).
void write_png(const PlanarImage& img, const std::filesystem::path& path);

/// Turbo colormap sample for t in [0, 1] (clamped), as RGB in [0, 1].
struct Rgb {
    float r, g, b;
};
Rgb turbo(float t);

/// Colormap over [0, d_max_display]; invalid pixels are black.
PlanarImage render_colormap(const DisparityMap& d, float d_max_display);

/// Loads a disparity file by extension: .png is KITTI, anything else PFM. In PFM files a stored 0
/// marks an invalid pixel, matching the KITTI sentinel.
DisparityMap read_disparity(const std::filesystem::path& path);
void write_disparity(const DisparityMap& d, const std::filesystem::path& path);

}  // namespace icfr
