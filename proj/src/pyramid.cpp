#include "icfr/pyramid.hpp"

#include <algorithm>
#include <stdexcept>

#include "icfr/parallel.hpp"

namespace icfr {

namespace {

int reflect_index(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * (n - 1);
    i %= period;
    if (i < 0) i += period;
    return i < n ? i : period - i;
}

}  // namespace

PaddedImage pad_to_multiple(const PlanarImage& img, int multiple) {
    if (multiple < 1) throw std::invalid_argument("pad multiple must be at least 1");
    const int w = img.width();
    const int h = img.height();
    const int pw = (w + multiple - 1) / multiple * multiple;
    const int ph = (h + multiple - 1) / multiple * multiple;
    if (pw == w && ph == h) return {img, w, h};

    PlanarImage out(pw, ph, img.channels());
    for (int c = 0; c < img.channels(); ++c)
        for (int y = 0; y < ph; ++y) {
            const int sy = reflect_index(y, h);
            for (int x = 0; x < pw; ++x) out.at(c, y, x) = img.at(c, sy, reflect_index(x, w));
        }
    return {std::move(out), w, h};
}

PlanarImage crop(const PlanarImage& img, int width, int height) {
    if (width > img.width() || height > img.height()) throw ShapeError("crop larger than image");
    if (width == img.width() && height == img.height()) return img;
    PlanarImage out(width, height, img.channels());
    for (int c = 0; c < img.channels(); ++c)
        for (int y = 0; y < height; ++y) {
            auto src = img.row(c, y);
            std::copy(src.begin(), src.begin() + width, out.row(c, y).begin());
        }
    return out;
}

DisparityMap crop(const DisparityMap& d, int width, int height) {
    if (width > d.width() || height > d.height()) throw ShapeError("crop larger than disparity map");
    if (width == d.width() && height == d.height()) return d;
    DisparityMap out(width, height, d.scale_den());
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            out.value(y, x) = d.value(y, x);
            out.set_valid(y, x, d.is_valid(y, x));
        }
    return out;
}

PlanarImage downsample_block(const PlanarImage& img, int factor) {
    if (factor < 1) throw std::invalid_argument("downsample factor must be at least 1");
    if (img.width() % factor != 0 || img.height() % factor != 0)
        throw ShapeError("image dimensions must be divisible by the downsample factor");
    if (factor == 1) return img;
    const int ow = img.width() / factor;
    const int oh = img.height() / factor;
    PlanarImage out(ow, oh, img.channels());
    const float inv = 1.0f / static_cast<float>(factor * factor);
    for (int c = 0; c < img.channels(); ++c) {
        parallel_for(0, oh, [&](int y) {
            auto dst = out.row(c, y);
            for (int x = 0; x < ow; ++x) {
                float sum = 0.0f;
                for (int dy = 0; dy < factor; ++dy) {
                    auto src = img.row(c, y * factor + dy);
                    for (int dx = 0; dx < factor; ++dx) sum += src[x * factor + dx];
                }
                dst[x] = sum * inv;
            }
        });
    }
    return out;
}

PlanarImage downsample_by_two(const PlanarImage& img) {
    if (img.width() % 2 != 0 || img.height() % 2 != 0)
        throw ShapeError("downsample_by_two requires even width and height");
    return downsample_block(img, 2);
}

PlanarImage luminance(const PlanarImage& img) {
    if (img.channels() == 1) return img;
    if (img.channels() != 3) throw std::invalid_argument("expected a 1- or 3-channel image");
    PlanarImage out(img.width(), img.height(), 1);
    auto r = img.plane(0);
    auto g = img.plane(1);
    auto b = img.plane(2);
    auto dst = out.plane(0);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = 0.299f * r[i] + 0.587f * g[i] + 0.114f * b[i];
    return out;
}

PlanarImage extract_features(const PlanarImage& img, HeadKind kind) {
    if (img.channels() != 1 && img.channels() != 3)
        throw std::invalid_argument("unsupported channel count " + std::to_string(img.channels()));
    PlanarImage lum = luminance(img);
    if (kind != HeadKind::Census) return lum;

    const int w = lum.width();
    const int h = lum.height();
    PlanarImage out(w, h, 1 + kCensusBits);
    std::copy(lum.data().begin(), lum.data().end(), out.plane(0).begin());
    parallel_for(0, h, [&](int y) {
        for (int x = 0; x < w; ++x) {
            const float centre = lum.at(0, y, x);
            int bit = 0;
            for (int dy = -kCensusRadius; dy <= kCensusRadius; ++dy) {
                const int sy = std::clamp(y + dy, 0, h - 1);
                for (int dx = -kCensusRadius; dx <= kCensusRadius; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const int sx = std::clamp(x + dx, 0, w - 1);
                    out.at(1 + bit, y, x) = lum.at(0, sy, sx) > centre ? 1.0f : 0.0f;
                    ++bit;
                }
            }
        }
    });
    return out;
}

const PyramidLevel& FeaturePyramid::level_for(int scale_den) const {
    for (const auto& level : levels)
        if (level.scale_den == scale_den) return level;
    throw std::out_of_range("pyramid has no level at 1/" + std::to_string(scale_den));
}

FeaturePyramid build_pyramid(const PlanarImage& img, const IcfrConfig& cfg) {
    const auto& dens = cfg.scale_dens;
    PaddedImage padded = pad_to_multiple(img, cfg.coarsest_den());

    FeaturePyramid pyr;
    pyr.kind = cfg.head;
    pyr.padded_width = padded.image.width();
    pyr.padded_height = padded.image.height();
    pyr.original_width = padded.original_width;
    pyr.original_height = padded.original_height;
    pyr.levels.resize(dens.size());

    PlanarImage current = downsample_block(padded.image, cfg.finest_den());
    for (std::size_t i = dens.size(); i-- > 0;) {
        if (i + 1 < dens.size()) current = downsample_block(current, dens[i] / dens[i + 1]);
        pyr.levels[i] = {dens[i], extract_features(current, cfg.head)};
    }
    return pyr;
}

}  // namespace icfr
