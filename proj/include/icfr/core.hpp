#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace icfr {

/// Raised when a raster's dimensions disagree with another operand.
class ShapeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ConfigErrorCode {
    DcvOdd,
    DcvTooSmall,
    EmptyScales,
    NonPositiveScale,
    ScalesNotDecreasing,
    NonIntegerScaleRatio,
    NegativeBoxRadius,
    BadSgmPenalties,
    BadFilterIterations,
    BadRefineParams,
};

struct ConfigIssue {
    ConfigErrorCode code;
    std::string message;
};

/// Carries every violated configuration invariant; what() joins the messages.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<ConfigIssue> issues);
    explicit ConfigError(ConfigIssue issue);

    const std::vector<ConfigIssue>& issues() const { return issues_; }
    bool has(ConfigErrorCode code) const;

private:
    std::vector<ConfigIssue> issues_;
};

// Multi-channel float raster. Channels are stored as consecutive row-major planes.
class PlanarImage {
public:
    PlanarImage() = default;
    PlanarImage(int width, int height, int channels, float fill = 0.0f);
    /// Throws std::invalid_argument on size mismatch or non-finite samples.
    PlanarImage(int width, int height, int channels, std::vector<float> data);

    int width() const { return width_; }
    int height() const { return height_; }
    int channels() const { return channels_; }
    std::size_t plane_size() const { return static_cast<std::size_t>(width_) * height_; }
    bool empty() const { return data_.empty(); }

    float& at(int c, int y, int x) { return data_[index(c, y, x)]; }
    float at(int c, int y, int x) const { return data_[index(c, y, x)]; }

    std::span<float> plane(int c) { return {data_.data() + c * plane_size(), plane_size()}; }
    std::span<const float> plane(int c) const { return {data_.data() + c * plane_size(), plane_size()}; }
    std::span<float> row(int c, int y) { return {data_.data() + index(c, y, 0), static_cast<std::size_t>(width_)}; }
    std::span<const float> row(int c, int y) const {
        return {data_.data() + index(c, y, 0), static_cast<std::size_t>(width_)};
    }

    const std::vector<float>& data() const { return data_; }
    std::vector<float>& data() { return data_; }

    bool same_size(const PlanarImage& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

private:
    std::size_t index(int c, int y, int x) const {
        return (static_cast<std::size_t>(c) * height_ + y) * width_ + x;
    }

    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    std::vector<float> data_;
};

/// Disparity in pixels of its own scale. scale_den 24 means the map lives at 1/24 resolution.
class DisparityMap {
public:
    DisparityMap() = default;
    DisparityMap(int width, int height, int scale_den, float fill = 0.0f, bool valid = true);

    int width() const { return width_; }
    int height() const { return height_; }
    int scale_den() const { return scale_den_; }
    std::size_t size() const { return values_.size(); }

    float& value(int y, int x) { return values_[idx(y, x)]; }
    float value(int y, int x) const { return values_[idx(y, x)]; }
    bool is_valid(int y, int x) const { return valid_[idx(y, x)] != 0; }
    void set_valid(int y, int x, bool v) { valid_[idx(y, x)] = v ? 1 : 0; }

    std::vector<float>& values() { return values_; }
    const std::vector<float>& values() const { return values_; }
    std::vector<std::uint8_t>& valid() { return valid_; }
    const std::vector<std::uint8_t>& valid() const { return valid_; }

    std::size_t valid_count() const;
    bool same_size(const DisparityMap& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

private:
    std::size_t idx(int y, int x) const { return static_cast<std::size_t>(y) * width_ + x; }

    int width_ = 0;
    int height_ = 0;
    int scale_den_ = 1;
    std::vector<float> values_;
    std::vector<std::uint8_t> valid_;
};

// Signed candidate layout for a symmetric volume of d_cv slots.
// Slot k holds disparity k - d_cv/2 + 1, so zero sits at zero-based index d_cv/2 - 1
// and the negative side is one candidate shorter than the positive side.
constexpr int candidate_of_index(int k, int d_cv) { return k - d_cv / 2 + 1; }
constexpr int index_of_candidate(int d, int d_cv) { return d + d_cv / 2 - 1; }
constexpr int min_candidate(int d_cv) { return -d_cv / 2 + 1; }
constexpr int max_candidate(int d_cv) { return d_cv / 2; }

/// Per-pixel matching costs over d_cv signed candidates. Costs are stored pixel-major:
/// the d_cv costs of one pixel are contiguous.
class SymmetricCostVolume {
public:
    SymmetricCostVolume() = default;
    SymmetricCostVolume(int width, int height, int d_cv, int scale_den = 1, float fill = 0.0f);

    int width() const { return width_; }
    int height() const { return height_; }
    int d_cv() const { return d_cv_; }
    int scale_den() const { return scale_den_; }
    std::size_t cell_count() const { return costs_.size(); }

    int candidate(int k) const { return candidate_of_index(k, d_cv_); }

    std::span<float> costs(int y, int x) { return {costs_.data() + offset(y, x), static_cast<std::size_t>(d_cv_)}; }
    std::span<const float> costs(int y, int x) const {
        return {costs_.data() + offset(y, x), static_cast<std::size_t>(d_cv_)};
    }
    float& cost(int y, int x, int k) { return costs_[offset(y, x) + k]; }
    float cost(int y, int x, int k) const { return costs_[offset(y, x) + k]; }

    std::vector<float>& raw() { return costs_; }
    const std::vector<float>& raw() const { return costs_; }

private:
    std::size_t offset(int y, int x) const {
        return (static_cast<std::size_t>(y) * width_ + x) * d_cv_;
    }

    int width_ = 0;
    int height_ = 0;
    int d_cv_ = 0;
    int scale_den_ = 1;
    std::vector<float> costs_;
};

enum class HeadKind { Census, Sad, Ncc };
enum class AggregatorKind { None, Box, Sgm };
enum class RefinementKind { None, Photometric };

std::string to_string(HeadKind kind);
std::string to_string(AggregatorKind kind);
std::string to_string(RefinementKind kind);
HeadKind parse_head_kind(const std::string& s);
AggregatorKind parse_aggregator_kind(const std::string& s);
RefinementKind parse_refinement_kind(const std::string& s);

struct AggregatorParams {
    AggregatorKind kind = AggregatorKind::Sgm;
    int box_radius = 2;
    float sgm_p1 = 0.5f;  // |delta d| == 1
    float sgm_p2 = 4.0f;  // |delta d| > 1
    int filter_iterations = 3;
};

/// Constants of the classical refinement stage.
struct RefineParams {
    float lr_tolerance = 1.0f;
    float spatial_sigma = 9.0f;
    float range_sigma = 0.1f;
    float photometric_scale = 0.05f;
};

struct IcfrConfig {
    std::vector<int> scale_dens{24, 12, 6, 3};
    int d_cv = 8;
    HeadKind head = HeadKind::Census;
    AggregatorParams aggregator;
    RefinementKind refinement = RefinementKind::Photometric;
    RefineParams refine;

    int coarsest_den() const { return scale_dens.front(); }
    int finest_den() const { return scale_dens.back(); }
};

struct ValidatedConfig {
    IcfrConfig config;
    double d_max = 0.0;
};

/// Maximum full-resolution disparity reachable by accumulating residuals of d_cv/2 per scale.
double d_max_budget(int d_cv, std::span<const int> scale_dens);

constexpr double rescale_disparity_value(double d, int from_den, int to_den) {
    return d * static_cast<double>(from_den) / static_cast<double>(to_den);
}

/// Returns every violated invariant; empty when the config is usable.
std::vector<ConfigIssue> check_config(const IcfrConfig& cfg);

/// Throws ConfigError listing all violations.
ValidatedConfig validate_config(const IcfrConfig& cfg);

}  // namespace icfr
