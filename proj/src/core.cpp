#include "icfr/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace icfr {

namespace {

std::string join_messages(const std::vector<ConfigIssue>& issues) {
    std::string out;
    for (const auto& issue : issues) {
        if (!out.empty()) out += "; ";
        out += issue.message;
    }
    return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::runtime_error(join_messages(issues)), issues_(std::move(issues)) {}

ConfigError::ConfigError(ConfigIssue issue) : ConfigError(std::vector<ConfigIssue>{std::move(issue)}) {}

bool ConfigError::has(ConfigErrorCode code) const {
    return std::any_of(issues_.begin(), issues_.end(), [&](const ConfigIssue& i) { return i.code == code; });
}

PlanarImage::PlanarImage(int width, int height, int channels, float fill)
    : width_(width), height_(height), channels_(channels) {
    if (width < 0 || height < 0 || channels < 0) throw std::invalid_argument("negative image dimension");
    data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

PlanarImage::PlanarImage(int width, int height, int channels, std::vector<float> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
    if (width < 0 || height < 0 || channels < 0) throw std::invalid_argument("negative image dimension");
    if (data_.size() != static_cast<std::size_t>(width) * height * channels)
        throw std::invalid_argument("image data length does not match width*height*channels");
    if (!std::all_of(data_.begin(), data_.end(), [](float v) { return std::isfinite(v); }))
        throw std::invalid_argument("image data contains non-finite values");
}

DisparityMap::DisparityMap(int width, int height, int scale_den, float fill, bool valid)
    : width_(width), height_(height), scale_den_(scale_den) {
    if (width < 0 || height < 0) throw std::invalid_argument("negative disparity map dimension");
    if (scale_den < 1) throw std::invalid_argument("scale denominator must be positive");
    values_.assign(static_cast<std::size_t>(width) * height, fill);
    valid_.assign(values_.size(), valid ? 1 : 0);
}

std::size_t DisparityMap::valid_count() const {
    return static_cast<std::size_t>(std::count(valid_.begin(), valid_.end(), std::uint8_t{1}));
}

SymmetricCostVolume::SymmetricCostVolume(int width, int height, int d_cv, int scale_den, float fill)
    : width_(width), height_(height), d_cv_(d_cv), scale_den_(scale_den) {
    if (d_cv < 2 || d_cv % 2 != 0) throw ConfigError({ConfigErrorCode::DcvOdd, "d_cv must be even and at least 2"});
    costs_.assign(static_cast<std::size_t>(width) * height * d_cv, fill);
}

std::string to_string(HeadKind kind) {
    switch (kind) {
        case HeadKind::Census: return "census";
        case HeadKind::Sad: return "sad";
        case HeadKind::Ncc: return "ncc";
    }
    return "?";
}

std::string to_string(AggregatorKind kind) {
    switch (kind) {
        case AggregatorKind::None: return "none";
        case AggregatorKind::Box: return "box";
        case AggregatorKind::Sgm: return "sgm";
    }
    return "?";
}

std::string to_string(RefinementKind kind) {
    return kind == RefinementKind::None ? "none" : "photometric";
}

HeadKind parse_head_kind(const std::string& s) {
    if (s == "census") return HeadKind::Census;
    if (s == "sad") return HeadKind::Sad;
    if (s == "ncc") return HeadKind::Ncc;
    throw std::invalid_argument("unknown head kind: " + s);
}

AggregatorKind parse_aggregator_kind(const std::string& s) {
    if (s == "none") return AggregatorKind::None;
    if (s == "box") return AggregatorKind::Box;
    if (s == "sgm") return AggregatorKind::Sgm;
    throw std::invalid_argument("unknown aggregator kind: " + s);
}

RefinementKind parse_refinement_kind(const std::string& s) {
    if (s == "none") return RefinementKind::None;
    if (s == "photometric") return RefinementKind::Photometric;
    throw std::invalid_argument("unknown refinement kind: " + s);
}

double d_max_budget(int d_cv, std::span<const int> scale_dens) {
    if (d_cv <= 0) throw ConfigError({ConfigErrorCode::DcvTooSmall, "d_cv must be positive"});
    if (d_cv % 2 != 0) throw ConfigError({ConfigErrorCode::DcvOdd, "d_cv must be even"});
    if (scale_dens.empty()) throw ConfigError({ConfigErrorCode::EmptyScales, "scale list is empty"});
    const double half = d_cv / 2;
    double total = 0.0;
    for (int den : scale_dens) total += half * den;
    return total;
}

std::vector<ConfigIssue> check_config(const IcfrConfig& cfg) {
    std::vector<ConfigIssue> issues;
    if (cfg.d_cv % 2 != 0) issues.push_back({ConfigErrorCode::DcvOdd, "d_cv must be even"});
    if (cfg.d_cv < 2) issues.push_back({ConfigErrorCode::DcvTooSmall, "d_cv must be at least 2"});

    const auto& s = cfg.scale_dens;
    if (s.empty()) {
        issues.push_back({ConfigErrorCode::EmptyScales, "scale list is empty"});
    } else if (std::any_of(s.begin(), s.end(), [](int d) { return d < 1; })) {
        issues.push_back({ConfigErrorCode::NonPositiveScale, "scale denominators must be positive"});
    } else {
        bool decreasing = true;
        bool integral = true;
        for (std::size_t i = 1; i < s.size(); ++i) {
            if (s[i] >= s[i - 1]) decreasing = false;
            else if (s[i - 1] % s[i] != 0) integral = false;
        }
        if (!decreasing)
            issues.push_back({ConfigErrorCode::ScalesNotDecreasing, "scale denominators must be strictly decreasing"});
        if (!integral) issues.push_back({ConfigErrorCode::NonIntegerScaleRatio, "non-integer scale ratio"});
    }

    const auto& a = cfg.aggregator;
    if (a.box_radius < 0) issues.push_back({ConfigErrorCode::NegativeBoxRadius, "box_radius must be non-negative"});
    if (!(a.sgm_p1 >= 0.0f && a.sgm_p2 >= a.sgm_p1))
        issues.push_back({ConfigErrorCode::BadSgmPenalties, "sgm penalties must satisfy p2 >= p1 >= 0"});
    if (a.filter_iterations < 1)
        issues.push_back({ConfigErrorCode::BadFilterIterations, "filter_iterations must be at least 1"});

    const auto& r = cfg.refine;
    if (!(r.lr_tolerance >= 0.0f && r.spatial_sigma > 0.0f && r.range_sigma > 0.0f && r.photometric_scale > 0.0f))
        issues.push_back({ConfigErrorCode::BadRefineParams,
                          "refinement tolerance must be non-negative and sigmas/scales positive"});
    return issues;
}

ValidatedConfig validate_config(const IcfrConfig& cfg) {
    auto issues = check_config(cfg);
    if (!issues.empty()) throw ConfigError(std::move(issues));
    return {cfg, d_max_budget(cfg.d_cv, cfg.scale_dens)};
}

}  // namespace icfr
