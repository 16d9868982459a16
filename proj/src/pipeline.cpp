#include "icfr/pipeline.hpp"

#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <new>
#include <regex>
#include <sstream>

#include "icfr/pyramid.hpp"
#include "icfr/refine.hpp"
#include "icfr/synth.hpp"

namespace icfr {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

MatchResult match_pair(const PlanarImage& left, const PlanarImage& right, const IcfrConfig& cfg,
                       const IcfrOptions& options) {
    validate_config(cfg);
    if (!left.same_size(right)) throw ShapeError("left and right images differ in size");
    MatchResult out;
    const auto t0 = Clock::now();

    const auto tp = Clock::now();
    const auto lp = build_pyramid(left, cfg);
    const auto rp = build_pyramid(right, cfg);
    out.pyramid_ms = ms_since(tp);

    const auto ti = Clock::now();
    auto est = run_icfr(lp, rp, cfg, options);
    out.icfr_ms = ms_since(ti);

    const auto tr = Clock::now();
    const PaddedImage pl = pad_to_multiple(left, cfg.coarsest_den());
    const PaddedImage pr = pad_to_multiple(right, cfg.coarsest_den());
    out.disparity = refine_full(est.disparity, pl.image, pr.image, cfg, left.width(), left.height());
    out.refine_ms = ms_since(tr);

    out.finest = std::move(est.disparity);
    out.trace = std::move(est.trace);
    out.total_ms = ms_since(t0);
    return out;
}

Resolution parse_resolution(const std::string& s) {
    if (s == "KITTI") return {s, 1242, 375};
    if (s == "HD") return {s, 1280, 720};
    if (s == "4K") return {s, 3840, 2160};
    static const std::regex dims(R"((\d+)x(\d+))");
    std::smatch m;
    if (std::regex_match(s, m, dims)) {
        const int w = std::stoi(m[1]);
        const int h = std::stoi(m[2]);
        if (w > 0 && h > 0) return {s, w, h};
    }
    throw std::invalid_argument("bad resolution '" + s + "' (expected KITTI, HD, 4K or WxH)");
}

long peak_rss_kb() {
    rusage usage{};
    if (getrusage(RUSAGE_SELF, &usage) != 0) return 0;
    return usage.ru_maxrss;
}

std::vector<BenchRow> run_bench(const std::vector<Resolution>& resolutions, const IcfrConfig& cfg,
                                const BenchOptions& options) {
    validate_config(cfg);
    if (options.repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
    std::vector<BenchRow> rows;
    for (const auto& res : resolutions) {
        BenchRow row;
        row.resolution = res;
        row.scale_dens = cfg.scale_dens;
        row.scale_head_mean_ms.assign(cfg.scale_dens.size(), 0.0);
        try {
            SceneParams sp;
            sp.width = res.width;
            sp.height = res.height;
            sp.far = options.scene_disparity;
            sp.seed = options.seed;
            const StereoScene scene = make_scene(sp);
            for (int i = 0; i < options.warmup; ++i) match_pair(scene.left, scene.right, cfg);

            std::vector<double> times;
            for (int i = 0; i < options.repetitions; ++i) {
                const auto t0 = Clock::now();
                const MatchResult r = match_pair(scene.left, scene.right, cfg);
                times.push_back(ms_since(t0));
                row.peak_cells = r.trace.total_cells();
                for (std::size_t s = 0; s < r.trace.scales.size(); ++s)
                    row.scale_head_mean_ms[s] += r.trace.scales[s].head_ms / options.repetitions;
            }
            double sum = 0.0;
            for (double t : times) sum += t;
            row.mean_ms = sum / static_cast<double>(times.size());
            double var = 0.0;
            for (double t : times) var += (t - row.mean_ms) * (t - row.mean_ms);
            row.stddev_ms = times.size() > 1 ? std::sqrt(var / static_cast<double>(times.size() - 1)) : 0.0;
            row.repetitions = options.repetitions;
        } catch (const std::bad_alloc&) {
            row.fit = false;
        }
        row.peak_rss_kb = peak_rss_kb();
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "resolution,width,height,fit,repetitions,mean_ms,stddev_ms,peak_cells,peak_rss_kb,scale_head_ms\n";
    for (const auto& r : rows) {
        out << r.resolution.label << ',' << r.resolution.width << ',' << r.resolution.height << ','
            << (r.fit ? "yes" : "did not fit") << ',' << r.repetitions << ',' << r.mean_ms << ',' << r.stddev_ms
            << ',' << r.peak_cells << ',' << r.peak_rss_kb << ',';
        for (std::size_t i = 0; i < r.scale_dens.size(); ++i) {
            if (i) out << ';';
            out << r.scale_dens[i] << ':' << r.scale_head_mean_ms[i];
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace icfr
