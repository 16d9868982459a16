// Command-line front end: match, eval, bench, synth.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "icfr/core.hpp"
#include "icfr/imageio.hpp"
#include "icfr/metrics.hpp"
#include "icfr/parallel.hpp"
#include "icfr/pipeline.hpp"
#include "icfr/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct ConfigFlags {
    int d_cv = 8;
    std::string scales = "24,12,6,3";
    std::string head = "census";
    std::string agg = "sgm";
    std::string refine = "photometric";
    icfr::AggregatorParams agg_params;
    icfr::RefineParams refine_params;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& f) {
    cmd->add_option("--dcv", f.d_cv, "Disparity candidates per scale (even)");
    cmd->add_option("--scales", f.scales, "Comma-separated scale denominators, coarse to fine");
    cmd->add_option("--head", f.head, "Matching cost")->check(CLI::IsMember({"census", "sad", "ncc"}));
    cmd->add_option("--agg", f.agg, "Cost aggregation")->check(CLI::IsMember({"none", "box", "sgm"}));
    cmd->add_option("--refine", f.refine, "Refinement")->check(CLI::IsMember({"none", "photometric"}));
    cmd->add_option("--p1", f.agg_params.sgm_p1, "SGM penalty for |delta d| = 1");
    cmd->add_option("--p2", f.agg_params.sgm_p2, "SGM penalty for |delta d| > 1");
    cmd->add_option("--box-radius", f.agg_params.box_radius, "Box filter radius");
    cmd->add_option("--filter-iterations", f.agg_params.filter_iterations, "Box filter passes");
    cmd->add_option("--lr-tol", f.refine_params.lr_tolerance, "Left-right consistency tolerance (px)");
    cmd->add_option("--sigma-s", f.refine_params.spatial_sigma, "Guided filter spatial sigma (px)");
    cmd->add_option("--sigma-r", f.refine_params.range_sigma, "Guided filter luminance sigma");
    cmd->add_option("--photo-scale", f.refine_params.photometric_scale, "Photometric error weight scale");
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad scale denominator '" + tok + "'");
        }
    }
    return out;
}

icfr::IcfrConfig to_config(const ConfigFlags& f) {
    icfr::IcfrConfig cfg;
    cfg.d_cv = f.d_cv;
    cfg.scale_dens = parse_int_list(f.scales);
    cfg.head = icfr::parse_head_kind(f.head);
    cfg.aggregator = f.agg_params;
    cfg.aggregator.kind = icfr::parse_aggregator_kind(f.agg);
    cfg.refinement = icfr::parse_refinement_kind(f.refine);
    cfg.refine = f.refine_params;
    return cfg;
}

json config_json(const icfr::IcfrConfig& cfg) {
    return {{"d_cv", cfg.d_cv},
            {"scale_dens", cfg.scale_dens},
            {"head", icfr::to_string(cfg.head)},
            {"aggregator", icfr::to_string(cfg.aggregator.kind)},
            {"refinement", icfr::to_string(cfg.refinement)}};
}

json report_json(const icfr::EvalReport& r) {
    json j = {{"epe", r.epe},         {"er1", r.er1},         {"er3", r.er3},
              {"d1", r.d1},           {"n_valid", r.n_valid}, {"n_total", r.n_total},
              {"smooth_l1", r.smooth_l1}};
    j["weighted_loss"] = r.weighted_loss ? json(*r.weighted_loss) : json(nullptr);
    return j;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

int cmd_match(const std::string& left_path, const std::string& right_path, const ConfigFlags& flags,
              const std::vector<std::string>& outs, const std::string& viz, const std::string& trace_path) {
    const auto cfg = icfr::validate_config(to_config(flags));
    const auto left = icfr::read_image(left_path);
    const auto right = icfr::read_image(right_path);
    if (!left.same_size(right)) throw icfr::ShapeError("left and right images differ in size");

    const auto result = icfr::match_pair(left, right, cfg.config);
    for (const auto& out : outs) icfr::write_disparity(result.disparity, out);
    if (!viz.empty()) icfr::write_png(icfr::render_colormap(result.disparity, static_cast<float>(cfg.d_max)), viz);

    json trace = {{"d_max", cfg.d_max},
                  {"config", config_json(cfg.config)},
                  {"width", result.disparity.width()},
                  {"height", result.disparity.height()},
                  {"total_cells", result.trace.total_cells()},
                  {"timing_ms",
                   {{"pyramid", result.pyramid_ms},
                    {"icfr", result.icfr_ms},
                    {"refine", result.refine_ms},
                    {"total", result.total_ms}}}};
    json scales = json::array();
    for (const auto& s : result.trace.scales)
        scales.push_back({{"scale_den", s.scale_den}, {"head_ms", s.head_ms}, {"total_ms", s.total_ms}, {"cells", s.cells}});
    trace["scales"] = scales;
    if (!trace_path.empty()) write_text(trace_path, trace.dump(2) + "\n");
    std::cout << "disparity " << result.disparity.width() << "x" << result.disparity.height() << ", D_max "
              << cfg.d_max << ", " << result.total_ms << " ms\n";
    return 0;
}

int cmd_eval(const std::string& pred_path, const std::string& gt_path, bool quadratic, const std::string& json_out,
             const std::string& csv_out) {
    const auto pred = icfr::read_disparity(pred_path);
    const auto gt = icfr::read_disparity(gt_path);
    const auto variant = quadratic ? icfr::SmoothL1Variant::Quadratic : icfr::SmoothL1Variant::Literal;
    const auto report = icfr::evaluate(pred, gt, variant);
    const json j = report_json(report);
    std::cout << j.dump(2) << "\n";
    if (!json_out.empty()) write_text(json_out, j.dump(2) + "\n");
    if (!csv_out.empty()) {
        std::ostringstream csv;
        csv << "epe,er1,er3,d1,n_valid,n_total,smooth_l1\n"
            << report.epe << ',' << report.er1 << ',' << report.er3 << ',' << report.d1 << ',' << report.n_valid << ','
            << report.n_total << ',' << report.smooth_l1 << '\n';
        write_text(csv_out, csv.str());
    }
    return 0;
}

int cmd_bench(const std::string& resolutions, const ConfigFlags& flags, const icfr::BenchOptions& opts,
              const std::string& csv_out) {
    const auto cfg = icfr::validate_config(to_config(flags));
    std::vector<icfr::Resolution> res;
    std::stringstream ss(resolutions);
    std::string tok;
    while (std::getline(ss, tok, ',')) res.push_back(icfr::parse_resolution(tok));
    const auto rows = icfr::run_bench(res, cfg.config, opts);
    const std::string csv = icfr::bench_csv(rows);
    std::cout << csv;
    if (!csv_out.empty()) write_text(csv_out, csv);
    return 0;
}

int cmd_synth(const std::string& kind, const std::string& size, float far, float near, float contrast,
              std::uint64_t seed, const std::string& out_dir) {
    icfr::SceneParams p;
    p.kind = icfr::parse_scene_kind(kind);
    const auto res = icfr::parse_resolution(size);
    p.width = res.width;
    p.height = res.height;
    p.far = far;
    p.near = near;
    p.layer_contrast = contrast;
    p.seed = seed;
    const auto scene = icfr::make_scene(p);
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    icfr::write_pfm(scene.left, dir / "left.pfm");
    icfr::write_pfm(scene.right, dir / "right.pfm");
    icfr::write_disparity(scene.gt, dir / "gt.pfm");
    icfr::write_kitti_disparity(scene.gt, dir / "gt.png");
    std::cout << "wrote " << (dir / "left.pfm").string() << ", right.pfm, gt.pfm, gt.png\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coarse-to-fine residual stereo matching"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "Worker threads for parallel regions")->check(CLI::PositiveNumber);

    ConfigFlags match_flags;
    std::string left, right, viz, trace;
    std::vector<std::string> outs;
    auto* match = app.add_subcommand("match", "Estimate full-resolution disparity for a stereo pair");
    match->add_option("left", left, "Left image (PNG, PPM/PGM or PFM)")->required();
    match->add_option("right", right, "Right image")->required();
    match->add_option("--out", outs, "Disparity output(s): .pfm or KITTI .png");
    match->add_option("--viz", viz, "Colormap PNG output");
    match->add_option("--trace", trace, "Per-scale trace JSON output");
    add_config_flags(match, match_flags);

    std::string pred, gt, eval_json, eval_csv;
    bool quadratic = false;
    auto* eval = app.add_subcommand("eval", "Compare a disparity map against ground truth");
    eval->add_option("pred", pred, "Predicted disparity (.pfm or KITTI .png)")->required();
    eval->add_option("gt", gt, "Ground truth disparity")->required();
    eval->add_flag("--quadratic", quadratic, "Use the quadratic smooth-L1 branch");
    eval->add_option("--out", eval_json, "JSON report output");
    eval->add_option("--csv", eval_csv, "CSV report output");

    ConfigFlags bench_flags;
    std::string resolutions = "KITTI,HD,4K", bench_csv_out;
    icfr::BenchOptions bench_opts;
    auto* bench = app.add_subcommand("bench", "Time the pipeline on synthetic pairs at several resolutions");
    bench->add_option("--resolutions", resolutions, "Comma list of KITTI, HD, 4K or WxH");
    bench->add_option("--repetitions", bench_opts.repetitions, "Timed runs per resolution")->check(CLI::PositiveNumber);
    bench->add_option("--warmup", bench_opts.warmup, "Untimed warm-up runs")->check(CLI::NonNegativeNumber);
    bench->add_option("--seed", bench_opts.seed, "Scene seed");
    bench->add_option("--csv", bench_csv_out, "CSV output");
    add_config_flags(bench, bench_flags);

    std::string kind = "constant", size = "384x384", synth_out = ".";
    float far = 20.0f, near = 40.0f, contrast = 0.3f;
    std::uint64_t seed = 7;
    auto* synth = app.add_subcommand("synth", "Generate a random-dot stereo pair with ground truth");
    synth->add_option("--kind", kind, "Scene kind")
        ->check(CLI::IsMember({"constant", "two-plane", "ramp", "step-occlusion"}));
    synth->add_option("--size", size, "WxH");
    synth->add_option("--far", far, "Background disparity (constant disparity for 'constant')");
    synth->add_option("--near", near, "Foreground disparity");
    synth->add_option("--contrast", contrast, "Brightness offset of the near surface");
    synth->add_option("--seed", seed, "Random seed");
    synth->add_option("--out", synth_out, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        icfr::set_thread_count(threads);
        if (*match) return cmd_match(left, right, match_flags, outs, viz, trace);
        if (*eval) return cmd_eval(pred, gt, quadratic, eval_json, eval_csv);
        if (*bench) return cmd_bench(resolutions, bench_flags, bench_opts, bench_csv_out);
        if (*synth) return cmd_synth(kind, size, far, near, contrast, seed, synth_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
