// gridex command-line front end. Talks to the core exclusively through
// the C API; structured I/O is JSON on stdout or --out files.
//
// Exit codes: 0 success, 1 I/O error, 2 domain error, 3 usage error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gridex.h"

namespace {

using nlohmann::json;

int status_to_exit(gx_status status) {
    switch (status) {
        case GX_OK: return 0;
        case GX_ERR_IO: return 1;
        case GX_ERR_DOMAIN: return 2;
        default: return 3;
    }
}

int fail(gx_status status) {
    json err = {{"error", gx_last_error()}, {"code", static_cast<int>(status)}};
    std::cout << err.dump(2) << std::endl;
    return status_to_exit(status);
}

std::string read_file_or_die(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        json err = {{"error", "cannot open " + path}, {"code", static_cast<int>(GX_ERR_IO)}};
        std::cout << err.dump(2) << std::endl;
        std::exit(1);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int write_output(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content << std::endl;
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    out << content;
    if (!out) {
        std::cerr << "gridex: cannot write " << out_path << "\n";
        return 1;
    }
    return 0;
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
    return values;
}

struct StringGuard {
    char* ptr = nullptr;
    ~StringGuard() { gx_string_free(ptr); }
};

// Shared pipeline flags, layered over an optional config file
// (--config or $GRIDEX_CONFIG).
struct PipelineFlags {
    std::string config_path;
    int binarize = 128;
    std::string resize = "1024x1024";
    std::string resize_mode = "stretch";
    std::string intervals = "all";
    double epsilon = 1.0;
    int iters = 2;
    std::string theta_mult;
    std::string sigma;
    std::string semantics;
    double gap_factor = 0.6;

    CLI::Option *opt_binarize{}, *opt_resize{}, *opt_resize_mode{}, *opt_intervals{},
        *opt_epsilon{}, *opt_iters{}, *opt_theta{}, *opt_sigma{}, *opt_semantics{},
        *opt_gap{};

    void attach(CLI::App* app) {
        app->add_option("--config", config_path, "pipeline config JSON file");
        opt_binarize = app->add_option("--binarize", binarize, "binarize threshold (0-255)");
        opt_resize = app->add_option("--resize", resize, "processing size WxH");
        opt_resize_mode = app->add_option("--resize-mode", resize_mode)
                              ->check(CLI::IsMember({"stretch", "pad"}));
        opt_intervals = app->add_option("--intervals", intervals,
                                        "which transition intervals accumulate midpoints")
                            ->check(CLI::IsMember({"all", "on", "off"}));
        opt_epsilon = app->add_option("--epsilon", epsilon, "initial smoothing width in bins");
        opt_iters = app->add_option("--iters", iters, "iteration count");
        opt_theta = app->add_option("--theta-mult", theta_mult,
                                    "comma-separated threshold multipliers");
        opt_sigma = app->add_option("--sigma", sigma, "comma-separated kernel sigmas");
        opt_semantics = app->add_option("--semantics", semantics,
                                        "peaks denote region centers or separators")
                            ->check(CLI::IsMember({"centers", "separators"}));
        opt_gap = app->add_option("--gap-factor", gap_factor, "row-inference gap factor");
    }

    json build_config() const {
        json config = json::object();
        std::string base_path = config_path;
        if (base_path.empty())
            if (const char* env = std::getenv("GRIDEX_CONFIG")) base_path = env;
        if (!base_path.empty()) config = json::parse(read_file_or_die(base_path));

        if (*opt_binarize) config["binarize"] = binarize;
        if (*opt_resize || *opt_resize_mode) {
            int w = 1024, h = 1024;
            if (std::sscanf(resize.c_str(), "%dx%d", &w, &h) != 2) {
                std::cerr << "gridex: bad --resize, expected WxH\n";
                std::exit(3);
            }
            config["resize"] = {{"width", w}, {"height", h}, {"mode", resize_mode}};
        }
        if (*opt_intervals) config["intervals"] = intervals;
        if (*opt_epsilon) config["epsilon"] = epsilon;
        if (*opt_theta || *opt_sigma || *opt_iters) {
            auto mults = parse_list(theta_mult.empty() ? "1.5,1.0" : theta_mult);
            auto sigmas = parse_list(sigma.empty() ? "5,7" : sigma);
            const std::size_t n = *opt_iters ? static_cast<std::size_t>(iters)
                                             : std::max(mults.size(), sigmas.size());
            if (mults.size() != n || sigmas.size() != n) {
                std::cerr << "gridex: --iters, --theta-mult and --sigma disagree on length\n";
                std::exit(3);
            }
            json schedule = json::array();
            for (std::size_t i = 0; i < n; ++i)
                schedule.push_back({{"theta_mult", mults[i]}, {"sigma", sigmas[i]}});
            config["schedule"] = schedule;
        }
        if (*opt_semantics) {
            config["semantics"] = semantics;
        } else if (*opt_intervals && !config.contains("semantics")) {
            // pair selection with semantics: on-runs yield region centers
            config["semantics"] = intervals == "on" ? "centers" : "separators";
        }
        if (*opt_semantics && *opt_intervals) {
            const bool centers = semantics == "centers";
            if (centers != (intervals == "on"))
                std::cerr << "gridex: warning: --intervals " << intervals << " with --semantics "
                          << semantics << " is an unusual pairing\n";
        }
        if (*opt_gap) config["gap_factor"] = gap_factor;
        return config;
    }
};

int cmd_extract(const std::string& mask_path, const PipelineFlags& flags,
                const std::string& trace_dir, const std::string& out_path) {
    const json config = flags.build_config();
    gx_mask* mask = nullptr;
    gx_status status =
        gx_mask_load(mask_path.c_str(), config.value("binarize", 128), &mask);
    if (status != GX_OK) return fail(status);
    std::unique_ptr<gx_mask, decltype(&gx_mask_free)> mask_guard(mask, gx_mask_free);

    gx_result* result = nullptr;
    status = gx_extract(mask, config.dump().c_str(), &result);
    if (status != GX_OK) return fail(status);
    std::unique_ptr<gx_result, decltype(&gx_result_free)> result_guard(result, gx_result_free);

    if (!trace_dir.empty()) {
        status = gx_result_write_trace(result, trace_dir.c_str());
        if (status != GX_OK) return fail(status);
    }
    StringGuard boundaries;
    status = gx_result_boundaries_json(result, &boundaries.ptr);
    if (status != GX_OK) return fail(status);
    return write_output(boundaries.ptr, out_path);
}

int cmd_synth(const std::string& grid_path, const std::string& noise_path,
              const std::string& mask_out, const std::string& truth_out, long long seed,
              bool seed_given) {
    const std::string grid = read_file_or_die(grid_path);
    json noise = json::object();
    if (!noise_path.empty()) noise = json::parse(read_file_or_die(noise_path));
    if (seed_given) noise["seed"] = seed;

    gx_mask* mask = nullptr;
    StringGuard truth;
    gx_status status = gx_synth_mask(grid.c_str(), noise.dump().c_str(), &mask, &truth.ptr);
    if (status != GX_OK) return fail(status);
    std::unique_ptr<gx_mask, decltype(&gx_mask_free)> mask_guard(mask, gx_mask_free);

    status = gx_mask_save_pgm(mask, mask_out.c_str());
    if (status != GX_OK) return fail(status);
    return write_output(truth.ptr, truth_out);
}

int cmd_eval(const std::string& boundaries_path, const std::string& words_path,
             const std::string& truth_path, const PipelineFlags& flags,
             const std::string& out_path) {
    const std::string boundaries = read_file_or_die(boundaries_path);
    const std::string words = read_file_or_die(words_path);
    const std::string truth = read_file_or_die(truth_path);
    StringGuard report;
    gx_status status = gx_eval_casa(boundaries.c_str(), words.c_str(), truth.c_str(),
                                    flags.build_config().dump().c_str(), &report.ptr);
    if (status != GX_OK) return fail(status);
    return write_output(report.ptr, out_path);
}

int cmd_bench(const std::string& suite_path, long long seed, bool seed_given,
              const std::string& out_path) {
    json suite = json::object();
    if (!suite_path.empty()) suite = json::parse(read_file_or_die(suite_path));
    if (seed_given) suite["base_seed"] = seed;
    StringGuard results;
    gx_status status = gx_bench(suite.dump().c_str(), &results.ptr);
    if (status != GX_OK) return fail(status);
    return write_output(results.ptr, out_path);
}

int cmd_synth_density(const std::string& mixture_path, const std::string& noise_path,
                      const std::string& out_path) {
    const std::string mixture = read_file_or_die(mixture_path);
    std::string noise;
    if (!noise_path.empty()) noise = read_file_or_die(noise_path);
    StringGuard csv;
    gx_status status =
        gx_synth_density(mixture.c_str(), noise.empty() ? nullptr : noise.c_str(), &csv.ptr);
    if (status != GX_OK) return fail(status);
    return write_output(csv.ptr, out_path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"table boundary extraction from segmentation masks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(gx_version()));

    // extract
    auto* extract = app.add_subcommand("extract", "extract boundary coordinates from a mask");
    std::string mask_path, trace_dir, out_path;
    extract->add_option("mask", mask_path, "PNG or PGM mask file")->required();
    PipelineFlags extract_flags;
    extract_flags.attach(extract);
    extract->add_option("--trace", trace_dir, "dump per-stage signals into this directory");
    extract->add_option("--out", out_path, "write boundaries JSON here instead of stdout");

    // synth
    auto* synth = app.add_subcommand("synth", "generate a synthetic mask plus ground truth");
    std::string grid_path, noise_path, synth_mask_out = "mask.pgm", synth_truth_out;
    long long seed = 0;
    synth->add_option("--grid", grid_path, "GridSpec JSON")->required();
    synth->add_option("--noise", noise_path, "NoiseSpec JSON");
    auto* seed_opt = synth->add_option("--seed", seed, "override the noise seed");
    synth->add_option("--out-mask", synth_mask_out, "output PGM path");
    synth->add_option("--out-truth", synth_truth_out, "output truth JSON path");

    // eval
    auto* eval = app.add_subcommand("eval", "cell-aware segmentation accuracy");
    std::string boundaries_path, words_path, truth_path, eval_out;
    eval->add_option("--boundaries", boundaries_path, "boundaries JSON")->required();
    eval->add_option("--words", words_path, "word boxes JSONL")->required();
    eval->add_option("--truth", truth_path, "ground-truth cells JSON")->required();
    PipelineFlags eval_flags;
    eval_flags.attach(eval);
    eval->add_option("--out", eval_out, "write the report here instead of stdout");

    // bench
    auto* bench = app.add_subcommand("bench", "run the seeded synthetic benchmark suites");
    std::string suite_path, bench_out;
    long long bench_seed = 0;
    bench->add_option("--suite", suite_path, "suite config JSON");
    auto* bench_seed_opt = bench->add_option("--seed", bench_seed, "override base seed");
    bench->add_option("--out", bench_out, "write results JSON here instead of stdout");

    // synth-density
    auto* density = app.add_subcommand("synth-density", "discretize a Gaussian mixture");
    std::string mixture_path, density_noise_path, density_out;
    density->add_option("--mixture", mixture_path, "MixtureSpec JSON")->required();
    density->add_option("--noise", density_noise_path, "DensityNoiseSpec JSON");
    density->add_option("--out", density_out, "write CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 3;
    }

    if (extract->parsed()) return cmd_extract(mask_path, extract_flags, trace_dir, out_path);
    if (synth->parsed())
        return cmd_synth(grid_path, noise_path, synth_mask_out, synth_truth_out, seed,
                         seed_opt->count() > 0);
    if (eval->parsed())
        return cmd_eval(boundaries_path, words_path, truth_path, eval_flags, eval_out);
    if (bench->parsed())
        return cmd_bench(suite_path, bench_seed, bench_seed_opt->count() > 0, bench_out);
    if (density->parsed())
        return cmd_synth_density(mixture_path, density_noise_path, density_out);
    return 3;
}
