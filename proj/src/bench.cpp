#include "gridex/bench.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gridex/errors.hpp"
#include "gridex/evaluate.hpp"
#include "gridex/jsonio.hpp"
#include "gridex/pipeline.hpp"
#include "gridex/rng.hpp"

namespace gridex {

namespace {

constexpr int kImageSize = 1024;

std::uint64_t instance_seed(std::uint64_t base, int suite, int index) {
    return base + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(suite) * 4096 + index + 1);
}

PipelineConfig band_pipeline_config() {
    PipelineConfig config;
    // band masks carry column regions; on-run midpoints are band centers
    config.intervals = IntervalSelection::OnRuns;
    config.semantics = RegionSemantics::Centers;
    return config;
}

// Near-uniform column layout: the jitter keeps adjacent region widths
// within 12 px of each other so midpoint cuts stay within a few px of
// the true separators.
GridSpec draw_boundary_grid(Rng& rng, int& h_out) {
    GridSpec grid;
    grid.image_width = grid.image_height = kImageSize;
    const int n = static_cast<int>(rng.uniform_int(2, 8));
    const double margin = rng.uniform(20.0, 80.0);
    const double region = (kImageSize - 2.0 * margin) / n;
    const int h_max = std::min(60, static_cast<int>(region / 2.0) - 15);
    const int h = static_cast<int>(rng.uniform_int(20, std::max(20, h_max)));
    grid.band_half_width = h;
    for (int i = 0; i <= n; ++i)
        grid.column_boundaries.push_back(margin + i * region + rng.uniform(-3.0, 3.0));
    h_out = h;
    return grid;
}

nlohmann::json run_boundary_suite(const BenchConfig& config) {
    nlohmann::json instances = nlohmann::json::array();
    int total_matched = 0, total_truth = 0, total_predicted = 0;
    double abs_err_sum = 0.0;

    for (int i = 0; i < config.boundary_instances; ++i) {
        const std::uint64_t seed = instance_seed(config.base_seed, 1, i);
        Rng rng(seed);
        int h = 0;
        const GridSpec grid = draw_boundary_grid(rng, h);
        NoiseSpec noise;
        noise.flip_probability = rng.uniform(0.0, config.boundary_flip_max);
        noise.dropout_probability = rng.uniform(0.0, config.boundary_dropout_max);
        noise.seed = rng.raw();

        const auto synth = synth_mask(grid, noise);
        const std::vector<double> truth(grid.column_boundaries.begin() + 1,
                                        grid.column_boundaries.end() - 1);

        nlohmann::json inst = {{"id", i},
                               {"seed", seed},
                               {"columns", static_cast<int>(grid.column_boundaries.size()) - 1},
                               {"band_half_width", h},
                               {"flip_probability", noise.flip_probability},
                               {"dropout_probability", noise.dropout_probability}};
        std::vector<double> cuts;
        try {
            const auto result = run_pipeline(synth.mask, band_pipeline_config());
            cuts = boundaries_to_regions(result.boundaries, kImageSize,
                                         RegionSemantics::Centers)
                       .cuts;
            inst["peaks"] = result.trace.final_peaks.size();
        } catch (const DomainError& e) {
            inst["error"] = e.what();
        }
        const auto rec = boundary_recovery(cuts, truth, config.boundary_tolerance_px);
        total_matched += rec.matched;
        total_truth += static_cast<int>(truth.size());
        total_predicted += static_cast<int>(cuts.size());
        abs_err_sum += rec.mae * rec.matched;
        inst["predicted"] = cuts;
        inst["truth"] = truth;
        inst["precision"] = rec.precision;
        inst["recall"] = rec.recall;
        inst["mae"] = rec.mae;
        instances.push_back(std::move(inst));
    }

    nlohmann::json aggregate = {
        {"recall", total_truth ? static_cast<double>(total_matched) / total_truth : 0.0},
        {"precision",
         total_predicted ? static_cast<double>(total_matched) / total_predicted : 0.0},
        {"mae", total_matched ? abs_err_sum / total_matched : 0.0},
        {"matched", total_matched},
        {"truth_boundaries", total_truth},
        {"predicted_boundaries", total_predicted}};
    return {{"instances", instances}, {"aggregate", aggregate}};
}

struct CasaInstance {
    GridSpec grid;
    NoiseSpec noise;
    std::vector<WordBox> words;
    std::vector<GroundTruthCell> cells;
    int columns = 0, rows = 0;
};

CasaInstance draw_casa_instance(Rng& rng, const BenchConfig& config) {
    CasaInstance inst;
    // 4+ columns: with fewer, the cumulative width drift is too small
    // for an equal split to misplace any band center
    inst.columns = static_cast<int>(rng.uniform_int(4, 6));
    inst.rows = static_cast<int>(rng.uniform_int(2, 6));
    const double margin = rng.uniform(30.0, 80.0);
    const double extent = kImageSize - 2.0 * margin;

    // strongly non-uniform widths, redrawn until an equal-width split
    // would drop at least one column center into the wrong interval by
    // more than the word-placement jitter (0.4 x band half width)
    std::vector<double> widths(inst.columns);
    for (int attempt = 0;; ++attempt) {
        double sum = 0.0;
        for (auto& w : widths) sum += (w = rng.uniform(0.55, 1.7));
        for (auto& w : widths) w *= extent / sum;
        const auto [lo, hi] = std::minmax_element(widths.begin(), widths.end());
        const double bh = std::clamp(*lo / 2.0 - 15.0, 12.0, 60.0);
        const double unit = extent / inst.columns;
        bool misplaced = false;
        double x = 0.0;
        for (int c = 0; c < inst.columns; ++c) {
            const double center = x + widths[c] / 2.0;
            const double overshoot =
                std::max(c * unit - center, center - (c + 1) * unit);
            if (overshoot > 0.4 * bh + 1.0) misplaced = true;
            x += widths[c];
        }
        if ((*hi / *lo >= 1.8 && misplaced) || attempt > 64) break;
    }

    inst.grid.image_width = inst.grid.image_height = kImageSize;
    double x = margin;
    inst.grid.column_boundaries.push_back(x);
    double min_region = extent;
    for (double w : widths) {
        x += w;
        inst.grid.column_boundaries.push_back(x);
        min_region = std::min(min_region, w);
    }
    inst.grid.band_half_width =
        std::clamp(static_cast<int>(min_region / 2.0) - 15, 12, 60);

    inst.noise.flip_probability = rng.uniform(0.0, config.casa_flip_max);
    inst.noise.dropout_probability = rng.uniform(0.0, config.casa_dropout_max);
    inst.noise.seed = rng.raw();

    const double row_height = (kImageSize - 2.0 * margin) / inst.rows;
    for (int r = 0; r < inst.rows; ++r) {
        const double row_top = margin + r * row_height;
        const double content_top = row_top + 0.25 * row_height;
        const double content_h = 0.5 * row_height;
        for (int c = 0; c < inst.columns; ++c) {
            const double band_center =
                (inst.grid.column_boundaries[c] + inst.grid.column_boundaries[c + 1]) / 2.0;
            const double band_half = inst.grid.band_half_width;
            GroundTruthCell cell;
            cell.row_index = r;
            cell.col_index = c;
            cell.x_min = inst.grid.column_boundaries[c];
            cell.x_max = inst.grid.column_boundaries[c + 1];
            cell.y_min = row_top;
            cell.y_max = row_top + row_height;

            const int word_count = static_cast<int>(rng.uniform_int(1, 2));
            for (int k = 0; k < word_count; ++k) {
                WordBox word;
                word.text = "r" + std::to_string(r) + "c" + std::to_string(c) + "w" +
                            std::to_string(k);
                const double width = std::max(8.0, 1.2 * band_half);
                const double slack = std::max(0.0, 2.0 * band_half - width);
                const double x_lo = band_center - band_half + rng.uniform(0.0, slack);
                word.x_min = x_lo;
                word.x_max = x_lo + width;
                const double word_h = 0.6 * content_h;
                const double y_lo =
                    content_top + rng.uniform(0.0, content_h - word_h);
                word.y_min = y_lo;
                word.y_max = y_lo + word_h;
                cell.words.push_back(word.text);
                inst.words.push_back(std::move(word));
            }
            inst.cells.push_back(std::move(cell));
        }
    }
    return inst;
}

double casa_for_columns(const CasaInstance& inst, const std::vector<double>& column_cuts,
                        const AxisPartition& rows) {
    RegionPartition partition;
    partition.columns.extent = kImageSize;
    partition.columns.cuts = column_cuts;
    partition.rows = rows;
    const auto assignments = assign_words_to_cells(inst.words, partition);
    return casa(inst.words, assignments, inst.cells).casa_percent;
}

nlohmann::json run_casa_suite(const BenchConfig& config) {
    nlohmann::json instances = nlohmann::json::array();
    int improved = 0, valid = 0;
    double sum_pipeline = 0.0, sum_naive = 0.0;

    for (int i = 0; i < config.casa_instances; ++i) {
        const std::uint64_t seed = instance_seed(config.base_seed, 2, i);
        Rng rng(seed);
        const CasaInstance inst = draw_casa_instance(rng, config);
        const auto synth = synth_mask(inst.grid, inst.noise);

        nlohmann::json record = {{"id", i},
                                 {"seed", seed},
                                 {"columns", inst.columns},
                                 {"rows", inst.rows},
                                 {"flip_probability", inst.noise.flip_probability},
                                 {"dropout_probability", inst.noise.dropout_probability}};

        const auto row_bounds = infer_rows_from_words(inst.words, 0.6);
        const auto row_partition =
            boundaries_to_regions(row_bounds, kImageSize, RegionSemantics::Separators);

        std::vector<double> pipeline_cuts;
        try {
            const auto result = run_pipeline(synth.mask, band_pipeline_config());
            pipeline_cuts = boundaries_to_regions(result.boundaries, kImageSize,
                                                  RegionSemantics::Centers)
                                .cuts;
        } catch (const DomainError& e) {
            record["error"] = e.what();
        }

        // equal-width baseline over the true table extent, same count
        std::vector<double> naive_cuts;
        const double lo = inst.grid.column_boundaries.front();
        const double hi = inst.grid.column_boundaries.back();
        for (int k = 1; k < inst.columns; ++k)
            naive_cuts.push_back(lo + k * (hi - lo) / inst.columns);

        const double casa_pipeline = casa_for_columns(inst, pipeline_cuts, row_partition);
        const double casa_naive = casa_for_columns(inst, naive_cuts, row_partition);
        record["casa_pipeline"] = casa_pipeline;
        record["casa_naive"] = casa_naive;
        record["improved"] = casa_pipeline > casa_naive;
        if (casa_pipeline > casa_naive) ++improved;
        ++valid;
        sum_pipeline += casa_pipeline;
        sum_naive += casa_naive;
        instances.push_back(std::move(record));
    }

    nlohmann::json aggregate = {
        {"improved_fraction", valid ? static_cast<double>(improved) / valid : 0.0},
        {"mean_casa_pipeline", valid ? sum_pipeline / valid : 0.0},
        {"mean_casa_naive", valid ? sum_naive / valid : 0.0}};
    return {{"instances", instances}, {"aggregate", aggregate}};
}

} // namespace

BenchConfig BenchConfig::from_json(const nlohmann::json& j) {
    BenchConfig c;
    c.base_seed = j.value("base_seed", c.base_seed);
    c.boundary_instances = j.value("boundary_instances", c.boundary_instances);
    c.boundary_flip_max = j.value("boundary_flip_max", c.boundary_flip_max);
    c.boundary_dropout_max = j.value("boundary_dropout_max", c.boundary_dropout_max);
    c.boundary_tolerance_px = j.value("boundary_tolerance_px", c.boundary_tolerance_px);
    c.casa_instances = j.value("casa_instances", c.casa_instances);
    c.casa_flip_max = j.value("casa_flip_max", c.casa_flip_max);
    c.casa_dropout_max = j.value("casa_dropout_max", c.casa_dropout_max);
    return c;
}

nlohmann::json BenchConfig::to_json() const {
    return {{"base_seed", base_seed},
            {"boundary_instances", boundary_instances},
            {"boundary_flip_max", boundary_flip_max},
            {"boundary_dropout_max", boundary_dropout_max},
            {"boundary_tolerance_px", boundary_tolerance_px},
            {"casa_instances", casa_instances},
            {"casa_flip_max", casa_flip_max},
            {"casa_dropout_max", casa_dropout_max}};
}

nlohmann::json run_bench(const BenchConfig& config) {
    return {{"config", config.to_json()},
            {"boundary_suite", run_boundary_suite(config)},
            {"casa_suite", run_casa_suite(config)}};
}

} // namespace gridex
