#include "gridex.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "gridex/bench.hpp"
#include "gridex/errors.hpp"
#include "gridex/evaluate.hpp"
#include "gridex/jsonio.hpp"
#include "gridex/pipeline.hpp"
#include "gridex/synth.hpp"

struct gx_mask {
    gridex::Mask mask;
};

struct gx_result {
    gridex::ExtractionResult result;
    gridex::PipelineConfig config;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
gx_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return GX_OK;
    } catch (const gridex::IoError& e) {
        g_last_error = e.what();
        return GX_ERR_IO;
    } catch (const gridex::DomainError& e) {
        g_last_error = e.what();
        return GX_ERR_DOMAIN;
    } catch (const gridex::InvalidArgument& e) {
        g_last_error = e.what();
        return GX_ERR_INVALID;
    } catch (const nlohmann::json::exception& e) {
        g_last_error = e.what();
        return GX_ERR_INVALID;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return GX_ERR_INTERNAL;
    }
}

nlohmann::json parse_object(const char* json, const char* what) {
    if (!json || !*json) return nlohmann::json::object();
    const auto parsed = nlohmann::json::parse(json, nullptr, false);
    if (parsed.is_discarded())
        throw gridex::InvalidArgument(std::string("malformed JSON for ") + what);
    return parsed;
}

gridex::PipelineConfig config_from(const char* config_json) {
    return gridex::pipeline_config_from_json(parse_object(config_json, "pipeline config"));
}

} // namespace

extern "C" {

const char* gx_version(void) { return "0.1.0"; }

const char* gx_last_error(void) { return g_last_error.c_str(); }

void gx_string_free(char* s) { std::free(s); }

gx_status gx_mask_load(const char* path, int binarize_threshold, gx_mask** out) {
    return guarded([&] {
        if (!path || !out) throw gridex::InvalidArgument("null argument");
        *out = new gx_mask{gridex::load_mask_file(path, binarize_threshold)};
    });
}

gx_status gx_mask_from_bytes(const uint8_t* data, size_t len, int binarize_threshold,
                             gx_mask** out) {
    return guarded([&] {
        if (!data || !out) throw gridex::InvalidArgument("null argument");
        *out = new gx_mask{gridex::load_mask({data, len}, binarize_threshold)};
    });
}

gx_status gx_mask_from_pixels(const uint8_t* pixels, int width, int height, gx_mask** out) {
    return guarded([&] {
        if (!pixels || !out) throw gridex::InvalidArgument("null argument");
        if (width < 1 || height < 1)
            throw gridex::InvalidArgument("mask dimensions must be positive");
        gridex::Mask mask(height, width);
        for (std::size_t i = 0; i < mask.cells.size(); ++i)
            mask.cells[i] = pixels[i] ? 1 : 0;
        *out = new gx_mask{std::move(mask)};
    });
}

gx_status gx_mask_save_pgm(const gx_mask* mask, const char* path) {
    return guarded([&] {
        if (!mask || !path) throw gridex::InvalidArgument("null argument");
        gridex::save_mask_pgm(mask->mask, path);
    });
}

gx_status gx_mask_transpose(const gx_mask* mask, gx_mask** out) {
    return guarded([&] {
        if (!mask || !out) throw gridex::InvalidArgument("null argument");
        *out = new gx_mask{gridex::transpose(mask->mask)};
    });
}

int gx_mask_width(const gx_mask* mask) { return mask ? mask->mask.width : 0; }

int gx_mask_height(const gx_mask* mask) { return mask ? mask->mask.height : 0; }

void gx_mask_free(gx_mask* mask) { delete mask; }

gx_status gx_extract(const gx_mask* mask, const char* config_json, gx_result** out) {
    return guarded([&] {
        if (!mask || !out) throw gridex::InvalidArgument("null argument");
        const auto config = config_from(config_json);
        *out = new gx_result{gridex::run_pipeline(mask->mask, config), config};
    });
}

gx_status gx_result_boundaries_json(const gx_result* result, char** json_out) {
    return guarded([&] {
        if (!result || !json_out) throw gridex::InvalidArgument("null argument");
        *json_out = dup_string(gridex::to_json(result->result.boundaries).dump(2));
        if (!*json_out) throw std::bad_alloc();
    });
}

gx_status gx_result_write_trace(const gx_result* result, const char* dir) {
    return guarded([&] {
        if (!result || !dir) throw gridex::InvalidArgument("null argument");
        gridex::write_trace(result->result, result->config, dir);
    });
}

int gx_result_peak_count(const gx_result* result) {
    return result ? static_cast<int>(result->result.trace.final_peaks.size()) : 0;
}

void gx_result_free(gx_result* result) { delete result; }

gx_status gx_synth_mask(const char* grid_json, const char* noise_json, gx_mask** mask_out,
                        char** truth_json_out) {
    return guarded([&] {
        if (!grid_json || !mask_out) throw gridex::InvalidArgument("null argument");
        const auto grid = gridex::grid_spec_from_json(parse_object(grid_json, "grid spec"));
        const auto noise = gridex::noise_spec_from_json(parse_object(noise_json, "noise spec"));
        auto synth = gridex::synth_mask(grid, noise);
        if (truth_json_out) {
            nlohmann::json truth = {{"column_boundaries", synth.truth_boundaries},
                                    {"grid", gridex::to_json(grid)}};
            *truth_json_out = dup_string(truth.dump(2));
            if (!*truth_json_out) throw std::bad_alloc();
        }
        *mask_out = new gx_mask{std::move(synth.mask)};
    });
}

gx_status gx_synth_density(const char* mixture_json, const char* noise_json, char** csv_out) {
    return guarded([&] {
        if (!mixture_json || !csv_out) throw gridex::InvalidArgument("null argument");
        const auto spec =
            gridex::mixture_spec_from_json(parse_object(mixture_json, "mixture spec"));
        auto f = gridex::discretize_mixture(spec);
        if (noise_json && *noise_json) {
            const auto noise =
                gridex::density_noise_spec_from_json(parse_object(noise_json, "noise spec"));
            f = gridex::add_noise(f, noise);
        }
        std::string csv = "bin,value\n";
        char buf[64];
        for (std::size_t i = 0; i < f.bins.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", i, f.bins[i]);
            csv += buf;
        }
        *csv_out = dup_string(csv);
        if (!*csv_out) throw std::bad_alloc();
    });
}

gx_status gx_eval_casa(const char* boundaries_json, const char* words_jsonl,
                       const char* truth_json, const char* config_json, char** report_json_out) {
    return guarded([&] {
        if (!boundaries_json || !words_jsonl || !truth_json || !report_json_out)
            throw gridex::InvalidArgument("null argument");
        const auto config = config_from(config_json);
        const auto bounds_doc = parse_object(boundaries_json, "boundaries");
        const auto words = gridex::word_boxes_from_jsonl(words_jsonl);
        const auto cells = gridex::ground_truth_from_json(parse_object(truth_json, "ground truth"));

        // boundaries may be a plain vertical BoundarySet or an object
        // {"columns": ..., "rows"?: ...}
        gridex::BoundarySet columns;
        std::optional<gridex::BoundarySet> rows;
        if (bounds_doc.contains("columns")) {
            columns = gridex::boundary_set_from_json(bounds_doc.at("columns"));
            if (bounds_doc.contains("rows"))
                rows = gridex::boundary_set_from_json(bounds_doc.at("rows"));
        } else {
            columns = gridex::boundary_set_from_json(bounds_doc);
        }

        double width = columns.transform.original_width;
        double height = columns.transform.original_height;
        for (const auto& w : words) {
            width = std::max(width, w.x_max);
            height = std::max(height, w.y_max);
        }
        for (const auto& c : cells) {
            width = std::max(width, c.x_max);
            height = std::max(height, c.y_max);
        }

        gridex::RegionPartition partition;
        partition.columns = gridex::boundaries_to_regions(columns, width, config.semantics);
        if (!rows) rows = gridex::infer_rows_from_words(words, config.gap_factor);
        partition.rows =
            gridex::boundaries_to_regions(*rows, height, gridex::RegionSemantics::Separators);

        const auto assignments = gridex::assign_words_to_cells(words, partition);
        const auto report = gridex::casa(words, assignments, cells);
        nlohmann::json out = gridex::to_json(report);
        out["partition"] = gridex::to_json(partition);
        *report_json_out = dup_string(out.dump(2));
        if (!*report_json_out) throw std::bad_alloc();
    });
}

gx_status gx_bench(const char* suite_config_json, char** results_json_out) {
    return guarded([&] {
        if (!results_json_out) throw gridex::InvalidArgument("null argument");
        const auto config =
            gridex::BenchConfig::from_json(parse_object(suite_config_json, "bench config"));
        *results_json_out = dup_string(gridex::run_bench(config).dump(2));
        if (!*results_json_out) throw std::bad_alloc();
    });
}

} // extern "C"
