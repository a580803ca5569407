#include "gridex/pipeline.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "gridex/errors.hpp"
#include "gridex/jsonio.hpp"

namespace gridex {

void PipelineConfig::validate() const {
    if (binarize_threshold < 0 || binarize_threshold > 255)
        throw InvalidArgument("binarize threshold must be in [0, 255]");
    if (target_width < 1 || target_height < 1)
        throw InvalidArgument("resize targets must be positive");
    if (epsilon <= 0) throw InvalidArgument("epsilon must be positive");
    if (gap_factor <= 0) throw InvalidArgument("gap_factor must be positive");
    if (energy_lambda < 0 || energy_mu < 0)
        throw InvalidArgument("energy weights must be non-negative");
    schedule.validate();
}

ExtractionResult run_pipeline(const Mask& mask, const PipelineConfig& config) {
    config.validate();
    ExtractionResult result;
    auto [resized, transform] =
        resize_mask(mask, config.target_width, config.target_height, config.resize_mode);
    result.transform = transform;
    result.histogram = accumulate_histogram(resized, config.intervals);
    result.initial = normalize(result.histogram);
    result.smoothed = smooth_initial(result.initial, config.epsilon);
    result.trace = iterate(result.smoothed, config.schedule);
    result.boundaries = peaks_to_coordinates(result.trace.final_peaks, transform, Axis::Vertical);
    return result;
}

namespace {

void write_signal_csv(const std::filesystem::path& path, const std::vector<double>& bins) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "bin,value\n";
    out.precision(17);
    for (std::size_t i = 0; i < bins.size(); ++i) out << i << "," << bins[i] << "\n";
}

} // namespace

void write_trace(const ExtractionResult& result, const PipelineConfig& config,
                 const std::string& directory) {
    namespace fs = std::filesystem;
    const fs::path dir(directory);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create trace directory " + directory);

    {
        std::ofstream out(dir / "histogram.csv");
        if (!out) throw IoError("cannot write histogram.csv");
        out << "bin,value\n";
        for (std::size_t i = 0; i < result.histogram.bins.size(); ++i)
            out << i << "," << result.histogram.bins[i] << "\n";
    }
    write_signal_csv(dir / "density.csv", result.initial.bins);
    write_signal_csv(dir / "smoothed.csv", result.smoothed.bins);
    for (std::size_t n = 1; n < result.trace.iterates.size(); ++n)
        write_signal_csv(dir / ("iterate_" + std::to_string(n) + ".csv"),
                         result.trace.iterates[n].bins);

    nlohmann::json summary;
    summary["thresholds_applied"] = result.trace.thresholds_applied;
    summary["peak_bins"] = result.trace.final_peaks;
    summary["boundaries"] = to_json(result.boundaries);
    auto& energies = summary["energy"] = nlohmann::json::array();
    const auto& f0 = result.trace.iterates.front();
    for (std::size_t n = 1; n < result.trace.iterates.size(); ++n) {
        const auto diag = energy(result.trace.iterates[n], f0,
                                 result.trace.thresholds_applied[n - 1], config.energy_lambda,
                                 config.energy_mu);
        energies.push_back({{"iteration", n},
                            {"kl", diag.kl_term},
                            {"entropy", diag.entropy_term},
                            {"penalty", diag.penalty_term},
                            {"total", diag.total},
                            {"support_violation", diag.support_violation}});
    }
    write_file((dir / "summary.json").string(), summary.dump(2) + "\n");
}

} // namespace gridex
