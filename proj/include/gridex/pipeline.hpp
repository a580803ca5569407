#ifndef GRIDEX_PIPELINE_HPP
#define GRIDEX_PIPELINE_HPP

#include <string>

#include "gridex/geometry.hpp"
#include "gridex/regularize.hpp"
#include "gridex/signal.hpp"

namespace gridex {

struct PipelineConfig {
    int binarize_threshold = 128;
    int target_width = 1024;
    int target_height = 1024;
    ResizeMode resize_mode = ResizeMode::Stretch;
    IntervalSelection intervals = IntervalSelection::AllIntervals;
    double epsilon = 1.0;
    IterationSchedule schedule = IterationSchedule::defaults();
    RegionSemantics semantics = RegionSemantics::Separators;
    double gap_factor = 0.6;
    double energy_lambda = 1.0;
    double energy_mu = 1.0;

    void validate() const;
};

struct ExtractionResult {
    RawHistogram histogram;
    DensitySignal initial;  // normalized midpoint density
    DensitySignal smoothed; // after epsilon kernel smoothing
    RegularizationTrace trace;
    BoundarySet boundaries;
    GeometryTransform transform;
};

// load -> resize -> accumulate -> normalize -> smooth -> iterate ->
// find_peaks -> peaks_to_coordinates.
ExtractionResult run_pipeline(const Mask& mask, const PipelineConfig& config);

// One CSV (bin,value) per stage plus summary.json with thresholds,
// peaks, and per-iterate energy diagnostics.
void write_trace(const ExtractionResult& result, const PipelineConfig& config,
                 const std::string& directory);

} // namespace gridex

#endif
