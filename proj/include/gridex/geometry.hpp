#ifndef GRIDEX_GEOMETRY_HPP
#define GRIDEX_GEOMETRY_HPP

#include <optional>
#include <string>
#include <vector>

#include "gridex/mask.hpp"

namespace gridex {

enum class Axis { Vertical, Horizontal };

// Peak coordinates mapped back to original-image pixels.
struct BoundarySet {
    Axis axis = Axis::Vertical;
    std::vector<double> coordinates;
    std::vector<int> source_bins;
    GeometryTransform transform;
    bool clamped = false; // any coordinate clipped to the image extent
};

struct WordBox {
    std::string text;
    double x_min = 0, y_min = 0, x_max = 0, y_max = 0;
    std::optional<double> confidence;

    double center_x() const { return (x_min + x_max) / 2.0; }
    double center_y() const { return (y_min + y_max) / 2.0; }
};

// Contiguous half-open intervals [cuts[i], cuts[i+1]) covering
// [0, extent) along one axis.
struct AxisPartition {
    double extent = 0.0;
    std::vector<double> cuts; // interior cut points, strictly increasing

    std::size_t interval_count() const { return cuts.size() + 1; }
    // Index of the interval containing x; x on a cut goes right/lower.
    std::size_t interval_of(double x) const;
};

struct RegionPartition {
    AxisPartition columns;
    AxisPartition rows;
};

// Whether peak coordinates denote the middles of structural regions or
// the gaps between them.
enum class RegionSemantics { Centers, Separators };

// coordinate = (bin + 0.5 - pad) * scale, clamped to the image extent.
BoundarySet peaks_to_coordinates(const std::vector<int>& peaks, const GeometryTransform& transform,
                                 Axis axis = Axis::Vertical);

AxisPartition boundaries_to_regions(const BoundarySet& bset, double extent,
                                    RegionSemantics semantics);

// Cluster words into text lines by vertical-overlap chaining, then emit
// a row boundary at the midpoint of every inter-line gap larger than
// gap_factor * median line height.
BoundarySet infer_rows_from_words(const std::vector<WordBox>& words, double gap_factor);

} // namespace gridex

#endif
