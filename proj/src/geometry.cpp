#include "gridex/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gridex/errors.hpp"

namespace gridex {

std::size_t AxisPartition::interval_of(double x) const {
    // first cut strictly greater than x; x on a cut goes right/lower
    const auto it = std::upper_bound(cuts.begin(), cuts.end(), x);
    return static_cast<std::size_t>(it - cuts.begin());
}

BoundarySet peaks_to_coordinates(const std::vector<int>& peaks, const GeometryTransform& transform,
                                 Axis axis) {
    BoundarySet out;
    out.axis = axis;
    out.transform = transform;
    out.source_bins = peaks;
    const double extent =
        axis == Axis::Vertical ? transform.original_width : transform.original_height;
    for (std::size_t i = 0; i < peaks.size(); ++i) {
        if (i > 0 && peaks[i] <= peaks[i - 1])
            throw InvalidArgument("peak bins must be strictly increasing");
        const double centered = peaks[i] + 0.5;
        double coord = axis == Axis::Vertical ? transform.to_original_x(centered)
                                              : transform.to_original_y(centered);
        if (coord < 0 || coord > extent) {
            coord = std::clamp(coord, 0.0, extent);
            out.clamped = true;
        }
        out.coordinates.push_back(coord);
    }
    return out;
}

AxisPartition boundaries_to_regions(const BoundarySet& bset, double extent,
                                    RegionSemantics semantics) {
    if (extent <= 0) throw InvalidArgument("partition extent must be positive");
    AxisPartition part;
    part.extent = extent;
    const auto& c = bset.coordinates;
    if (c.empty()) return part; // single full-extent interval
    if (semantics == RegionSemantics::Separators) {
        for (double v : c)
            if (v > 0 && v < extent) part.cuts.push_back(v);
    } else {
        // one interval per center: cut at the midpoint of consecutive centers
        for (std::size_t i = 0; i + 1 < c.size(); ++i)
            part.cuts.push_back((c[i] + c[i + 1]) / 2.0);
    }
    return part;
}

namespace {

struct TextLine {
    double y_min, y_max;
    double height() const { return y_max - y_min; }
    double center() const { return (y_min + y_max) / 2.0; }
};

bool lines_overlap(const TextLine& a, const TextLine& b) {
    const double overlap = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
    const double smaller = std::min(a.height(), b.height());
    return overlap >= 0.5 * smaller;
}

} // namespace

BoundarySet infer_rows_from_words(const std::vector<WordBox>& words, double gap_factor) {
    if (words.empty()) throw DomainError("no word boxes to infer rows from");
    if (gap_factor <= 0) throw InvalidArgument("gap_factor must be positive");
    for (const auto& w : words)
        if (!(w.x_min < w.x_max && w.y_min < w.y_max))
            throw InvalidArgument("degenerate word box");

    // chain words into lines by >= 50% vertical overlap with the growing
    // line interval; order-independent because intervals only grow
    std::vector<TextLine> lines;
    std::vector<WordBox> sorted = words;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const WordBox& a, const WordBox& b) {
                         if (a.y_min != b.y_min) return a.y_min < b.y_min;
                         return a.x_min < b.x_min;
                     });
    for (const auto& w : sorted) {
        const TextLine box{w.y_min, w.y_max};
        bool placed = false;
        for (auto& line : lines) {
            if (lines_overlap(line, box)) {
                line.y_min = std::min(line.y_min, box.y_min);
                line.y_max = std::max(line.y_max, box.y_max);
                placed = true;
                break;
            }
        }
        if (!placed) lines.push_back(box);
    }
    std::sort(lines.begin(), lines.end(),
              [](const TextLine& a, const TextLine& b) { return a.center() < b.center(); });

    std::vector<double> heights;
    heights.reserve(lines.size());
    for (const auto& line : lines) heights.push_back(line.height());
    std::sort(heights.begin(), heights.end());
    const std::size_t n = heights.size();
    const double median_height =
        n % 2 == 1 ? heights[n / 2] : (heights[n / 2 - 1] + heights[n / 2]) / 2.0;

    BoundarySet out;
    out.axis = Axis::Horizontal;
    for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
        const double gap = lines[i + 1].y_min - lines[i].y_max;
        if (gap > gap_factor * median_height)
            out.coordinates.push_back((lines[i].y_max + lines[i + 1].y_min) / 2.0);
    }
    return out;
}

} // namespace gridex
