#ifndef GRIDEX_SIGNAL_HPP
#define GRIDEX_SIGNAL_HPP

#include <vector>

#include "gridex/mask.hpp"

namespace gridex {

// Non-negative 1-D signal over bins. Normalized variants carry unit mass.
struct DensitySignal {
    std::vector<double> bins;

    double mass() const;
    std::size_t size() const { return bins.size(); }
    double operator[](std::size_t i) const { return bins[i]; }
};

struct RawHistogram {
    std::vector<std::int64_t> bins;
    std::int64_t total = 0;
};

// Transition indices of one scan line: x with m(x) != m(x+1), 0-based,
// each in [0, W-2].
struct TransitionScan {
    int y = 0;
    std::vector<int> transitions;
};

// Which consecutive-transition intervals contribute midpoints.
// AllIntervals follows the accumulation formula literally; OnRuns keeps
// only intervals whose enclosed mask values are 1 (band centers for
// column-region masks), OffRuns only the gaps.
enum class IntervalSelection { AllIntervals, OnRuns, OffRuns };

TransitionScan scan_transitions(const Mask& mask, int y);

// Midpoints (x_i + x_{i+1}) / 2 of selected consecutive transition
// pairs; half-integers.
std::vector<double> interval_midpoints(const TransitionScan& scan,
                                       std::span<const std::uint8_t> mask_row,
                                       IntervalSelection selection);

// Floor-binned midpoint counts across all scan lines.
RawHistogram accumulate_histogram(const Mask& mask, IntervalSelection selection);

// Throws DomainError when total is zero ("no structural transitions in mask").
DensitySignal normalize(const RawHistogram& hist);

// Convolve with a unit-mass Gaussian of width epsilon truncated at
// +-4*epsilon, then renormalize.
DensitySignal smooth_initial(const DensitySignal& f0, double epsilon);

} // namespace gridex

#endif
