#include "gridex/signal.hpp"

#include <cmath>
#include <numeric>

#include "gridex/errors.hpp"
#include "gridex/regularize.hpp"

namespace gridex {

double DensitySignal::mass() const {
    return std::accumulate(bins.begin(), bins.end(), 0.0);
}

TransitionScan scan_transitions(const Mask& mask, int y) {
    if (y < 0 || y >= mask.height)
        throw InvalidArgument("scan line index out of range: " + std::to_string(y));
    TransitionScan scan;
    scan.y = y;
    const auto row = mask.row(y);
    for (int x = 0; x + 1 < mask.width; ++x)
        if (row[x] != row[x + 1]) scan.transitions.push_back(x);
    return scan;
}

std::vector<double> interval_midpoints(const TransitionScan& scan,
                                       std::span<const std::uint8_t> mask_row,
                                       IntervalSelection selection) {
    std::vector<double> midpoints;
    const auto& t = scan.transitions;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        if (selection != IntervalSelection::AllIntervals) {
            // values strictly between consecutive transitions are constant
            const std::uint8_t enclosed = mask_row[static_cast<std::size_t>(t[i]) + 1];
            if (selection == IntervalSelection::OnRuns && enclosed != 1) continue;
            if (selection == IntervalSelection::OffRuns && enclosed != 0) continue;
        }
        midpoints.push_back((t[i] + t[i + 1]) / 2.0);
    }
    return midpoints;
}

RawHistogram accumulate_histogram(const Mask& mask, IntervalSelection selection) {
    RawHistogram hist;
    hist.bins.assign(mask.width, 0);
    for (int y = 0; y < mask.height; ++y) {
        const auto scan = scan_transitions(mask, y);
        for (double mid : interval_midpoints(scan, mask.row(y), selection)) {
            hist.bins[static_cast<std::size_t>(std::floor(mid))] += 1;
            hist.total += 1;
        }
    }
    return hist;
}

DensitySignal normalize(const RawHistogram& hist) {
    if (hist.total <= 0) throw DomainError("no structural transitions in mask");
    DensitySignal f;
    f.bins.resize(hist.bins.size());
    const double total = static_cast<double>(hist.total);
    for (std::size_t i = 0; i < hist.bins.size(); ++i)
        f.bins[i] = static_cast<double>(hist.bins[i]) / total;
    return f;
}

DensitySignal smooth_initial(const DensitySignal& f0, double epsilon) {
    if (epsilon <= 0) throw InvalidArgument("smoothing width must be positive");
    return renormalize(convolve(f0, KernelSpec::gaussian(epsilon)));
}

} // namespace gridex
