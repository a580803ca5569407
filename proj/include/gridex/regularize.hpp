#ifndef GRIDEX_REGULARIZE_HPP
#define GRIDEX_REGULARIZE_HPP

#include <vector>

#include "gridex/signal.hpp"

namespace gridex {

// How the per-iteration threshold multiplier resolves to an absolute
// amplitude. StdDev: multiplier times the population standard deviation
// of the current bin values. Quantile: the multiplier is a fraction q in
// [0,1) and the threshold removes the bottom q of amplitudes.
enum class ThresholdMode { StdDev, Quantile };

struct IterationStep {
    double threshold_multiplier = 0.0;
    double kernel_sigma = 1.0;
};

struct IterationSchedule {
    std::vector<IterationStep> steps;
    ThresholdMode mode = ThresholdMode::StdDev;

    static constexpr int kMaxIterations = 16;

    // Two passes: thresholds 1.5x / 1.0x of the signal std, kernels
    // sigma = 5 and sigma = 7.
    static IterationSchedule defaults();

    void validate() const;
};

// Discrete unit-mass zero-mean Gaussian, truncated at ceil(4*sigma).
struct KernelSpec {
    double sigma = 1.0;
    int truncation_radius = 0;
    std::vector<double> weights; // length 2*radius+1, symmetric, sums to 1

    static KernelSpec gaussian(double sigma);
};

struct RegularizationTrace {
    std::vector<DensitySignal> iterates;   // f_0 ... f_N
    std::vector<double> thresholds_applied;
    std::vector<int> final_peaks;
};

struct EnergyDiagnostic {
    double kl_term = 0.0;
    double entropy_term = 0.0;
    double penalty_term = 0.0;
    double lambda = 1.0;
    double mu = 1.0;
    double total = 0.0;
    bool support_violation = false; // f > 0 somewhere f0 == 0
};

// Hard truncation: keep f[x] when f[x] >= theta, else 0. Output is not
// renormalized.
DensitySignal threshold(const DensitySignal& f, double theta);

double resolve_threshold(const DensitySignal& f, double multiplier,
                         ThresholdMode mode = ThresholdMode::StdDev);

// Discrete linear convolution with zero-padded boundaries, same length.
DensitySignal convolve(const DensitySignal& f, const KernelSpec& kernel);

// Throws DomainError on zero mass (signals over-thresholding).
DensitySignal renormalize(const DensitySignal& f);

// Alternating threshold / convolve / renormalize per the schedule.
RegularizationTrace iterate(const DensitySignal& f0, const IterationSchedule& schedule);

// Strict interior local maxima; a plateau flanked by strictly smaller
// neighbors reports its floor-midpoint bin.
std::vector<int> find_peaks(const DensitySignal& f);

EnergyDiagnostic energy(const DensitySignal& f, const DensitySignal& f0, double theta,
                        double lambda, double mu);

} // namespace gridex

#endif
