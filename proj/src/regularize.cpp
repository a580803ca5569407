#include "gridex/regularize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gridex/errors.hpp"

namespace gridex {

IterationSchedule IterationSchedule::defaults() {
    IterationSchedule s;
    s.steps = {{1.5, 5.0}, {1.0, 7.0}};
    return s;
}

void IterationSchedule::validate() const {
    if (steps.empty() || static_cast<int>(steps.size()) > kMaxIterations)
        throw InvalidArgument("iteration count must be in [1, 16]");
    for (const auto& step : steps) {
        if (step.kernel_sigma <= 0) throw InvalidArgument("kernel sigma must be positive");
        if (step.threshold_multiplier < 0)
            throw InvalidArgument("threshold multiplier must be non-negative");
        if (mode == ThresholdMode::Quantile && step.threshold_multiplier >= 1.0)
            throw InvalidArgument("quantile threshold must be in [0, 1)");
    }
}

KernelSpec KernelSpec::gaussian(double sigma) {
    if (sigma <= 0) throw InvalidArgument("kernel sigma must be positive");
    KernelSpec k;
    k.sigma = sigma;
    k.truncation_radius = static_cast<int>(std::ceil(4.0 * sigma));
    k.weights.resize(2 * k.truncation_radius + 1);
    double sum = 0.0;
    for (int i = -k.truncation_radius; i <= k.truncation_radius; ++i) {
        const double w = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        k.weights[i + k.truncation_radius] = w;
        sum += w;
    }
    for (double& w : k.weights) w /= sum;
    return k;
}

DensitySignal threshold(const DensitySignal& f, double theta) {
    if (theta < 0) throw InvalidArgument("threshold must be non-negative");
    DensitySignal out;
    out.bins.resize(f.bins.size());
    std::transform(f.bins.begin(), f.bins.end(), out.bins.begin(),
                   [theta](double v) { return v >= theta ? v : 0.0; });
    return out;
}

double resolve_threshold(const DensitySignal& f, double multiplier, ThresholdMode mode) {
    const std::size_t n = f.bins.size();
    if (n < 2) throw InvalidArgument("signal needs at least two bins");
    if (mode == ThresholdMode::Quantile) {
        // remove the bottom `multiplier` fraction of amplitudes
        std::vector<double> sorted = f.bins;
        std::sort(sorted.begin(), sorted.end());
        const auto idx = static_cast<std::size_t>(multiplier * static_cast<double>(n));
        return sorted[std::min(idx, n - 1)];
    }
    double mean = 0.0;
    for (double v : f.bins) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : f.bins) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    return multiplier * std::sqrt(var);
}

DensitySignal convolve(const DensitySignal& f, const KernelSpec& kernel) {
    const int n = static_cast<int>(f.bins.size());
    const int r = kernel.truncation_radius;
    DensitySignal out;
    out.bins.assign(f.bins.size(), 0.0);
    for (int x = 0; x < n; ++x) {
        const double v = f.bins[x];
        if (v == 0.0) continue;
        const int lo = std::max(0, x - r);
        const int hi = std::min(n - 1, x + r);
        for (int j = lo; j <= hi; ++j)
            out.bins[j] += v * kernel.weights[j - x + r];
    }
    return out;
}

DensitySignal renormalize(const DensitySignal& f) {
    const double m = f.mass();
    if (m <= 0) throw DomainError("signal has zero mass");
    DensitySignal out;
    out.bins.resize(f.bins.size());
    std::transform(f.bins.begin(), f.bins.end(), out.bins.begin(),
                   [m](double v) { return v / m; });
    return out;
}

RegularizationTrace iterate(const DensitySignal& f0, const IterationSchedule& schedule) {
    schedule.validate();
    RegularizationTrace trace;
    trace.iterates.push_back(f0);
    DensitySignal f = f0;
    for (std::size_t n = 0; n < schedule.steps.size(); ++n) {
        const auto& step = schedule.steps[n];
        const double theta = resolve_threshold(f, step.threshold_multiplier, schedule.mode);
        trace.thresholds_applied.push_back(theta);
        DensitySignal g = convolve(threshold(f, theta), KernelSpec::gaussian(step.kernel_sigma));
        try {
            f = renormalize(g);
        } catch (const DomainError&) {
            throw DomainError("signal fully suppressed at iteration " + std::to_string(n));
        }
        trace.iterates.push_back(f);
    }
    trace.final_peaks = find_peaks(f);
    return trace;
}

std::vector<int> find_peaks(const DensitySignal& f) {
    std::vector<int> peaks;
    const int n = static_cast<int>(f.bins.size());
    int i = 0;
    while (i < n) {
        int j = i;
        while (j + 1 < n && f.bins[j + 1] == f.bins[i]) ++j;
        // plateau [i, j]; a peak needs strictly smaller neighbors on both sides
        if (i > 0 && j < n - 1 && f.bins[i - 1] < f.bins[i] && f.bins[j + 1] < f.bins[i])
            peaks.push_back((i + j) / 2);
        i = j + 1;
    }
    return peaks;
}

EnergyDiagnostic energy(const DensitySignal& f, const DensitySignal& f0, double theta,
                        double lambda, double mu) {
    if (lambda < 0 || mu < 0) throw InvalidArgument("energy weights must be non-negative");
    if (f.bins.size() != f0.bins.size()) throw InvalidArgument("bins not aligned");
    EnergyDiagnostic d;
    d.lambda = lambda;
    d.mu = mu;
    int penalized = 0;
    for (std::size_t i = 0; i < f.bins.size(); ++i) {
        const double v = f.bins[i];
        if (v > 0.0) {
            d.entropy_term += v * std::log(v);
            if (f0.bins[i] > 0.0)
                d.kl_term += v * std::log(v / f0.bins[i]);
            else
                d.support_violation = true;
        }
        if (v > 0.0 && v < theta) ++penalized;
    }
    if (d.support_violation) d.kl_term = std::numeric_limits<double>::infinity();
    d.penalty_term = static_cast<double>(penalized) / static_cast<double>(f.bins.size());
    d.total = d.kl_term + lambda * d.entropy_term + mu * d.penalty_term;
    return d;
}

} // namespace gridex
