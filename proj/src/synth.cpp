#include "gridex/synth.hpp"

#include <cmath>

#include "gridex/errors.hpp"
#include "gridex/regularize.hpp"
#include "gridex/rng.hpp"

namespace gridex {

void MixtureSpec::validate() const {
    if (bin_count < 2) throw InvalidArgument("mixture needs at least two bins");
    if (components.empty()) throw InvalidArgument("mixture needs at least one component");
    double weight_sum = 0.0;
    for (const auto& c : components) {
        if (c.weight < 0) throw InvalidArgument("component weight must be non-negative");
        if (c.spread <= 0) throw InvalidArgument("component spread must be positive");
        if (c.center <= 4.0 * c.spread || c.center >= bin_count - 4.0 * c.spread)
            throw InvalidArgument("component center too close to the borders");
        weight_sum += c.weight;
    }
    if (std::abs(weight_sum - 1.0) > 1e-12)
        throw InvalidArgument("component weights must sum to 1");
}

DensitySignal discretize_mixture(const MixtureSpec& spec) {
    spec.validate();
    DensitySignal f;
    f.bins.assign(spec.bin_count, 0.0);
    for (const auto& c : spec.components) {
        const double norm = c.weight / (std::sqrt(2.0 * M_PI) * c.spread);
        for (int x = 0; x < spec.bin_count; ++x) {
            const double d = (x - c.center) / c.spread;
            f.bins[x] += norm * std::exp(-0.5 * d * d);
        }
    }
    return renormalize(f);
}

DensitySignal add_noise(const DensitySignal& f, const DensityNoiseSpec& noise) {
    if (!(noise.amplitude >= 0) || !std::isfinite(noise.amplitude))
        throw InvalidArgument("noise amplitude must be finite and non-negative");
    if (noise.amplitude == 0.0) return f;
    Rng rng(noise.seed);
    DensitySignal out;
    out.bins.resize(f.bins.size());
    for (std::size_t i = 0; i < f.bins.size(); ++i) {
        double eps;
        if (noise.model == DensityNoiseModel::AdditiveUniform) {
            eps = rng.uniform(0.0, noise.amplitude);
        } else {
            // Box-Muller on explicit uniforms to keep draws reproducible
            const double u1 = std::max(rng.uniform(), 1e-300);
            const double u2 = rng.uniform();
            eps = noise.amplitude * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        }
        out.bins[i] = std::max(0.0, f.bins[i] + eps);
    }
    return renormalize(out);
}

} // namespace gridex
