#ifndef GRIDEX_SYNTH_HPP
#define GRIDEX_SYNTH_HPP

#include <cstdint>
#include <vector>

#include "gridex/signal.hpp"

namespace gridex {

struct MixtureComponent {
    double weight = 0.0;
    double center = 0.0; // bin coordinate
    double spread = 1.0; // bins
};

// Finite Gaussian mixture over [0, bin_count); weights sum to 1 and
// every component sits at least 4 spreads inside the borders.
struct MixtureSpec {
    std::vector<MixtureComponent> components;
    int bin_count = 0;

    void validate() const;
};

enum class DensityNoiseModel { AdditiveUniform, AdditiveGaussian };

struct DensityNoiseSpec {
    DensityNoiseModel model = DensityNoiseModel::AdditiveUniform;
    double amplitude = 0.0;
    std::uint64_t seed = 0;
};

// Mixture density point-sampled at bin centers, unit mass.
DensitySignal discretize_mixture(const MixtureSpec& spec);

// f + eps per the noise model, clipped at 0, renormalized.
DensitySignal add_noise(const DensitySignal& f, const DensityNoiseSpec& noise);

} // namespace gridex

#endif
