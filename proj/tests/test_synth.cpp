#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gridex/errors.hpp"
#include "gridex/regularize.hpp"
#include "gridex/synth.hpp"
#include "oracles.hpp"

using namespace gridex;

namespace {

double local_mass(const std::vector<double>& f, double center, double radius) {
    double mass = 0.0;
    const int lo = std::max(0, static_cast<int>(std::floor(center - radius)));
    const int hi = std::min(static_cast<int>(f.size()) - 1,
                            static_cast<int>(std::ceil(center + radius)));
    for (int x = lo; x <= hi; ++x) mass += f[x];
    return mass;
}

} // namespace

TEST_CASE("mixture spec validation") {
    MixtureSpec spec;
    spec.bin_count = 256;
    spec.components = {{0.5, 100.0, 4.0}, {0.5, 180.0, 4.0}};
    CHECK_NOTHROW(spec.validate());

    spec.components[0].weight = 0.6; // weights no longer sum to 1
    CHECK_THROWS_AS(spec.validate(), InvalidArgument);
    spec.components[0].weight = 0.5;

    spec.components[1].center = 250.0; // inside the 4-sigma border margin
    CHECK_THROWS_AS(spec.validate(), InvalidArgument);
}

TEST_CASE("single component discretizes to a symmetric unimodal bump") {
    MixtureSpec spec;
    spec.bin_count = 200;
    spec.components = {{1.0, 100.0, 3.0}};
    const auto f = discretize_mixture(spec);
    CHECK(f.mass() == doctest::Approx(1.0).epsilon(1e-12));
    const auto argmax = std::max_element(f.bins.begin(), f.bins.end()) - f.bins.begin();
    CHECK(argmax == 100);
    for (int d = 1; d <= 12; ++d)
        CHECK(f.bins[100 - d] == doctest::Approx(f.bins[100 + d]).epsilon(1e-12));
}

TEST_CASE("equal components carry equal local mass") {
    MixtureSpec spec;
    spec.bin_count = 400;
    spec.components = {{0.5, 150.0, 4.0}, {0.5, 250.0, 4.0}};
    const auto f = discretize_mixture(spec);
    const double a = local_mass(f.bins, 150.0, 16.0);
    const double b = local_mass(f.bins, 250.0, 16.0);
    CHECK(std::abs(a - b) <= 1e-3);
}

TEST_CASE("7:3 weights show up as a 7:3 local-mass ratio") {
    MixtureSpec spec;
    spec.bin_count = 400;
    spec.components = {{0.7, 150.0, 4.0}, {0.3, 250.0, 4.0}};
    const auto f = discretize_mixture(spec);
    CHECK(local_mass(f.bins, 150.0, 16.0) == doctest::Approx(0.7).epsilon(1e-3));
    CHECK(local_mass(f.bins, 250.0, 16.0) == doctest::Approx(0.3).epsilon(1e-3));
}

TEST_CASE("mixture mean matches the weighted component means") {
    MixtureSpec spec;
    spec.bin_count = 1024;
    spec.components = {{0.4, 200.0, 5.0}, {0.35, 500.0, 6.0}, {0.25, 800.0, 4.0}};
    const auto f = discretize_mixture(spec);
    const double expected = 0.4 * 200.0 + 0.35 * 500.0 + 0.25 * 800.0;
    CHECK(std::abs(oracles::signal_mean(f.bins) - expected) <= 0.1);
}

TEST_CASE("zero-amplitude noise is the identity") {
    MixtureSpec spec;
    spec.bin_count = 256;
    spec.components = {{1.0, 128.0, 5.0}};
    const auto f = discretize_mixture(spec);
    const auto g = add_noise(f, DensityNoiseSpec{DensityNoiseModel::AdditiveUniform, 0.0, 7});
    CHECK(g.bins == f.bins);
}

TEST_CASE("noise keeps unit mass and is seed-deterministic") {
    MixtureSpec spec;
    spec.bin_count = 512;
    spec.components = {{0.5, 150.0, 5.0}, {0.5, 350.0, 5.0}};
    const auto f = discretize_mixture(spec);
    for (auto model : {DensityNoiseModel::AdditiveUniform, DensityNoiseModel::AdditiveGaussian}) {
        const DensityNoiseSpec noise{model, 0.002, 11};
        const auto a = add_noise(f, noise);
        const auto b = add_noise(f, noise);
        CHECK(a.bins == b.bins);
        CHECK(a.mass() == doctest::Approx(1.0).epsilon(1e-9));
        for (double v : a.bins) CHECK(v >= 0.0);
        const auto c = add_noise(f, DensityNoiseSpec{model, 0.002, 12});
        CHECK(a.bins != c.bins);
    }
}

TEST_CASE("moderate noise leaves the mixture recoverable") {
    MixtureSpec spec;
    spec.bin_count = 1024;
    spec.components = {{0.4, 200.0, 4.0}, {0.35, 500.0, 4.0}, {0.25, 800.0, 4.0}};
    const auto f = discretize_mixture(spec);
    const double peak = *std::max_element(f.bins.begin(), f.bins.end());
    const auto noisy = add_noise(f, {DensityNoiseModel::AdditiveUniform, 0.1 * peak, 21});
    const auto trace = iterate(noisy, IterationSchedule::defaults());
    REQUIRE(trace.final_peaks.size() == 3);
    CHECK(std::abs(trace.final_peaks[0] - 200) <= 2);
    CHECK(std::abs(trace.final_peaks[1] - 500) <= 2);
    CHECK(std::abs(trace.final_peaks[2] - 800) <= 2);
}

TEST_CASE("overwhelming noise destroys peak recovery") {
    MixtureSpec spec;
    spec.bin_count = 1024;
    spec.components = {{0.4, 200.0, 4.0}, {0.35, 500.0, 4.0}, {0.25, 800.0, 4.0}};
    const auto f = discretize_mixture(spec);
    const double peak = *std::max_element(f.bins.begin(), f.bins.end());
    const auto noisy = add_noise(f, {DensityNoiseModel::AdditiveUniform, 10.0 * peak, 31});
    std::size_t recovered = 0;
    try {
        const auto trace = iterate(noisy, IterationSchedule::defaults());
        recovered = trace.final_peaks.size();
    } catch (const DomainError&) {
        // full suppression also counts as failed recovery
    }
    CHECK(recovered != 3);
}
