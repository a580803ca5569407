#ifndef GRIDEX_BENCH_HPP
#define GRIDEX_BENCH_HPP

#include <cstdint>

#include <json.hpp>

namespace gridex {

// Seeded synthetic suites driving the CI thresholds: a boundary-recovery
// suite over grid masks, and a CASA comparison suite where extracted
// column cuts compete against an equal-width split.
struct BenchConfig {
    std::uint64_t base_seed = 42;
    int boundary_instances = 50;
    double boundary_flip_max = 0.05;
    double boundary_dropout_max = 0.1;
    double boundary_tolerance_px = 5.0;
    int casa_instances = 20;
    double casa_flip_max = 0.006;
    double casa_dropout_max = 0.1;

    static BenchConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

// Deterministic given the config; instances ordered by id.
nlohmann::json run_bench(const BenchConfig& config);

} // namespace gridex

#endif
