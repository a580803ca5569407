// Acceptance suite: one pass/fail line per criterion, tolerances pinned
// here. Exit code = number of failed criteria.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "gridex/bench.hpp"
#include "gridex/errors.hpp"
#include "gridex/evaluate.hpp"
#include "gridex/jsonio.hpp"
#include "gridex/regularize.hpp"
#include "gridex/rng.hpp"
#include "gridex/signal.hpp"
#include "gridex/synth.hpp"
#include "oracles.hpp"

using namespace gridex;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

Mask random_mask(Rng& rng, int h, int w, double density) {
    Mask m(h, w);
    for (auto& cell : m.cells) cell = rng.bernoulli(density) ? 1 : 0;
    return m;
}

double local_mass(const std::vector<double>& f, double center, double radius) {
    double mass = 0.0;
    const int lo = std::max(0, static_cast<int>(std::floor(center - radius)));
    const int hi =
        std::min(static_cast<int>(f.size()) - 1, static_cast<int>(std::ceil(center + radius)));
    for (int x = lo; x <= hi; ++x) mass += f[x];
    return mass;
}

// --- criterion 1: accumulate_histogram vs brute-force oracle ---
void criterion_1() {
    const auto start = Clock::now();
    Rng rng(1001);
    int mismatches = 0;
    for (int t = 0; t < 1000; ++t) {
        const int h = static_cast<int>(rng.uniform_int(1, 64));
        const int w = static_cast<int>(rng.uniform_int(2, 64));
        const Mask m = random_mask(rng, h, w, rng.uniform(0.05, 0.95));
        for (auto selection : {IntervalSelection::AllIntervals, IntervalSelection::OnRuns,
                               IntervalSelection::OffRuns}) {
            const auto hist = accumulate_histogram(m, selection);
            const auto expected = oracles::brute_force_histogram(m, selection);
            for (int x = 0; x < w; ++x)
                if (hist.bins[x] != expected[x]) ++mismatches;
        }
    }
    const double elapsed = seconds_since(start);
    report(1, mismatches == 0 && elapsed < 10.0,
           fmt("accumulation oracle equivalence, 1000 masks x 3 modes, %d mismatched bins, "
               "%.2f s (limit 10 s)",
               mismatches, elapsed));
}

// --- criterion 2: Gaussian mixture closure under convolution ---
void criterion_2() {
    const auto start = Clock::now();

    DensitySignal f;
    f.bins = oracles::discretized_gaussian(1024, 300.0, 4.0);
    const auto g = convolve(f, KernelSpec::gaussian(3.0));
    const double l1 = oracles::l1_distance(g.bins, oracles::discretized_gaussian(1024, 300.0, 5.0));

    MixtureSpec spec;
    spec.bin_count = 1024;
    spec.components = {{0.5, 250.0, 4.0}, {0.3, 550.0, 5.0}, {0.2, 820.0, 3.0}};
    const auto mix = discretize_mixture(spec);
    const auto mixed = convolve(mix, KernelSpec::gaussian(3.0));
    double worst_mass_err = 0.0;
    for (const auto& c : spec.components) {
        const double post_spread = std::sqrt(c.spread * c.spread + 9.0);
        const double mass = local_mass(mixed.bins, c.center, 5.0 * post_spread);
        worst_mass_err = std::max(worst_mass_err, std::abs(mass - c.weight));
    }

    const double elapsed = seconds_since(start);
    report(2, l1 <= 1e-3 && worst_mass_err <= 1e-3 && elapsed < 1.0,
           fmt("Gaussian closure, L1 = %.2e (limit 1e-3), worst component mass error = %.2e "
               "(limit 1e-3), %.2f s (limit 1 s)",
               l1, worst_mass_err, elapsed));
}

// --- criterion 3: first/second moments under convolution ---
void criterion_3() {
    const auto start = Clock::now();
    Rng rng(1003);
    double worst_mean_shift = 0.0, worst_var_rel_err = 0.0;
    for (int t = 0; t < 100; ++t) {
        MixtureSpec spec;
        spec.bin_count = 1024;
        const int k = static_cast<int>(rng.uniform_int(1, 4));
        std::vector<double> weights(k);
        double sum = 0.0;
        for (auto& w : weights) sum += (w = rng.uniform(0.2, 1.0));
        for (int i = 0; i < k; ++i)
            spec.components.push_back(
                {weights[i] / sum, rng.uniform(150.0, 874.0), rng.uniform(3.0, 10.0)});
        const auto f = discretize_mixture(spec);
        const double sigma = rng.uniform(2.0, 7.0);
        const auto g = convolve(f, KernelSpec::gaussian(sigma));
        worst_mean_shift = std::max(
            worst_mean_shift, std::abs(oracles::signal_mean(g.bins) - oracles::signal_mean(f.bins)));
        const double gained =
            oracles::signal_variance(g.bins) - oracles::signal_variance(f.bins);
        worst_var_rel_err =
            std::max(worst_var_rel_err, std::abs(gained - sigma * sigma) / (sigma * sigma));
    }
    const double elapsed = seconds_since(start);
    report(3, worst_mean_shift <= 0.1 && worst_var_rel_err <= 0.005 && elapsed < 5.0,
           fmt("moment preservation over 100 densities, worst mean shift = %.3g bin "
               "(limit 0.1), worst variance error = %.3g of sigma^2 (limit 0.005), %.2f s "
               "(limit 5 s)",
               worst_mean_shift, worst_var_rel_err, elapsed));
}

// --- criterion 4: unit mass after every iteration; threshold idempotence ---
void criterion_4() {
    Rng rng(1004);
    double worst_mass_dev = 0.0;
    bool idempotent = true;
    for (int t = 0; t < 40; ++t) {
        MixtureSpec spec;
        spec.bin_count = 1024;
        const int k = static_cast<int>(rng.uniform_int(2, 5));
        for (int i = 0; i < k; ++i)
            spec.components.push_back(
                {1.0 / k, 120.0 + i * (780.0 / k) + rng.uniform(-20.0, 20.0),
                 rng.uniform(3.0, 7.0)});
        auto f = discretize_mixture(spec);
        const double peak = *std::max_element(f.bins.begin(), f.bins.end());
        f = add_noise(f, {DensityNoiseModel::AdditiveUniform,
                          rng.uniform(0.0, 0.2) * peak, rng.raw()});

        const auto trace = iterate(f, IterationSchedule::defaults());
        for (const auto& it : trace.iterates)
            worst_mass_dev = std::max(worst_mass_dev, std::abs(it.mass() - 1.0));

        const double theta = resolve_threshold(f, rng.uniform(0.5, 2.0));
        const auto once = threshold(f, theta);
        if (threshold(once, theta).bins != once.bins) idempotent = false;
    }
    report(4, worst_mass_dev <= 1e-9 && idempotent,
           fmt("normalization invariant, worst |mass - 1| = %.2e over 40 traces (limit 1e-9), "
               "threshold idempotence %s",
               worst_mass_dev, idempotent ? "exact" : "VIOLATED"));
}

// --- criterion 5: synthetic boundary recovery at default noise levels ---
void criterion_5() {
    const auto start = Clock::now();
    const auto results = run_bench(BenchConfig{});
    const auto& agg = results.at("boundary_suite").at("aggregate");
    const double recall = agg.at("recall").get<double>();
    const double precision = agg.at("precision").get<double>();
    const double mae = agg.at("mae").get<double>();
    const double elapsed = seconds_since(start);
    report(5,
           recall >= 0.95 && precision >= 0.90 && mae <= 3.0 && elapsed < 60.0,
           fmt("boundary recovery over 50 grids (flip <= 0.05, dropout <= 0.1, tol 5 px): "
               "recall = %.3f (need 0.95), precision = %.3f (need 0.90), MAE = %.2f px "
               "(limit 3), %.1f s (limit 60 s)",
               recall, precision, mae, elapsed));
}

// --- criterion 6: CASA vs brute-force reference, plus forced cases ---
void criterion_6() {
    const auto start = Clock::now();
    Rng rng(1006);
    int mismatches = 0, compared = 0;

    for (int t = 0; t < 200; ++t) {
        const int cols = static_cast<int>(rng.uniform_int(1, 4));
        const int rows = static_cast<int>(rng.uniform_int(1, 4));
        RegionPartition part;
        part.columns.extent = cols * 100.0;
        part.rows.extent = rows * 50.0;
        for (int c = 1; c < cols; ++c) part.columns.cuts.push_back(c * 100.0);
        for (int r = 1; r < rows; ++r) part.rows.cuts.push_back(r * 50.0);

        std::vector<GroundTruthCell> truth;
        std::vector<WordBox> predicted;
        int total_words = 0;
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) {
                GroundTruthCell cell{r, c, c * 100.0, r * 50.0, c * 100.0 + 100,
                                     r * 50.0 + 50, {}};
                const int n = static_cast<int>(rng.uniform_int(0, 3));
                for (int k = 0; k < n && total_words < 20; ++k, ++total_words) {
                    const std::string text = "tok" + std::to_string(rng.uniform_int(0, 5));
                    cell.words.push_back(text);
                    if (rng.bernoulli(0.8)) {
                        const double cx = rng.uniform(6.0, part.columns.extent - 6.0);
                        const double cy = rng.uniform(5.0, part.rows.extent - 5.0);
                        predicted.push_back({rng.bernoulli(0.9) ? text : "junk", cx - 5, cy - 4,
                                             cx + 5, cy + 4, {}});
                    }
                }
                truth.push_back(cell);
            }
        if (total_words == 0) continue;
        ++compared;
        const auto rep = casa(predicted, assign_words_to_cells(predicted, part), truth);
        const double expected =
            oracles::brute_force_casa(predicted, part.columns.cuts, part.rows.cuts, truth);
        if (std::abs(rep.casa_percent - expected) > 1e-9) ++mismatches;
    }

    // forced perfect case
    RegionPartition part;
    part.columns.extent = 200.0;
    part.columns.cuts = {100.0};
    part.rows.extent = 40.0;
    std::vector<GroundTruthCell> truth = {{0, 0, 0, 0, 100, 40, {"alpha"}},
                                          {0, 1, 100, 0, 200, 40, {"beta"}}};
    std::vector<WordBox> good = {{"alpha", 20, 10, 60, 25, {}}, {"beta", 120, 10, 160, 25, {}}};
    const double perfect = casa(good, assign_words_to_cells(good, part), truth).casa_percent;
    // forced zero case: identical texts, every word one column over
    std::vector<WordBox> shifted = {{"alpha", 120, 10, 160, 25, {}},
                                    {"beta", 20, 10, 60, 25, {}}};
    const double zero = casa(shifted, assign_words_to_cells(shifted, part), truth).casa_percent;

    const double elapsed = seconds_since(start);
    report(6,
           mismatches == 0 && perfect == 100.0 && zero == 0.0 && elapsed < 5.0,
           fmt("CASA oracle equivalence on %d instances, %d mismatches; forced cases "
               "%.1f%% / %.1f%% (need 100 / 0), %.2f s (limit 5 s)",
               compared, mismatches, perfect, zero, elapsed));
}

// --- criterion 7: pipeline boundaries beat the equal-width baseline ---
void criterion_7() {
    const auto start = Clock::now();
    const auto results = run_bench(BenchConfig{});
    const auto& agg = results.at("casa_suite").at("aggregate");
    const double improved = agg.at("improved_fraction").get<double>();
    const double mean_pipeline = agg.at("mean_casa_pipeline").get<double>();
    const double mean_naive = agg.at("mean_casa_naive").get<double>();
    const double elapsed = seconds_since(start);
    report(7,
           improved >= 0.8 && mean_pipeline > mean_naive && elapsed < 60.0,
           fmt("layout awareness over 20 tables: pipeline beats equal-width split on %.0f%% "
               "(need 80%%), mean CASA %.1f%% vs %.1f%%, %.1f s (limit 60 s)",
               improved * 100.0, mean_pipeline, mean_naive, elapsed));
}

// --- criterion 8: byte-identical benchmark runs through the CLI ---
void criterion_8() {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "gridex_acceptance";
    fs::create_directories(dir);
    const auto suite = dir / "suite.json";
    const auto out_a = dir / "bench_a.json";
    const auto out_b = dir / "bench_b.json";
    write_file(suite.string(),
               R"({"base_seed": 42, "boundary_instances": 8, "casa_instances": 4})");

    bool pass = true;
    std::string detail;
    for (const auto& out : {out_a, out_b}) {
        const std::string cmd = std::string("\"") + GRIDEX_CLI_PATH + "\" bench --suite " +
                                suite.string() + " --out " + out.string();
        if (std::system(cmd.c_str()) != 0) {
            pass = false;
            detail = "benchmark CLI run failed";
        }
    }
    if (pass) {
        const std::string a = read_file(out_a.string());
        const std::string b = read_file(out_b.string());
        pass = !a.empty() && a == b;
        detail = fmt("two CLI benchmark runs, %zu-byte outputs %s", a.size(),
                     pass ? "byte-identical" : "DIFFER");
    }
    fs::remove_all(dir);
    report(8, pass, detail);
}

// --- criterion 9: regularization reduces amplitude kurtosis ---
void criterion_9() {
    Rng rng(1009);
    int reduced = 0;
    const int trials = 100;
    for (int t = 0; t < trials; ++t) {
        MixtureSpec spec;
        spec.bin_count = 1024;
        const int k = static_cast<int>(rng.uniform_int(2, 5));
        for (int i = 0; i < k; ++i)
            spec.components.push_back(
                {1.0 / k, 120.0 + i * (780.0 / k) + rng.uniform(-25.0, 25.0),
                 rng.uniform(3.0, 7.0)});
        auto f0 = discretize_mixture(spec);
        const double peak = *std::max_element(f0.bins.begin(), f0.bins.end());
        f0 = add_noise(f0, {DensityNoiseModel::AdditiveUniform,
                            rng.uniform(0.02, 0.15) * peak, rng.raw()});
        try {
            const auto trace = iterate(f0, IterationSchedule::defaults());
            if (oracles::amplitude_excess_kurtosis(trace.iterates.back().bins) <=
                oracles::amplitude_excess_kurtosis(f0.bins))
                ++reduced;
        } catch (const DomainError&) {
            // suppression counts as a failure to reduce
        }
    }
    report(9, reduced >= 95,
           fmt("amplitude kurtosis reduced on %d/%d noisy mixtures (need 95)", reduced, trials));
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (g_failures) std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures;
}
