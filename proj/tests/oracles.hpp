// Test-only reference implementations, kept independent of the library
// code paths they check.
#ifndef GRIDEX_TESTS_ORACLES_HPP
#define GRIDEX_TESTS_ORACLES_HPP

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "gridex/evaluate.hpp"
#include "gridex/mask.hpp"
#include "gridex/signal.hpp"

namespace oracles {

// Naive double loop: walk every scan line, compare adjacent pairs, pair
// consecutive transitions, filter by the run value, floor-bin midpoints.
inline std::vector<long> brute_force_histogram(const gridex::Mask& mask,
                                               gridex::IntervalSelection selection) {
    std::vector<long> bins(mask.width, 0);
    for (int y = 0; y < mask.height; ++y) {
        std::vector<int> transitions;
        for (int x = 0; x < mask.width - 1; ++x)
            if (mask.at(y, x) != mask.at(y, x + 1)) transitions.push_back(x);
        for (std::size_t i = 0; i + 1 < transitions.size(); ++i) {
            const int a = transitions[i];
            const int b = transitions[i + 1];
            const int run_value = mask.at(y, a + 1);
            if (selection == gridex::IntervalSelection::OnRuns && run_value != 1) continue;
            if (selection == gridex::IntervalSelection::OffRuns && run_value != 0) continue;
            const double mid = (a + b) / 2.0;
            bins[static_cast<std::size_t>(std::floor(mid))] += 1;
        }
    }
    return bins;
}

// Point-sampled Gaussian density over bins, renormalized.
inline std::vector<double> discretized_gaussian(int bins, double mean, double stddev) {
    std::vector<double> f(bins);
    double sum = 0.0;
    for (int x = 0; x < bins; ++x) {
        const double d = (x - mean) / stddev;
        sum += (f[x] = std::exp(-0.5 * d * d));
    }
    for (double& v : f) v /= sum;
    return f;
}

inline double l1_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
    return d;
}

inline double signal_mean(const std::vector<double>& f) {
    double m = 0.0, mass = 0.0;
    for (std::size_t x = 0; x < f.size(); ++x) {
        m += static_cast<double>(x) * f[x];
        mass += f[x];
    }
    return m / mass;
}

inline double signal_variance(const std::vector<double>& f) {
    const double mu = signal_mean(f);
    double v = 0.0, mass = 0.0;
    for (std::size_t x = 0; x < f.size(); ++x) {
        v += (x - mu) * (x - mu) * f[x];
        mass += f[x];
    }
    return v / mass;
}

// Excess kurtosis of the amplitude (bin-value) distribution.
inline double amplitude_excess_kurtosis(const std::vector<double>& f) {
    const auto n = static_cast<double>(f.size());
    double mean = 0.0;
    for (double v : f) mean += v;
    mean /= n;
    double m2 = 0.0, m4 = 0.0;
    for (double v : f) {
        const double d = v - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m4 /= n;
    return m4 / (m2 * m2) - 3.0;
}

// Reference CASA evaluator: per-word linear scans, no shared machinery
// with the library implementation.
inline double brute_force_casa(const std::vector<gridex::WordBox>& predicted,
                               const std::vector<double>& column_cuts,
                               const std::vector<double>& row_cuts,
                               const std::vector<gridex::GroundTruthCell>& truth) {
    auto interval_index = [](const std::vector<double>& cuts, double v) {
        int idx = 0;
        for (double c : cuts)
            if (v >= c) ++idx;
        return idx;
    };
    struct Pred {
        std::string norm;
        int row, col;
        bool used = false;
    };
    auto norm_text = [](const std::string& s) {
        std::string out;
        bool pending = false;
        for (unsigned char ch : s) {
            if (std::isspace(ch)) {
                if (!out.empty()) pending = true;
            } else {
                if (pending) out.push_back(' ');
                pending = false;
                out.push_back(static_cast<char>(std::tolower(ch)));
            }
        }
        return out;
    };
    std::vector<Pred> preds;
    for (const auto& w : predicted)
        preds.push_back({norm_text(w.text), interval_index(row_cuts, w.center_y()),
                         interval_index(column_cuts, w.center_x())});
    int total = 0, correct = 0;
    for (const auto& cell : truth) {
        for (const auto& word : cell.words) {
            ++total;
            const std::string norm = norm_text(word);
            for (auto& p : preds) {
                if (!p.used && p.norm == norm && p.row == cell.row_index &&
                    p.col == cell.col_index) {
                    p.used = true;
                    ++correct;
                    break;
                }
            }
        }
    }
    return total ? 100.0 * correct / total : 0.0;
}

} // namespace oracles

#endif
