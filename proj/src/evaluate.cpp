#include "gridex/evaluate.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "gridex/errors.hpp"

namespace gridex {

std::string normalize_text(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (unsigned char ch : text) {
        if (std::isspace(ch)) {
            if (!out.empty()) pending_space = true;
        } else {
            if (pending_space) {
                out.push_back(' ');
                pending_space = false;
            }
            out.push_back(static_cast<char>(std::tolower(ch)));
        }
    }
    return out;
}

std::vector<CellAssignment> assign_words_to_cells(const std::vector<WordBox>& words,
                                                  const RegionPartition& partition) {
    std::vector<CellAssignment> out;
    out.reserve(words.size());
    for (const auto& w : words)
        out.push_back({partition.rows.interval_of(w.center_y()),
                       partition.columns.interval_of(w.center_x())});
    return out;
}

CasaReport casa(const std::vector<WordBox>& predicted_words,
                const std::vector<CellAssignment>& assignments,
                const std::vector<GroundTruthCell>& truth) {
    if (predicted_words.size() != assignments.size())
        throw InvalidArgument("one assignment required per predicted word");

    CasaReport report;
    for (const auto& cell : truth) report.total_words += static_cast<int>(cell.words.size());
    if (report.total_words == 0) throw DomainError("ground truth carries zero words");

    // normalized predicted texts grouped by assigned grid cell
    std::map<std::pair<int, int>, std::multiset<std::string>> by_cell;
    std::multiset<std::string> everywhere;
    for (std::size_t i = 0; i < predicted_words.size(); ++i) {
        const std::string norm = normalize_text(predicted_words[i].text);
        by_cell[{static_cast<int>(assignments[i].row), static_cast<int>(assignments[i].col)}]
            .insert(norm);
        everywhere.insert(norm);
    }

    for (const auto& cell : truth) {
        CellCount count{cell.row_index, cell.col_index, static_cast<int>(cell.words.size()), 0};
        auto& pool = by_cell[{cell.row_index, cell.col_index}];
        for (const auto& word : cell.words) {
            const std::string norm = normalize_text(word);
            if (auto it = pool.find(norm); it != pool.end()) {
                pool.erase(it);
                everywhere.erase(everywhere.find(norm));
                ++count.correct;
                report.failures.push_back(WordFailure::Matched);
            } else if (everywhere.count(norm) > 0) {
                report.failures.push_back(WordFailure::WrongCell);
            } else if (!pool.empty()) {
                report.failures.push_back(WordFailure::TextMismatch);
            } else {
                report.failures.push_back(WordFailure::Unmatched);
            }
        }
        report.correct_words += count.correct;
        report.per_cell.push_back(count);
    }
    report.casa_percent = 100.0 * report.correct_words / report.total_words;
    return report;
}

BoundaryRecovery boundary_recovery(const std::vector<double>& predicted,
                                   const std::vector<double>& truth, double tolerance) {
    if (tolerance < 0) throw InvalidArgument("tolerance must be non-negative");
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < predicted.size(); ++i)
        for (std::size_t j = 0; j < truth.size(); ++j) {
            const double d = std::abs(predicted[i] - truth[j]);
            if (d <= tolerance) pairs.emplace_back(d, i, j);
        }
    std::sort(pairs.begin(), pairs.end());

    std::vector<bool> used_p(predicted.size(), false), used_t(truth.size(), false);
    BoundaryRecovery rec;
    double abs_err = 0.0;
    for (const auto& [d, i, j] : pairs) {
        if (used_p[i] || used_t[j]) continue;
        used_p[i] = used_t[j] = true;
        ++rec.matched;
        abs_err += d;
    }
    rec.precision = predicted.empty() ? (truth.empty() ? 1.0 : 0.0)
                                      : static_cast<double>(rec.matched) / predicted.size();
    rec.recall = truth.empty() ? (predicted.empty() ? 1.0 : 0.0)
                               : static_cast<double>(rec.matched) / truth.size();
    rec.mae = rec.matched > 0 ? abs_err / rec.matched : 0.0;
    return rec;
}

} // namespace gridex
