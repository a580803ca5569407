#ifndef GRIDEX_EVALUATE_HPP
#define GRIDEX_EVALUATE_HPP

#include <string>
#include <vector>

#include "gridex/geometry.hpp"

namespace gridex {

struct GroundTruthCell {
    int row_index = 0;
    int col_index = 0;
    double x_min = 0, y_min = 0, x_max = 0, y_max = 0;
    std::vector<std::string> words;
};

enum class WordFailure { Matched, TextMismatch, WrongCell, Unmatched };

struct CellCount {
    int row = 0, col = 0;
    int total = 0, correct = 0;
};

struct CasaReport {
    int total_words = 0;
    int correct_words = 0;
    double casa_percent = 0.0;
    std::vector<CellCount> per_cell;
    std::vector<WordFailure> failures; // one tag per ground-truth word, cell order
};

struct CellAssignment {
    std::size_t row = 0;
    std::size_t col = 0;
};

struct BoundaryRecovery {
    double precision = 0.0;
    double recall = 0.0;
    double mae = 0.0;
    int matched = 0;
};

// trim + collapse internal whitespace + ASCII case-fold
std::string normalize_text(const std::string& text);

// Assign each word by its center point; half-open intervals, a center
// exactly on a cut goes to the right/lower interval.
std::vector<CellAssignment> assign_words_to_cells(const std::vector<WordBox>& words,
                                                  const RegionPartition& partition);

// Cell-aware accuracy: a ground-truth word counts as correct only when a
// predicted word with matching normalized text was assigned to the same
// grid cell. Greedy per-cell multiset matching. Throws DomainError when
// the ground truth carries zero words.
CasaReport casa(const std::vector<WordBox>& predicted_words,
                const std::vector<CellAssignment>& assignments,
                const std::vector<GroundTruthCell>& truth);

// Greedy nearest matching within tolerance, each truth coordinate
// matched at most once; MAE over matched pairs.
BoundaryRecovery boundary_recovery(const std::vector<double>& predicted,
                                   const std::vector<double>& truth, double tolerance);

} // namespace gridex

#endif
