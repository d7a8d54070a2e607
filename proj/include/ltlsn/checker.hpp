#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "ltlsn/formula.hpp"
#include "ltlsn/model.hpp"
#include "ltlsn/semantics.hpp"

namespace ltlsn {

/// Per-position labels produced by the labeling checker.
///
/// The atom layer (every true B and N atom of the model, for every agent) is
/// answered from the trace and the network rather than materialized; the
/// compound subformulas of the checked formula are stored as one bit row
/// per subformula.
class LabelMap {
public:
  std::size_t positions() const noexcept { return frames_.size(); }
  std::size_t fixed_point() const noexcept { return frames_.size() - 1; }

  /// Whether `f` is labeled at position `i` (clamped to the fixed point).
  /// Compound formulas that were never registered are reported unlabeled.
  bool holds(std::size_t i, const Formula& f) const;

  /// Every label at position `i`: true atoms first (B atoms, then N atoms,
  /// in agent order), then compound subformulas in checking order.
  std::vector<Formula> labels_at(std::size_t i) const;

  /// Subformulas of the checked formula, children first.
  const std::vector<Formula>& subformulas() const noexcept { return order_; }

  /// Number of (subformula, position) labeling decisions made by `check`.
  std::size_t visits() const noexcept { return visits_; }

private:
  friend LabelMap init_labels(const Model&, const Trace&, const Formula&);
  friend LabelMap check(const Model&, const Trace&, const Formula&);

  bool atom_holds(std::size_t i, const Formula& atom) const;
  std::vector<char>& row(const Formula& f);
  const std::vector<char>* find_row(const Formula& f) const;

  Network network_;
  std::vector<BehaviorSet> frames_;
  std::vector<Formula> order_;
  std::unordered_map<Formula, std::size_t> index_;
  std::vector<std::vector<char>> rows_;  ///< rows_[index_[f]][i]
  std::size_t visits_ = 0;
};

/// Labels every position with its true atoms and registers the subformulas
/// of `f` with empty labels.
LabelMap init_labels(const Model& model, const Trace& trace, const Formula& f);

/// Bottom-up labeling: each subformula is processed once, after its
/// children, with one pass over the positions 0..fixed point.
LabelMap check(const Model& model, const Trace& trace, const Formula& f);

SatSet s_set_from_labels(const LabelMap& labels, const Formula& f);

} // namespace ltlsn
