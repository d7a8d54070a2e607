#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ltlsn/formula.hpp"
#include "ltlsn/model.hpp"

namespace ltlsn {

/// Positions of the (infinite) path where a formula holds. Positions past
/// the fixed point repeat the fixed-point frame, so the set is the listed
/// prefix positions plus, when `holds_at_tail`, every position after it.
struct SatSet {
  std::vector<std::size_t> prefix_positions;  ///< sorted, all <= fixed point
  bool holds_at_tail = false;

  bool contains(std::size_t position, std::size_t fixed_point) const;
  friend bool operator==(const SatSet&, const SatSet&) = default;
};

/// `{1,2,3,4} (+tail)`
std::string to_string(const SatSet& s);

struct EvalOptions {
  /// Evaluate majority nodes (threshold test at the frame `horizon` steps
  /// ahead) instead of rejecting them.
  bool allow_majority = false;
};

/// Direct satisfaction check at path position `i`. Positions past the fixed
/// point clamp to it. Throws unknown_agent for agents missing from the
/// model, std::invalid_argument for majority nodes unless enabled.
bool eval_at(const Model& model, const Trace& trace, std::size_t i, const Formula& f,
             EvalOptions options = {});

SatSet satisfaction_set(const Model& model, const Trace& trace, const Formula& f,
                        EvalOptions options = {});

} // namespace ltlsn
