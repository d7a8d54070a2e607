#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltlsn/formula.hpp"
#include "ltlsn/model.hpp"

namespace ltlsn {

// Reduction of temporal formulas to propositional ones over a fixed agent
// set: Until is unrolled into Next steps, then Next is pushed through the
// connectives until it reaches atoms, where the network atoms are invariant
// and the behavior atoms turn into majority tests.

class expansion_limit_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t default_majority_limit = 10;

/// One disjunct of the explicit majority formula for an agent a: a's
/// neighbors are exactly `neighbors`, and the agents in `behaving` (a subset
/// of them) behave.
struct MajorityTerm {
  std::vector<std::string> neighbors;
  std::vector<std::string> behaving;

  friend bool operator==(const MajorityTerm&, const MajorityTerm&) = default;
  friend auto operator<=>(const MajorityTerm&, const MajorityTerm&) = default;
};

/// All (neighbors, behaving) pairs with nonempty neighbors whose fraction
/// passes the threshold, ordered lexicographically. `agents` must be sorted.
std::vector<MajorityTerm> majority_terms(const std::vector<std::string>& agents,
                                         const std::string& agent, const Threshold& threshold);

/// The explicit propositional majority formula: a disjunction with one
/// conjunction per majority term, joined as a balanced tree in term order.
/// The number of terms grows like 3^|agents|,
/// so agent sets larger than `limit` throw expansion_limit_error.
Formula majority_formula(const std::vector<std::string>& agents, const std::string& agent,
                         const Threshold& threshold, std::size_t limit = default_majority_limit);

/// psi | (phi & X psi) | (phi & X (phi & X psi)) | ... with bound+1
/// disjuncts, left-nested in ascending order.
Formula until_expansion(const Formula& phi, const Formula& psi, std::size_t bound);

/// Replaces every Until by its expansion with the given bound, bottom-up.
Formula eliminate_until(const Formula& f, std::size_t bound);

/// Natural-valued termination measure of the Next-elimination rewriting.
struct CostValue {
  std::uint64_t value = 0;

  friend auto operator<=>(const CostValue&, const CostValue&) = default;
};

/// Atoms cost 1, a majority node 2·n², `!f` 1+c(f), `f & g` 1+max, and
/// `X f` 2·c'(f), where c' is the same measure except that behavior atoms
/// weigh 2+n² (so `X B(a)` costs 4+2·n²). Strictly decreasing under every
/// rewrite for n ≥ 2. Throws std::invalid_argument on Until and
/// std::overflow_error if the value exceeds 64 bits.
CostValue cost(const Formula& f, std::size_t n_agents);

struct TranslateOptions {
  /// Replace majority nodes by their explicit propositional formula.
  bool expand_majority = false;
  std::size_t majority_limit = default_majority_limit;
  /// Called for every rewrite step with the rewritten formula, its
  /// replacement and their costs.
  std::function<void(const Formula& before, const Formula& after, CostValue before_cost,
                     CostValue after_cost)>
    on_rewrite;
};

/// True when `f` has no Next and no Until nodes.
bool is_propositional(const Formula& f);

/// Removes every Next node. `f` must be Until-free (std::invalid_argument
/// otherwise). Each rewrite is checked to strictly decrease the cost measure;
/// a violation throws std::logic_error.
Formula to_propositional(const Formula& f, const std::vector<std::string>& agents,
                         const Threshold& threshold, const TranslateOptions& options = {});

/// Replaces majority nodes by explicit formulas. A node with horizon k
/// substitutes each behavior atom by its own k-step expansion.
/// Throws expansion_limit_error when the agent set exceeds `limit` or the
/// result would exceed ten million nodes.
Formula expand_majority(const Formula& f, const std::vector<std::string>& agents,
                        const Threshold& threshold, std::size_t limit = default_majority_limit);

/// Truth value of a propositional formula at behavior set `b`. Majority
/// nodes are decided by the exact fraction test at the horizon-th diffusion
/// successor of `b`. Throws std::invalid_argument on Next/Until.
bool eval_prop(const Formula& f, const BehaviorSet& b, const Network& network,
               const Threshold& threshold);

} // namespace ltlsn
