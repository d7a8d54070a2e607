#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ltlsn {

/// Core node kinds. Derived connectives (false, |, ->, F, G) are expanded
/// when formulas are built, so they never appear here.
enum class Kind {
  top,
  neighbor,  ///< N(a,b): b is a neighbor of a
  behaves,   ///< B(a): agent a exhibits the behavior
  negation,
  conjunction,
  next,
  until,
  majority,  ///< fraction of a's neighbors behaving meets the threshold
};

/// Immutable formula tree with structural equality. Copies share nodes.
///
/// `majority` nodes are produced only by the propositional translation.
/// A majority node carries a horizon `k`: it holds at a behavior set B when
/// agent a passes the threshold test in the k-th diffusion successor of B.
/// Horizon 0 is the plain majority abbreviation.
class Formula {
public:
  static Formula top();
  static Formula neighbor(std::string a, std::string b);
  static Formula behaves(std::string a);
  static Formula majority(std::string a, unsigned horizon = 0);
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula next(Formula f);
  static Formula until(Formula lhs, Formula rhs);

  // Abbreviations, expanded into core nodes.
  static Formula bottom();
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula eventually(Formula f);
  static Formula always(Formula f);

  Kind kind() const noexcept;
  /// Agent of B/MAJ atoms, first agent of N atoms.
  const std::string& agent() const;
  /// Second agent of N atoms.
  const std::string& other() const;
  unsigned horizon() const;
  /// Operand of unary nodes, left operand of binary nodes.
  const Formula& lhs() const;
  const Formula& rhs() const;

  bool is_atom() const noexcept;
  /// Number of core nodes (saturates at SIZE_MAX).
  std::size_t size() const noexcept;
  std::size_t hash() const noexcept;
  /// Stable identity of the shared node, for memoization.
  const void* id() const noexcept { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Node node);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

class syntax_error : public std::runtime_error {
public:
  syntax_error(std::size_t column, const std::string& what);
  /// 1-based column of the offending character.
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t column_;
};

struct ParseOptions {
  /// Accept `MAJ(a)` and `MAJ_k(a)` atoms (the display form of majority nodes).
  bool allow_majority = false;
};

/// Grammar, loosest to tightest binding:
///   `->` (right assoc), `|`, `&`, `U` (right assoc), prefix `! X F G`, atoms.
/// Atoms: `true`, `false`, `B(a)`, `N(a,b)`, parentheses.
Formula parse_formula(std::string_view text, ParseOptions options = {});

/// Fully parenthesized text that parses back to the same tree.
std::string render(const Formula& f);

inline std::size_t size(const Formula& f) { return f.size(); }

/// Distinct subformulas, children before parents, ascending by size.
std::vector<Formula> subformulas(const Formula& f);

/// Names of all agents mentioned by atoms of `f`, sorted and unique.
std::vector<std::string> agents_in(const Formula& f);

} // namespace ltlsn

template <>
struct std::hash<ltlsn::Formula> {
  std::size_t operator()(const ltlsn::Formula& f) const noexcept { return f.hash(); }
};
