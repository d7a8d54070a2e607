#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ltlsn/rational.hpp"

namespace ltlsn {

/// Position of an agent in the lexicographically sorted agent list of a
/// network. All iteration over agents follows this order.
using AgentIndex = std::size_t;

/// True for nonempty tokens made of ASCII letters, digits and underscores.
bool is_valid_agent_name(std::string_view name);

class unknown_agent : public std::invalid_argument {
public:
  explicit unknown_agent(const std::string& name);
  const std::string& name() const noexcept { return name_; }

private:
  std::string name_;
};

/// Subset of the agents of one network, stored as a bitmap over agent indices.
class BehaviorSet {
public:
  BehaviorSet() = default;
  explicit BehaviorSet(std::size_t universe) : bits_(universe, false) {}

  static BehaviorSet full(std::size_t universe);

  std::size_t universe() const noexcept { return bits_.size(); }
  bool contains(AgentIndex a) const { return a < bits_.size() && bits_[a]; }
  void insert(AgentIndex a) { bits_.at(a) = true; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  bool subset_of(const BehaviorSet& other) const;
  std::vector<AgentIndex> members() const;

  BehaviorSet& operator|=(const BehaviorSet& other);
  friend bool operator==(const BehaviorSet&, const BehaviorSet&) = default;

private:
  std::vector<bool> bits_;
};

/// Neighborhood relation over a fixed, sorted agent list. Immutable once
/// built. The relation is stored as given; `validate` reports whether it is
/// irreflexive, symmetric and serial.
class Network {
public:
  Network() = default;

  /// `agents` must be sorted and unique; `adjacency[a]` lists N(a).
  Network(std::vector<std::string> agents, std::vector<std::vector<AgentIndex>> adjacency);

  /// Keys are the agents. Every neighbor must itself be a key.
  static Network from_names(const std::map<std::string, std::set<std::string>>& neighbors);

  std::size_t size() const noexcept { return agents_.size(); }
  const std::vector<std::string>& agents() const noexcept { return agents_; }
  const std::string& name(AgentIndex a) const { return agents_.at(a); }

  std::optional<AgentIndex> find(std::string_view name) const;
  /// Like find, but throws unknown_agent.
  AgentIndex index_of(std::string_view name) const;

  std::span<const AgentIndex> neighbors(AgentIndex a) const { return adjacency_.at(a); }
  /// b ∈ N(a)
  bool adjacent(AgentIndex a, AgentIndex b) const;

  friend bool operator==(const Network&, const Network&) = default;

private:
  std::vector<std::string> agents_;
  std::vector<std::vector<AgentIndex>> adjacency_;
};

/// Adoption test applied to the fraction of an agent's neighbors that
/// behave. The default compares with `>=`; `strict` switches to `>`.
struct Threshold {
  Rational theta{0};
  bool strict = false;

  Threshold() = default;
  Threshold(Rational t, bool s = false) : theta(t), strict(s) {}

  bool admits(std::size_t behaving, std::size_t degree) const;

  friend bool operator==(const Threshold&, const Threshold&) = default;
};

class Model {
public:
  /// Throws std::invalid_argument when theta is outside [0,1] or `initial`
  /// is not a subset of the network's agents.
  Model(Network network, Threshold threshold, BehaviorSet initial);

  const Network& network() const noexcept { return network_; }
  const std::vector<std::string>& agents() const noexcept { return network_.agents(); }
  std::size_t agent_count() const noexcept { return network_.size(); }
  const Threshold& threshold() const noexcept { return threshold_; }
  const Rational& theta() const noexcept { return threshold_.theta; }
  const BehaviorSet& initial() const noexcept { return initial_; }

  /// Builds a behavior set from agent names; throws unknown_agent.
  BehaviorSet behaviors(const std::vector<std::string>& names) const;
  /// `{a,c}` with names in agent order.
  std::string format(const BehaviorSet& b) const;

  friend bool operator==(const Model&, const Model&) = default;

private:
  Network network_;
  Threshold threshold_;
  BehaviorSet initial_;
};

struct Violation {
  enum class Axiom { irreflexivity, symmetry, seriality };

  Axiom axiom;
  std::string agent;
  /// Second agent for symmetry violations: `other` ∈ N(agent) but agent ∉ N(other).
  std::string other;

  friend bool operator==(const Violation&, const Violation&) = default;
};

std::string to_string(Violation::Axiom axiom);
/// `symmetry(a,b)`, `seriality(b)`, `irreflexivity(a)`.
std::string to_string(const Violation& v);

/// Every violated network axiom, agent by agent in lexicographic order.
std::vector<Violation> validate(const Network& network);
std::vector<Violation> validate(const Model& model);

class model_parse_error : public std::runtime_error {
public:
  model_parse_error(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

class model_validation_error : public std::runtime_error {
public:
  explicit model_validation_error(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
  std::vector<Violation> violations_;
};

/// Reads the model-file format. Edges are closed symmetrically but the
/// network axioms are not enforced, so the result may fail `validate`.
Model parse_model_unvalidated(std::string_view text);

/// Reads the model-file format and rejects models that violate a network
/// axiom (model_validation_error). Syntax problems raise model_parse_error.
Model parse_model(std::string_view text);

/// Agents whose behaving-neighbor fraction in `b` passes the threshold.
/// Agents without neighbors never adopt.
BehaviorSet adopters(const Network& network, const Threshold& threshold, const BehaviorSet& b);
BehaviorSet adopters(const Model& model, const BehaviorSet& b);

/// One diffusion step: b ∪ adopters(b).
BehaviorSet step(const Network& network, const Threshold& threshold, const BehaviorSet& b);
BehaviorSet step(const Model& model, const BehaviorSet& b);

/// The unique diffusion path from the initial set up to its fixed point.
/// `frames[fixed_point]` is the first frame that maps to itself; every later
/// position of the path equals it.
struct Trace {
  std::vector<BehaviorSet> frames;
  std::size_t fixed_point = 0;

  /// Frame at an arbitrary path position (positions past the fixed point clamp).
  const BehaviorSet& at(std::size_t position) const;
  std::size_t clamp(std::size_t position) const
  {
    return position < fixed_point ? position : fixed_point;
  }

  friend bool operator==(const Trace&, const Trace&) = default;
};

/// Iterates `step` from the initial set. Throws std::logic_error if no
/// fixed point appears within |agents| steps.
Trace trace(const Model& model);

} // namespace ltlsn
