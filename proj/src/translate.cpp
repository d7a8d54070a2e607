#include "ltlsn/translate.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <unordered_map>

namespace ltlsn {

namespace {

/// Memo table keyed by node identity. Keeps the key formula alive so a
/// freed node's address can never alias a later one.
template <typename Value>
class NodeMemo {
public:
  const Value* find(const Formula& f) const
  {
    auto it = table_.find(f.id());
    return it == table_.end() ? nullptr : &it->second.second;
  }
  const Value& put(const Formula& f, Value v)
  {
    return table_.insert_or_assign(f.id(), std::pair{f, std::move(v)}).first->second.second;
  }

private:
  std::unordered_map<const void*, std::pair<Formula, Value>> table_;
};

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    throw std::overflow_error("cost measure exceeds 64 bits");
  return a * b;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b)
{
  if (b > std::numeric_limits<std::uint64_t>::max() - a)
    throw std::overflow_error("cost measure exceeds 64 bits");
  return a + b;
}

// Balanced, so that 3^n terms nest only about n·log2(3) levels deep.
Formula disjoin_range(const std::vector<Formula>& terms, std::size_t lo, std::size_t hi)
{
  if (hi - lo == 1)
    return terms[lo];
  std::size_t mid = lo + (hi - lo) / 2;
  return Formula::disjunction(disjoin_range(terms, lo, mid), disjoin_range(terms, mid, hi));
}

Formula disjoin_all(const std::vector<Formula>& terms)
{
  if (terms.empty())
    return Formula::bottom();
  return disjoin_range(terms, 0, terms.size());
}

} // namespace

// ---------------------------------------------------------------------------
// Majority

std::vector<MajorityTerm> majority_terms(const std::vector<std::string>& agents,
                                         const std::string& agent, const Threshold& threshold)
{
  if (!std::is_sorted(agents.begin(), agents.end()))
    throw std::invalid_argument("agent list must be sorted");
  if (!std::binary_search(agents.begin(), agents.end(), agent))
    throw unknown_agent(agent);
  if (agents.size() >= 31)
    throw expansion_limit_error("too many agents to enumerate majority terms");

  const std::uint32_t universe = (1u << agents.size()) - 1;
  auto names = [&](std::uint32_t mask) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < agents.size(); ++k)
      if (mask & (1u << k))
        out.push_back(agents[k]);
    return out;
  };

  std::vector<MajorityTerm> terms;
  for (std::uint32_t nbrs = 1; nbrs <= universe; ++nbrs) {
    const auto degree = static_cast<std::size_t>(__builtin_popcount(nbrs));
    // Enumerate every submask of nbrs, including the empty one.
    for (std::uint32_t beh = nbrs;; beh = (beh - 1) & nbrs) {
      if (threshold.admits(static_cast<std::size_t>(__builtin_popcount(beh)), degree))
        terms.push_back({names(nbrs), names(beh)});
      if (beh == 0)
        break;
    }
  }
  std::sort(terms.begin(), terms.end());
  return terms;
}

namespace {

/// Majority formula with each behavior atom B(c) replaced by `behaves(c)`.
template <typename BehaviorAtom>
Formula majority_template(const std::vector<std::string>& agents, const std::string& agent,
                          const Threshold& threshold, BehaviorAtom&& behaves)
{
  std::vector<Formula> disjuncts;
  for (const MajorityTerm& term : majority_terms(agents, agent, threshold)) {
    std::optional<Formula> conj;
    auto add = [&](Formula f) { conj = conj ? Formula::conjunction(*conj, std::move(f)) : std::move(f); };
    for (const auto& b : agents) {
      Formula edge = Formula::neighbor(agent, b);
      bool in = std::binary_search(term.neighbors.begin(), term.neighbors.end(), b);
      add(in ? edge : Formula::negation(edge));
    }
    for (const auto& b : term.behaving)
      add(behaves(b));
    disjuncts.push_back(*conj);
  }
  return disjoin_all(disjuncts);
}

} // namespace

Formula majority_formula(const std::vector<std::string>& agents, const std::string& agent,
                         const Threshold& threshold, std::size_t limit)
{
  if (agents.size() > limit)
    throw expansion_limit_error("explicit majority over " + std::to_string(agents.size()) +
                                " agents exceeds the limit of " + std::to_string(limit));
  return majority_template(agents, agent, threshold,
                           [](const std::string& b) { return Formula::behaves(b); });
}

// ---------------------------------------------------------------------------
// Until elimination

Formula until_expansion(const Formula& phi, const Formula& psi, std::size_t bound)
{
  Formula step = psi;
  Formula expansion = psi;
  for (std::size_t i = 1; i <= bound; ++i) {
    step = Formula::conjunction(phi, Formula::next(step));
    expansion = Formula::disjunction(expansion, step);
  }
  return expansion;
}

namespace {

class UntilEliminator {
public:
  explicit UntilEliminator(std::size_t bound) : bound_(bound) {}

  Formula run(const Formula& f)
  {
    if (const Formula* hit = memo_.find(f))
      return *hit;
    Formula out = f;
    switch (f.kind()) {
    case Kind::negation: {
      Formula c = run(f.lhs());
      if (c.id() != f.lhs().id())
        out = Formula::negation(c);
      break;
    }
    case Kind::next: {
      Formula c = run(f.lhs());
      if (c.id() != f.lhs().id())
        out = Formula::next(c);
      break;
    }
    case Kind::conjunction: {
      Formula l = run(f.lhs());
      Formula r = run(f.rhs());
      if (l.id() != f.lhs().id() || r.id() != f.rhs().id())
        out = Formula::conjunction(l, r);
      break;
    }
    case Kind::until:
      // Translating the operands first and then expanding yields the same
      // tree as expanding first, but shares the translated operands.
      out = until_expansion(run(f.lhs()), run(f.rhs()), bound_);
      break;
    default:
      break;
    }
    return memo_.put(f, out);
  }

private:
  std::size_t bound_;
  NodeMemo<Formula> memo_;
};

} // namespace

Formula eliminate_until(const Formula& f, std::size_t bound)
{
  return UntilEliminator(bound).run(f);
}

// ---------------------------------------------------------------------------
// Cost measure

namespace {

// Behavior atoms below a Next weigh 2 + n², so that c(X B(a)) = 4 + 2n² is
// an instance of c(X f) = 2 c'(f) and every clause of t lowers the cost.
class CostMeasure {
public:
  explicit CostMeasure(std::size_t n_agents)
    : majority_(checked_mul(2, checked_mul(n_agents, n_agents))),
      shifted_behavior_(checked_add(2, checked_mul(n_agents, n_agents)))
  {
  }

  CostValue operator()(const Formula& f) { return {measure(f, false)}; }

private:
  std::uint64_t measure(const Formula& f, bool shifted)
  {
    NodeMemo<std::uint64_t>& memo = shifted ? shifted_memo_ : plain_memo_;
    if (const std::uint64_t* hit = memo.find(f))
      return *hit;
    std::uint64_t c = 0;
    switch (f.kind()) {
    case Kind::top:
    case Kind::neighbor:
      c = 1;
      break;
    case Kind::behaves:
      c = shifted ? shifted_behavior_ : 1;
      break;
    case Kind::majority:
      c = majority_;
      break;
    case Kind::negation:
      c = checked_add(1, measure(f.lhs(), shifted));
      break;
    case Kind::conjunction:
      c = checked_add(1, std::max(measure(f.lhs(), shifted), measure(f.rhs(), shifted)));
      break;
    case Kind::next:
      c = checked_mul(2, measure(f.lhs(), true));
      break;
    case Kind::until:
      throw std::invalid_argument("cost measure is undefined for Until");
    }
    return memo.put(f, c);
  }

  std::uint64_t majority_;
  std::uint64_t shifted_behavior_;
  NodeMemo<std::uint64_t> plain_memo_;
  NodeMemo<std::uint64_t> shifted_memo_;
};

} // namespace

CostValue cost(const Formula& f, std::size_t n_agents)
{
  return CostMeasure(n_agents)(f);
}

// ---------------------------------------------------------------------------
// Next elimination

bool is_propositional(const Formula& f)
{
  for (const Formula& g : subformulas(f))
    if (g.kind() == Kind::next || g.kind() == Kind::until)
      return false;
  return true;
}

namespace {

class NextEliminator {
public:
  NextEliminator(std::size_t n_agents, const TranslateOptions& options)
    : cost_(n_agents), options_(options)
  {
  }

  /// t(f)
  Formula translate(const Formula& f)
  {
    if (const Formula* hit = plain_.find(f))
      return *hit;
    Formula out = f;
    switch (f.kind()) {
    case Kind::negation:
      out = Formula::negation(translate(f.lhs()));
      break;
    case Kind::conjunction:
      out = Formula::conjunction(translate(f.lhs()), translate(f.rhs()));
      break;
    case Kind::next:
      out = translate_next(f.lhs());
      break;
    case Kind::until:
      throw std::invalid_argument("Until node in formula passed to to_propositional");
    default:
      break;
    }
    return plain_.put(f, out);
  }

private:
  /// t(X g)
  Formula translate_next(const Formula& g)
  {
    if (const Formula* hit = shifted_.find(g))
      return *hit;
    Formula before = Formula::next(g);
    Formula out = g;
    switch (g.kind()) {
    case Kind::top:
      rewrite(before, g);
      out = g;
      break;
    case Kind::neighbor:
      rewrite(before, g);
      out = g;
      break;
    case Kind::behaves: {
      Formula after = Formula::disjunction(g, Formula::majority(g.agent(), 0));
      rewrite(before, after);
      out = translate(after);
      break;
    }
    case Kind::majority: {
      Formula after = Formula::majority(g.agent(), g.horizon() + 1);
      rewrite(before, after);
      out = after;
      break;
    }
    case Kind::conjunction: {
      rewrite(before, Formula::conjunction(Formula::next(g.lhs()), Formula::next(g.rhs())));
      out = Formula::conjunction(translate_next(g.lhs()), translate_next(g.rhs()));
      break;
    }
    case Kind::negation: {
      rewrite(before, Formula::negation(Formula::next(g.lhs())));
      out = Formula::negation(translate_next(g.lhs()));
      break;
    }
    case Kind::next: {
      Formula inner = translate_next(g.lhs());
      rewrite(before, Formula::next(inner));
      out = translate_next(inner);
      break;
    }
    case Kind::until:
      throw std::invalid_argument("Until node in formula passed to to_propositional");
    }
    return shifted_.put(g, out);
  }

  void rewrite(const Formula& before, const Formula& after)
  {
    CostValue cb = cost_(before);
    CostValue ca = cost_(after);
    if (!(cb > ca))
      throw std::logic_error("rewrite of " + render(before) + " does not decrease the cost (" +
                             std::to_string(cb.value) + " -> " + std::to_string(ca.value) + ")");
    if (options_.on_rewrite)
      options_.on_rewrite(before, after, cb, ca);
  }

  CostMeasure cost_;
  const TranslateOptions& options_;
  NodeMemo<Formula> plain_;
  NodeMemo<Formula> shifted_;
};

} // namespace

Formula to_propositional(const Formula& f, const std::vector<std::string>& agents,
                         const Threshold& threshold, const TranslateOptions& options)
{
  Formula out = NextEliminator(agents.size(), options).translate(f);
  if (options.expand_majority)
    out = expand_majority(out, agents, threshold, options.majority_limit);
  return out;
}

// ---------------------------------------------------------------------------
// Explicit majority expansion

namespace {

constexpr std::size_t expansion_node_budget = 10'000'000;

class MajorityExpander {
public:
  MajorityExpander(const std::vector<std::string>& agents, const Threshold& threshold)
    : agents_(agents), threshold_(threshold)
  {
  }

  Formula run(const Formula& f)
  {
    if (const Formula* hit = memo_.find(f))
      return *hit;
    Formula out = f;
    switch (f.kind()) {
    case Kind::majority:
      out = majority(f.agent(), f.horizon());
      break;
    case Kind::negation:
      out = Formula::negation(run(f.lhs()));
      break;
    case Kind::next:
      out = Formula::next(run(f.lhs()));
      break;
    case Kind::conjunction:
      out = Formula::conjunction(run(f.lhs()), run(f.rhs()));
      break;
    case Kind::until:
      out = Formula::until(run(f.lhs()), run(f.rhs()));
      break;
    default:
      break;
    }
    check_budget(out);
    return memo_.put(f, out);
  }

private:
  /// B(c) shifted `horizon` steps ahead, as a propositional formula.
  Formula behaves(const std::string& c, unsigned horizon)
  {
    if (horizon == 0)
      return Formula::behaves(c);
    auto key = std::pair{c, horizon};
    if (auto it = behaves_.find(key); it != behaves_.end())
      return it->second;
    Formula out = Formula::disjunction(behaves(c, horizon - 1), majority(c, horizon - 1));
    check_budget(out);
    return behaves_.emplace(key, out).first->second;
  }

  Formula majority(const std::string& a, unsigned horizon)
  {
    auto key = std::pair{a, horizon};
    if (auto it = majority_.find(key); it != majority_.end())
      return it->second;
    Formula out = majority_template(agents_, a, threshold_,
                                    [&](const std::string& c) { return behaves(c, horizon); });
    check_budget(out);
    return majority_.emplace(key, out).first->second;
  }

  static void check_budget(const Formula& f)
  {
    if (f.size() > expansion_node_budget)
      throw expansion_limit_error("explicit majority expansion exceeds " +
                                  std::to_string(expansion_node_budget) + " nodes");
  }

  const std::vector<std::string>& agents_;
  Threshold threshold_;
  NodeMemo<Formula> memo_;
  std::map<std::pair<std::string, unsigned>, Formula> behaves_;
  std::map<std::pair<std::string, unsigned>, Formula> majority_;
};

} // namespace

Formula expand_majority(const Formula& f, const std::vector<std::string>& agents,
                        const Threshold& threshold, std::size_t limit)
{
  if (agents.size() > limit)
    throw expansion_limit_error("explicit majority over " + std::to_string(agents.size()) +
                                " agents exceeds the limit of " + std::to_string(limit));
  return MajorityExpander(agents, threshold).run(f);
}

// ---------------------------------------------------------------------------
// Propositional evaluation

namespace {

class PropEvaluator {
public:
  PropEvaluator(const BehaviorSet& b, const Network& network, const Threshold& threshold)
    : network_(network), threshold_(threshold)
  {
    if (b.universe() != network.size())
      throw std::invalid_argument("behavior set does not match the agent set");
    frames_.push_back(b);
  }

  bool eval(const Formula& f)
  {
    if (const bool* hit = memo_.find(f))
      return *hit;
    bool v = false;
    switch (f.kind()) {
    case Kind::top:
      v = true;
      break;
    case Kind::behaves:
      v = frames_.front().contains(network_.index_of(f.agent()));
      break;
    case Kind::neighbor:
      v = network_.adjacent(network_.index_of(f.agent()), network_.index_of(f.other()));
      break;
    case Kind::majority: {
      AgentIndex a = network_.index_of(f.agent());
      const BehaviorSet& frame = successor(f.horizon());
      auto nbrs = network_.neighbors(a);
      std::size_t behaving = static_cast<std::size_t>(std::count_if(
        nbrs.begin(), nbrs.end(), [&](AgentIndex n) { return frame.contains(n); }));
      v = threshold_.admits(behaving, nbrs.size());
      break;
    }
    case Kind::negation:
      v = !eval(f.lhs());
      break;
    case Kind::conjunction:
      v = eval(f.lhs()) && eval(f.rhs());
      break;
    case Kind::next:
    case Kind::until:
      throw std::invalid_argument("temporal node in formula passed to eval_prop");
    }
    return memo_.put(f, v);
  }

private:
  const BehaviorSet& successor(std::size_t k)
  {
    while (frames_.size() <= k)
      frames_.push_back(step(network_, threshold_, frames_.back()));
    return frames_[k];
  }

  const Network& network_;
  Threshold threshold_;
  std::vector<BehaviorSet> frames_;
  NodeMemo<bool> memo_;
};

} // namespace

bool eval_prop(const Formula& f, const BehaviorSet& b, const Network& network,
               const Threshold& threshold)
{
  return PropEvaluator(b, network, threshold).eval(f);
}

} // namespace ltlsn
