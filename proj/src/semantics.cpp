#include "ltlsn/semantics.hpp"

#include <algorithm>

namespace ltlsn {

bool SatSet::contains(std::size_t position, std::size_t fixed_point) const
{
  if (position >= fixed_point)
    return holds_at_tail;
  return std::binary_search(prefix_positions.begin(), prefix_positions.end(), position);
}

std::string to_string(const SatSet& s)
{
  std::string out = "{";
  for (std::size_t k = 0; k < s.prefix_positions.size(); ++k) {
    if (k > 0)
      out += ',';
    out += std::to_string(s.prefix_positions[k]);
  }
  out += '}';
  if (s.holds_at_tail)
    out += " (+tail)";
  return out;
}

namespace {

class Evaluator {
public:
  Evaluator(const Model& model, const Trace& trace, EvalOptions options)
    : model_(model), trace_(trace), options_(options)
  {
  }

  bool eval(std::size_t i, const Formula& f) const
  {
    i = trace_.clamp(i);
    switch (f.kind()) {
    case Kind::top:
      return true;
    case Kind::behaves:
      return trace_.frames[i].contains(model_.network().index_of(f.agent()));
    case Kind::neighbor:
      return model_.network().adjacent(model_.network().index_of(f.agent()),
                                       model_.network().index_of(f.other()));
    case Kind::negation:
      return !eval(i, f.lhs());
    case Kind::conjunction:
      return eval(i, f.lhs()) && eval(i, f.rhs());
    case Kind::next:
      return eval(i + 1, f.lhs());
    case Kind::until:
      // Once the fixed point is reached every later position looks the
      // same, so the search can stop there.
      for (std::size_t j = i;; ++j) {
        if (eval(j, f.rhs()))
          return true;
        if (j == trace_.fixed_point || !eval(j, f.lhs()))
          return false;
      }
    case Kind::majority: {
      if (!options_.allow_majority)
        throw std::invalid_argument("majority node in formula passed to the path evaluator");
      const Network& net = model_.network();
      AgentIndex a = net.index_of(f.agent());
      const BehaviorSet& frame = trace_.at(i + f.horizon());
      auto nbrs = net.neighbors(a);
      std::size_t behaving = static_cast<std::size_t>(
        std::count_if(nbrs.begin(), nbrs.end(), [&](AgentIndex n) { return frame.contains(n); }));
      return model_.threshold().admits(behaving, nbrs.size());
    }
    }
    return false;
  }

private:
  const Model& model_;
  const Trace& trace_;
  EvalOptions options_;
};

} // namespace

bool eval_at(const Model& model, const Trace& trace, std::size_t i, const Formula& f,
             EvalOptions options)
{
  return Evaluator(model, trace, options).eval(i, f);
}

SatSet satisfaction_set(const Model& model, const Trace& trace, const Formula& f,
                        EvalOptions options)
{
  Evaluator ev(model, trace, options);
  SatSet s;
  for (std::size_t i = 0; i <= trace.fixed_point; ++i)
    if (ev.eval(i, f))
      s.prefix_positions.push_back(i);
  s.holds_at_tail = !s.prefix_positions.empty() && s.prefix_positions.back() == trace.fixed_point;
  return s;
}

} // namespace ltlsn
