#include "ltlsn/checker.hpp"

#include <algorithm>

namespace ltlsn {

bool LabelMap::atom_holds(std::size_t i, const Formula& atom) const
{
  switch (atom.kind()) {
  case Kind::top:
    return true;
  case Kind::behaves: {
    auto a = network_.find(atom.agent());
    return a && frames_[i].contains(*a);
  }
  case Kind::neighbor: {
    auto a = network_.find(atom.agent());
    auto b = network_.find(atom.other());
    return a && b && network_.adjacent(*a, *b);
  }
  default:
    return false;
  }
}

const std::vector<char>* LabelMap::find_row(const Formula& f) const
{
  auto it = index_.find(f);
  return it == index_.end() ? nullptr : &rows_[it->second];
}

std::vector<char>& LabelMap::row(const Formula& f)
{
  return rows_[index_.at(f)];
}

bool LabelMap::holds(std::size_t i, const Formula& f) const
{
  i = std::min(i, fixed_point());
  if (const auto* r = find_row(f))
    return (*r)[i] != 0;
  return f.is_atom() && atom_holds(i, f);
}

std::vector<Formula> LabelMap::labels_at(std::size_t i) const
{
  i = std::min(i, fixed_point());
  std::vector<Formula> out;
  out.push_back(Formula::top());
  for (AgentIndex a : frames_[i].members())
    out.push_back(Formula::behaves(network_.name(a)));
  for (AgentIndex a = 0; a < network_.size(); ++a)
    for (AgentIndex b : network_.neighbors(a))
      out.push_back(Formula::neighbor(network_.name(a), network_.name(b)));
  for (std::size_t k = 0; k < order_.size(); ++k)
    if (!order_[k].is_atom() && rows_[k][i])
      out.push_back(order_[k]);
  return out;
}

LabelMap init_labels(const Model& model, const Trace& trace, const Formula& f)
{
  LabelMap lm;
  lm.network_ = model.network();
  lm.frames_ = trace.frames;
  lm.order_ = subformulas(f);

  for (const Formula& g : lm.order_) {
    switch (g.kind()) {
    case Kind::behaves:
      model.network().index_of(g.agent());
      break;
    case Kind::neighbor:
      model.network().index_of(g.agent());
      model.network().index_of(g.other());
      break;
    case Kind::majority:
      throw std::invalid_argument("majority node in formula passed to the labeling checker");
    default:
      break;
    }
  }

  const std::size_t positions = lm.frames_.size();
  lm.rows_.reserve(lm.order_.size());
  for (std::size_t k = 0; k < lm.order_.size(); ++k) {
    const Formula& g = lm.order_[k];
    lm.index_.emplace(g, k);
    std::vector<char> r(positions, 0);
    if (g.is_atom())
      for (std::size_t i = 0; i < positions; ++i)
        r[i] = lm.atom_holds(i, g);
    lm.rows_.push_back(std::move(r));
  }
  return lm;
}

LabelMap check(const Model& model, const Trace& trace, const Formula& f)
{
  LabelMap lm = init_labels(model, trace, f);
  const std::size_t last = lm.fixed_point();

  for (std::size_t k = 0; k < lm.order_.size(); ++k) {
    const Formula& g = lm.order_[k];
    std::vector<char>& out = lm.rows_[k];
    lm.visits_ += last + 1;
    if (g.is_atom())
      continue;

    const std::vector<char>& left = lm.row(g.lhs());
    switch (g.kind()) {
    case Kind::negation:
      for (std::size_t i = 0; i <= last; ++i)
        out[i] = !left[i];
      break;
    case Kind::conjunction: {
      const std::vector<char>& right = lm.row(g.rhs());
      for (std::size_t i = 0; i <= last; ++i)
        out[i] = left[i] && right[i];
      break;
    }
    case Kind::next:
      // The fixed-point position is its own successor.
      for (std::size_t i = 0; i <= last; ++i)
        out[i] = left[std::min(i + 1, last)];
      break;
    case Kind::until: {
      const std::vector<char>& right = lm.row(g.rhs());
      out[last] = right[last];
      for (std::size_t i = last; i-- > 0;)
        out[i] = right[i] || (left[i] && out[i + 1]);
      break;
    }
    default:
      break;
    }
  }
  return lm;
}

SatSet s_set_from_labels(const LabelMap& labels, const Formula& f)
{
  SatSet s;
  for (std::size_t i = 0; i <= labels.fixed_point(); ++i)
    if (labels.holds(i, f))
      s.prefix_positions.push_back(i);
  s.holds_at_tail = labels.holds(labels.fixed_point(), f);
  return s;
}

} // namespace ltlsn
