#include "ltlsn/model.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ltlsn {

bool is_valid_agent_name(std::string_view name)
{
  return !name.empty() && std::all_of(name.begin(), name.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

unknown_agent::unknown_agent(const std::string& name)
  : std::invalid_argument("unknown agent '" + name + "'"), name_(name)
{
}

// ---------------------------------------------------------------------------
// BehaviorSet

BehaviorSet BehaviorSet::full(std::size_t universe)
{
  BehaviorSet b;
  b.bits_.assign(universe, true);
  return b;
}

std::size_t BehaviorSet::count() const
{
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

bool BehaviorSet::subset_of(const BehaviorSet& other) const
{
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !other.contains(i))
      return false;
  return true;
}

std::vector<AgentIndex> BehaviorSet::members() const
{
  std::vector<AgentIndex> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i])
      out.push_back(i);
  return out;
}

BehaviorSet& BehaviorSet::operator|=(const BehaviorSet& other)
{
  if (other.universe() != universe())
    throw std::invalid_argument("behavior sets over different agent sets");
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (other.bits_[i])
      bits_[i] = true;
  return *this;
}

// ---------------------------------------------------------------------------
// Network

Network::Network(std::vector<std::string> agents, std::vector<std::vector<AgentIndex>> adjacency)
  : agents_(std::move(agents)), adjacency_(std::move(adjacency))
{
  if (agents_.size() != adjacency_.size())
    throw std::invalid_argument("adjacency size does not match agent count");
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    if (!is_valid_agent_name(agents_[i]))
      throw std::invalid_argument("invalid agent name '" + agents_[i] + "'");
    if (i > 0 && !(agents_[i - 1] < agents_[i]))
      throw std::invalid_argument("agents must be sorted and unique");
  }
  for (auto& row : adjacency_) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    if (!row.empty() && row.back() >= agents_.size())
      throw std::invalid_argument("neighbor index out of range");
  }
}

Network Network::from_names(const std::map<std::string, std::set<std::string>>& neighbors)
{
  std::vector<std::string> agents;
  agents.reserve(neighbors.size());
  for (const auto& [name, _] : neighbors)
    agents.push_back(name);

  auto lookup = [&](const std::string& name) -> AgentIndex {
    auto it = std::lower_bound(agents.begin(), agents.end(), name);
    if (it == agents.end() || *it != name)
      throw unknown_agent(name);
    return static_cast<AgentIndex>(it - agents.begin());
  };

  std::vector<std::vector<AgentIndex>> adjacency;
  adjacency.reserve(agents.size());
  for (const auto& [_, row] : neighbors) {
    std::vector<AgentIndex> indices;
    for (const auto& n : row)
      indices.push_back(lookup(n));
    adjacency.push_back(std::move(indices));
  }
  return Network(std::move(agents), std::move(adjacency));
}

std::optional<AgentIndex> Network::find(std::string_view name) const
{
  auto it = std::lower_bound(agents_.begin(), agents_.end(), name,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == agents_.end() || *it != name)
    return std::nullopt;
  return static_cast<AgentIndex>(it - agents_.begin());
}

AgentIndex Network::index_of(std::string_view name) const
{
  if (auto idx = find(name))
    return *idx;
  throw unknown_agent(std::string(name));
}

bool Network::adjacent(AgentIndex a, AgentIndex b) const
{
  const auto& row = adjacency_.at(a);
  return std::binary_search(row.begin(), row.end(), b);
}

// ---------------------------------------------------------------------------
// Threshold and Model

bool Threshold::admits(std::size_t behaving, std::size_t degree) const
{
  if (degree == 0)
    return false;
  Rational fraction(static_cast<std::int64_t>(behaving), static_cast<std::int64_t>(degree));
  return strict ? fraction > theta : fraction >= theta;
}

Model::Model(Network network, Threshold threshold, BehaviorSet initial)
  : network_(std::move(network)), threshold_(threshold), initial_(std::move(initial))
{
  if (threshold_.theta < 0 || threshold_.theta > 1)
    throw std::invalid_argument("theta " + to_string(threshold_.theta) + " outside [0,1]");
  if (initial_.universe() != network_.size())
    throw std::invalid_argument("initial behavior set does not match the agent set");
}

BehaviorSet Model::behaviors(const std::vector<std::string>& names) const
{
  BehaviorSet b(agent_count());
  for (const auto& n : names)
    b.insert(network_.index_of(n));
  return b;
}

std::string Model::format(const BehaviorSet& b) const
{
  std::string out = "{";
  bool first = true;
  for (AgentIndex a : b.members()) {
    if (!first)
      out += ',';
    out += network_.name(a);
    first = false;
  }
  out += '}';
  return out;
}

// ---------------------------------------------------------------------------
// Validation

std::string to_string(Violation::Axiom axiom)
{
  switch (axiom) {
  case Violation::Axiom::irreflexivity:
    return "irreflexivity";
  case Violation::Axiom::symmetry:
    return "symmetry";
  case Violation::Axiom::seriality:
    return "seriality";
  }
  return "?";
}

std::string to_string(const Violation& v)
{
  if (v.axiom == Violation::Axiom::symmetry)
    return to_string(v.axiom) + "(" + v.agent + "," + v.other + ")";
  return to_string(v.axiom) + "(" + v.agent + ")";
}

std::vector<Violation> validate(const Network& network)
{
  std::vector<Violation> out;
  for (AgentIndex a = 0; a < network.size(); ++a) {
    if (network.adjacent(a, a))
      out.push_back({Violation::Axiom::irreflexivity, network.name(a), {}});
    for (AgentIndex b : network.neighbors(a))
      if (b != a && !network.adjacent(b, a))
        out.push_back({Violation::Axiom::symmetry, network.name(a), network.name(b)});
    if (network.neighbors(a).empty())
      out.push_back({Violation::Axiom::seriality, network.name(a), {}});
  }
  return out;
}

std::vector<Violation> validate(const Model& model)
{
  return validate(model.network());
}

// ---------------------------------------------------------------------------
// Model file parsing

model_parse_error::model_parse_error(std::size_t line, std::size_t column, const std::string& what)
  : std::runtime_error(line == 0 ? what
                                 : "line " + std::to_string(line) + ", column " +
                                     std::to_string(column) + ": " + what),
    line_(line), column_(column)
{
}

namespace {

std::string join_violations(const std::vector<Violation>& violations)
{
  std::string out = "network axioms violated:";
  for (const auto& v : violations)
    out += " " + to_string(v);
  return out;
}

struct Token {
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize_line(std::string_view line, std::size_t line_no)
{
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#')
      break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != '#' && !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    tokens.push_back({std::string(line.substr(start, i - start)), line_no, start + 1});
  }
  return tokens;
}

void require_name(const Token& t)
{
  if (!is_valid_agent_name(t.text))
    throw model_parse_error(t.line, t.column, "invalid agent name '" + t.text + "'");
}

} // namespace

model_validation_error::model_validation_error(std::vector<Violation> violations)
  : std::runtime_error(join_violations(violations)), violations_(std::move(violations))
{
}

Model parse_model_unvalidated(std::string_view text)
{
  std::optional<std::vector<Token>> agents;
  std::optional<Token> theta_token;
  std::optional<std::vector<Token>> initial;
  std::vector<std::pair<Token, Token>> edges;
  bool strict = false;
  std::optional<std::size_t> strict_line;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos)
      eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    ++line_no;
    pos = eol + 1;

    auto tokens = tokenize_line(line, line_no);
    if (tokens.empty())
      continue;
    const Token& kw = tokens.front();
    std::vector<Token> args(tokens.begin() + 1, tokens.end());

    if (kw.text == "agents") {
      if (agents)
        throw model_parse_error(kw.line, kw.column, "duplicate 'agents' line");
      if (args.empty())
        throw model_parse_error(kw.line, kw.column + kw.text.size(), "'agents' needs at least one name");
      std::set<std::string> seen;
      for (const auto& t : args) {
        require_name(t);
        if (!seen.insert(t.text).second)
          throw model_parse_error(t.line, t.column, "duplicate agent '" + t.text + "'");
      }
      agents = std::move(args);
    } else if (kw.text == "theta") {
      if (theta_token)
        throw model_parse_error(kw.line, kw.column, "duplicate 'theta' line");
      if (args.size() != 1)
        throw model_parse_error(kw.line, kw.column, "'theta' takes exactly one value");
      theta_token = args.front();
    } else if (kw.text == "edge") {
      if (args.size() != 2)
        throw model_parse_error(kw.line, kw.column, "'edge' takes exactly two agents");
      require_name(args[0]);
      require_name(args[1]);
      edges.emplace_back(args[0], args[1]);
    } else if (kw.text == "initial") {
      if (initial)
        throw model_parse_error(kw.line, kw.column, "duplicate 'initial' line");
      for (const auto& t : args)
        require_name(t);
      initial = std::move(args);
    } else if (kw.text == "strict") {
      if (!args.empty())
        throw model_parse_error(args.front().line, args.front().column,
                                "'strict' takes no arguments");
      if (strict_line)
        throw model_parse_error(kw.line, kw.column, "duplicate 'strict' line");
      strict = true;
      strict_line = kw.line;
    } else {
      throw model_parse_error(kw.line, kw.column, "unknown keyword '" + kw.text + "'");
    }
  }

  if (!agents)
    throw model_parse_error(0, 0, "missing 'agents' line");
  if (!theta_token)
    throw model_parse_error(0, 0, "missing 'theta' line");
  if (!initial)
    throw model_parse_error(0, 0, "missing 'initial' line");

  Rational theta;
  try {
    theta = parse_rational(theta_token->text);
  } catch (const std::exception& e) {
    throw model_parse_error(theta_token->line, theta_token->column, e.what());
  }
  if (theta < 0 || theta > 1)
    throw model_parse_error(theta_token->line, theta_token->column,
                            "theta " + theta_token->text + " outside [0,1]");

  std::map<std::string, std::set<std::string>> neighbors;
  for (const auto& t : *agents)
    neighbors[t.text];
  auto known = [&](const Token& t) {
    if (!neighbors.contains(t.text))
      throw model_parse_error(t.line, t.column, "unknown agent '" + t.text + "'");
  };
  for (const auto& [a, b] : edges) {
    known(a);
    known(b);
    neighbors[a.text].insert(b.text);
    neighbors[b.text].insert(a.text);
  }

  Network network = Network::from_names(neighbors);
  BehaviorSet init(network.size());
  for (const auto& t : *initial) {
    known(t);
    init.insert(network.index_of(t.text));
  }
  return Model(std::move(network), Threshold(theta, strict), std::move(init));
}

Model parse_model(std::string_view text)
{
  Model model = parse_model_unvalidated(text);
  if (auto violations = validate(model); !violations.empty())
    throw model_validation_error(std::move(violations));
  return model;
}

// ---------------------------------------------------------------------------
// Diffusion

BehaviorSet adopters(const Network& network, const Threshold& threshold, const BehaviorSet& b)
{
  if (b.universe() != network.size())
    throw std::invalid_argument("behavior set does not match the agent set");
  BehaviorSet out(network.size());
  for (AgentIndex a = 0; a < network.size(); ++a) {
    auto nbrs = network.neighbors(a);
    std::size_t behaving = static_cast<std::size_t>(
      std::count_if(nbrs.begin(), nbrs.end(), [&](AgentIndex n) { return b.contains(n); }));
    if (threshold.admits(behaving, nbrs.size()))
      out.insert(a);
  }
  return out;
}

BehaviorSet adopters(const Model& model, const BehaviorSet& b)
{
  return adopters(model.network(), model.threshold(), b);
}

BehaviorSet step(const Network& network, const Threshold& threshold, const BehaviorSet& b)
{
  BehaviorSet next = b;
  next |= adopters(network, threshold, b);
  return next;
}

BehaviorSet step(const Model& model, const BehaviorSet& b)
{
  return step(model.network(), model.threshold(), b);
}

const BehaviorSet& Trace::at(std::size_t position) const
{
  return frames.at(clamp(position));
}

Trace trace(const Model& model)
{
  Trace t;
  t.frames.push_back(model.initial());
  // The path is monotone, so it must stabilize within |agents| steps.
  for (std::size_t i = 0; i <= model.agent_count(); ++i) {
    BehaviorSet next = step(model, t.frames.back());
    if (next == t.frames.back()) {
      t.fixed_point = t.frames.size() - 1;
      if (t.fixed_point >= std::max<std::size_t>(model.agent_count(), 1))
        throw std::logic_error("fixed point index " + std::to_string(t.fixed_point) +
                               " not below the agent count");
      return t;
    }
    t.frames.push_back(std::move(next));
  }
  throw std::logic_error("diffusion did not reach a fixed point");
}

} // namespace ltlsn
