#pragma once

// Shared helpers for the unit and acceptance suites: fixture loading and
// random generators for models and formulas.

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ltlsn/formula.hpp"
#include "ltlsn/model.hpp"

namespace ltlsn::testing {

inline std::string read_data(const std::string& name)
{
  std::ifstream in(std::string(LTLSN_DATA_DIR) + "/" + name, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_path(const std::string& name)
{
  return std::string(LTLSN_DATA_DIR) + "/" + name;
}

inline Model example_one() { return parse_model(read_data("fig1.sn")); }
inline Model example_two() { return parse_model(read_data("fig2.sn")); }

/// Thresholds drawn by the randomized suites.
inline const std::vector<Rational>& sample_thetas()
{
  static const std::vector<Rational> thetas = {Rational(0), Rational(1, 4), Rational(1, 3),
                                               Rational(1, 2), Rational(2, 3), Rational(1)};
  return thetas;
}

inline std::vector<std::string> agent_names(std::size_t n)
{
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    names.push_back(std::string(1, static_cast<char>('a' + i)));
  return names;
}

/// Random model satisfying the network axioms: a random graph in which any
/// isolated agent is then attached to a random partner.
inline Model random_model(std::mt19937& rng, std::size_t min_agents, std::size_t max_agents,
                          bool strict = false)
{
  std::uniform_int_distribution<std::size_t> n_dist(min_agents, max_agents);
  const std::size_t n = n_dist(rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double density = unit(rng);

  std::vector<std::vector<AgentIndex>> adj(n);
  auto connect = [&](AgentIndex a, AgentIndex b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  for (AgentIndex a = 0; a < n; ++a)
    for (AgentIndex b = a + 1; b < n; ++b)
      if (unit(rng) < density)
        connect(a, b);
  std::uniform_int_distribution<AgentIndex> pick(0, n - 1);
  for (AgentIndex a = 0; a < n; ++a) {
    if (!adj[a].empty())
      continue;
    AgentIndex b = pick(rng);
    while (b == a)
      b = pick(rng);
    connect(a, b);
  }

  BehaviorSet initial(n);
  const double fill = unit(rng) * 0.6;
  for (AgentIndex a = 0; a < n; ++a)
    if (unit(rng) < fill)
      initial.insert(a);

  const auto& thetas = sample_thetas();
  std::uniform_int_distribution<std::size_t> theta_pick(0, thetas.size() - 1);
  return Model(Network(agent_names(n), std::move(adj)), Threshold(thetas[theta_pick(rng)], strict),
               std::move(initial));
}

enum class Fragment { full, until_free, propositional };

/// Random core formula with exactly `size` nodes over the given agents.
inline Formula random_formula_of_size(std::mt19937& rng, const std::vector<std::string>& agents,
                                      std::size_t size, Fragment fragment = Fragment::full)
{
  std::uniform_int_distribution<std::size_t> agent_pick(0, agents.size() - 1);
  std::uniform_int_distribution<int> coin(0, 99);
  if (size <= 1) {
    int r = coin(rng);
    if (r < 10)
      return Formula::top();
    if (r < 65)
      return Formula::behaves(agents[agent_pick(rng)]);
    return Formula::neighbor(agents[agent_pick(rng)], agents[agent_pick(rng)]);
  }
  const bool temporal = fragment != Fragment::propositional;
  const bool until_ok = fragment == Fragment::full;
  if (size == 2 || coin(rng) < 35) {
    Formula child = random_formula_of_size(rng, agents, size - 1, fragment);
    if (temporal && coin(rng) < 45)
      return Formula::next(child);
    return Formula::negation(child);
  }
  std::uniform_int_distribution<std::size_t> split(1, size - 2);
  std::size_t left = split(rng);
  Formula l = random_formula_of_size(rng, agents, left, fragment);
  Formula r = random_formula_of_size(rng, agents, size - 1 - left, fragment);
  if (until_ok && coin(rng) < 40)
    return Formula::until(l, r);
  return Formula::conjunction(l, r);
}

inline Formula random_formula(std::mt19937& rng, const std::vector<std::string>& agents,
                              std::size_t max_size, Fragment fragment = Fragment::full)
{
  std::uniform_int_distribution<std::size_t> size_pick(1, max_size);
  return random_formula_of_size(rng, agents, size_pick(rng), fragment);
}

/// Until expansion step u^n(phi U psi), built independently of the library.
inline Formula expansion_step(const Formula& phi, const Formula& psi, std::size_t n)
{
  Formula u = psi;
  for (std::size_t k = 0; k < n; ++k)
    u = Formula::conjunction(phi, Formula::next(u));
  return u;
}

} // namespace ltlsn::testing
