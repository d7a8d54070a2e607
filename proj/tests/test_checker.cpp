#include <doctest.h>

#include <algorithm>
#include <random>

#include "ltlsn/checker.hpp"
#include "ltlsn/semantics.hpp"
#include "support.hpp"

using namespace ltlsn;
using ltlsn::testing::example_one;
using ltlsn::testing::example_two;

namespace {

using Positions = std::vector<std::size_t>;

SatSet labeled(const Model& m, const char* text)
{
  Formula f = parse_formula(text);
  return s_set_from_labels(check(m, trace(m), f), f);
}

std::vector<std::string> rendered_labels(const LabelMap& lm, std::size_t i)
{
  std::vector<std::string> out;
  for (const Formula& f : lm.labels_at(i))
    out.push_back(render(f));
  return out;
}

std::vector<std::string> true_neighbor_atoms(const Model& m)
{
  std::vector<std::string> out;
  for (AgentIndex a = 0; a < m.agent_count(); ++a)
    for (AgentIndex b : m.network().neighbors(a))
      out.push_back("N(" + m.network().name(a) + "," + m.network().name(b) + ")");
  return out;
}

} // namespace

TEST_SUITE("checker") {

TEST_CASE("initial labels are exactly the true atoms")
{
  Model f1 = example_one();
  LabelMap lm = init_labels(f1, trace(f1), parse_formula("X B(c)"));
  std::vector<std::string> expected = {"true", "B(a)"};
  for (const auto& n : true_neighbor_atoms(f1))
    expected.push_back(n);
  CHECK(rendered_labels(lm, 0) == expected);
  CHECK(true_neighbor_atoms(f1).size() == 16);
  CHECK(lm.holds(0, parse_formula("N(d,b)")));
  CHECK_FALSE(lm.holds(0, parse_formula("N(d,e)")));
  CHECK_FALSE(lm.holds(0, parse_formula("X B(c)")));

  Model f2 = example_two();
  LabelMap lm2 = init_labels(f2, trace(f2), parse_formula("B(a)"));
  std::vector<std::string> expected2 = {"true", "B(a)", "B(c)"};
  for (const auto& n : true_neighbor_atoms(f2))
    expected2.push_back(n);
  CHECK(rendered_labels(lm2, 1) == expected2);

  Model empty(f1.network(), f1.threshold(), BehaviorSet(f1.agent_count()));
  LabelMap lm3 = init_labels(empty, trace(empty), parse_formula("B(a)"));
  std::vector<std::string> expected3 = {"true"};
  for (const auto& n : true_neighbor_atoms(empty))
    expected3.push_back(n);
  CHECK(rendered_labels(lm3, 0) == expected3);
}

TEST_CASE("labeling examples")
{
  Model f1 = example_one();
  Model f2 = example_two();
  CHECK(labeled(f1, "X B(c)") == SatSet{Positions{0, 1, 2, 3, 4}, true});
  CHECK(labeled(f2, "G !B(d)") == SatSet{Positions{0, 1}, true});
  CHECK(labeled(f1, "true") == SatSet{Positions{0, 1, 2, 3, 4}, true});
  CHECK(labeled(f1, "B(c)") == SatSet{Positions{1, 2, 3, 4}, true});
  CHECK(labeled(f2, "B(d)") == SatSet{Positions{}, false});
  CHECK(labeled(f1, "!(B(d) & B(e) & B(f)) U B(d)") == SatSet{Positions{0, 1, 2, 3, 4}, true});
  CHECK(labeled(f1, "G !B(d)") == SatSet{Positions{}, false});

  LabelMap lm = check(f1, trace(f1), parse_formula("X B(c)"));
  auto at4 = rendered_labels(lm, 4);
  CHECK(std::find(at4.begin(), at4.end(), "X B(c)") != at4.end());
}

TEST_CASE("unknown agents and majority nodes are rejected")
{
  Model f1 = example_one();
  CHECK_THROWS_AS(check(f1, trace(f1), parse_formula("B(q)")), unknown_agent);
  CHECK_THROWS_AS(check(f1, trace(f1), Formula::majority("a")), std::invalid_argument);
}

TEST_CASE("labeling agrees with the direct evaluator")
{
  std::mt19937 rng(1234);
  for (int iter = 0; iter < 600; ++iter) {
    Model m = ltlsn::testing::random_model(rng, 2, 6, iter % 6 == 0);
    Trace t = trace(m);
    Formula f = ltlsn::testing::random_formula(rng, m.agents(), 14);
    LabelMap lm = check(m, t, f);
    CHECK_MESSAGE(s_set_from_labels(lm, f) == satisfaction_set(m, t, f), render(f));
    for (const Formula& g : lm.subformulas())
      for (std::size_t i = 0; i <= t.fixed_point; ++i)
        CHECK(lm.holds(i, g) == eval_at(m, t, i, g));
    // One labeling decision per (subformula, position).
    CHECK(lm.visits() == lm.subformulas().size() * (t.fixed_point + 1));
    CHECK(lm.visits() <= f.size() * (t.fixed_point + 1));
  }
}

}
