#include <doctest.h>

#include <set>

#include "ghz/oracle.hpp"
#include "oracles.hpp"

namespace ghz::oracle {
namespace {

using enum RobberId;
using enum SideView;
using enum Color;

Coloring red_backs_green_fronts() {
  Coloring c;
  for (RobberId r : game::kAllRobbers) {
    c.set(r, kFront, kGreen);
    c.set(r, kBack, kRed);
  }
  return c;
}

Coloring a_green_bc_green_front_red_back() {
  Coloring c = red_backs_green_fronts();
  c.set(kA, kBack, kGreen);
  return c;
}

TEST_CASE("enumerate_colorings") {
  const auto all = enumerate_colorings();
  CHECK(all.size() == 64);
  std::set<std::uint8_t> codes;
  for (const auto& c : all) codes.insert(c.code());
  CHECK(codes.size() == 64);
  CHECK(all.front() == Coloring());
  for (int code = 0; code < 64; ++code) CHECK(all[code].code() == code);
}

TEST_CASE("satisfied_guards on the worked colourings") {
  CHECK(satisfied_guards(red_backs_green_fronts()) == GuardSet{1, 2, 3});
  CHECK(satisfied_guards(a_green_bc_green_front_red_back()) == GuardSet{2, 3, 4});
  CHECK(satisfied_guards(Coloring()) == GuardSet{1, 2, 3});
}

TEST_CASE("satisfied_guards agrees with green counting for all colourings") {
  for (const auto& c : enumerate_colorings()) {
    bool green[3][2];
    for (RobberId r : game::kAllRobbers) {
      green[game::index(r)][0] = c.at(r, kFront) == kGreen;
      green[game::index(r)][1] = c.at(r, kBack) == kGreen;
    }
    const GuardSet sat = satisfied_guards(c);
    for (GuardId g : game::kAllGuards) {
      CHECK(sat.contains(g) == ghz::testing::guard_satisfied(static_cast<int>(g.index()), green));
    }
  }
}

TEST_CASE("max_satisfiable") {
  const auto m = max_satisfiable();
  CHECK(m.count == 3);
  CHECK(m.colorings_satisfying_all_four == 0);
  REQUIRE(m.witnesses.size() == 4);
  std::set<std::uint8_t> subsets;
  for (const auto& [guards, coloring] : m.witnesses) {
    CHECK(guards.size() == 3);
    CHECK(satisfied_guards(coloring) == guards);
    subsets.insert(guards.mask());
  }
  CHECK(subsets.size() == 4);
  CHECK(m.colorings_at_max >= 4);
}

TEST_CASE("product_argument") {
  const auto p = product_argument();
  CHECK(p.factors.size() == 12);
  for (int m : p.multiplicity) CHECK(m == 2);
  CHECK(p.joint_product == Sign::kPlus);
  CHECK(p.required_product == Sign::kMinus);
  CHECK(p.contradiction);
  // Agrees with the enumeration.
  CHECK(p.contradiction == (max_satisfiable().colorings_satisfying_all_four == 0));
}

TEST_CASE("candidate_statements") {
  CHECK(candidate_statements(kA, kBack) == std::pair{GuardId(1), GuardId(4)});
  CHECK(candidate_statements(kB, kFront) == std::pair{GuardId(1), GuardId(3)});
  CHECK(candidate_statements(kC, kFront) == std::pair{GuardId(1), GuardId(2)});
}

TEST_CASE("ambiguity_cover and testability") {
  for (GuardId g : game::kAllGuards) {
    CHECK(ambiguity_cover(g) == GuardSet::all());
    const GuardSet t = testable_statements(game::view_table().row(g));
    CHECK(t.size() == 1);
    CHECK(t.contains(g));
  }
  // A question triple nobody saw tests nothing.
  CHECK(testable_statements({kFront, kFront, kFront}).empty());
}

TEST_CASE("classical_game_value") {
  const auto v = classical_game_value();
  CHECK(v.value == Rational{3, 4});
  CHECK(v.value.num * 4 == ghz::testing::brute_force_best_classical_passes() * v.value.den);
  CHECK(v.witness_passes == GuardSet{1, 2, 3});
  CHECK_FALSE(v.any_strategy_wins_all);
  CHECK(v.strategy_coloring_equivalent);
  CHECK(v.optimal_strategy_count == max_satisfiable().colorings_at_max);
}

TEST_CASE("strategy and colouring are the same object") {
  for (const auto& c : enumerate_colorings()) {
    const auto s = from_coloring(c);
    CHECK(to_coloring(s) == c);
    for (GuardId g : game::kAllGuards) {
      CHECK(game::verify(g, classical_answers(s, g)) == satisfied_guards(c).contains(g));
    }
  }
}

TEST_CASE("mixtures never beat three quarters") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int iter = 0; iter < 100; ++iter) {
    std::array<double, kNumColorings> w{};
    double total = 0;
    for (auto& x : w) total += (x = u(rng));
    for (auto& x : w) x /= total;
    CHECK(mixture_value(w) <= 0.75 + 1e-12);
  }
  std::array<double, kNumColorings> point{};
  point[red_backs_green_fronts().code()] = 1.0;
  CHECK(mixture_value(point) == doctest::Approx(0.75));
  point[0] = -1.0;
  CHECK_THROWS_AS(mixture_value(point), std::invalid_argument);
}

TEST_CASE("strategy text format") {
  const auto s = parse_strategy("GRGRGR");
  CHECK(to_coloring(s) == red_backs_green_fronts());
  CHECK(format_strategy(s) == "GRGRGR");
  CHECK_THROWS_AS(parse_strategy("GRG"), std::invalid_argument);
  CHECK_THROWS_AS(parse_strategy("GRGRGX"), std::invalid_argument);
}

TEST_CASE("Rational reduction") {
  CHECK(Rational::reduced(6, 8) == Rational{3, 4});
  CHECK(Rational::reduced(3, -4) == Rational{-3, 4});
  CHECK(Rational::reduced(0, 5) == Rational{0, 1});
  CHECK(Rational{3, 4}.to_string() == "3/4");
  CHECK_THROWS_AS(Rational::reduced(1, 0), std::invalid_argument);
}

}  // namespace
}  // namespace ghz::oracle
