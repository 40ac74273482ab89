#include <doctest.h>

#include <algorithm>
#include <map>

#include "ghz/game.hpp"
#include "oracles.hpp"

namespace ghz::game {
namespace {

using enum SideView;
using enum RobberId;
using enum Color;

TEST_CASE("view_table matches the table of sightings") {
  const auto t = view_table();
  CHECK(t.at(GuardId(1), kA) == kBack);
  CHECK(t.at(GuardId(4), kC) == kBack);
  CHECK(t.at(GuardId(2), kA) == kFront);
  for (GuardId g : kAllGuards) {
    for (RobberId r : kAllRobbers) {
      const SideView expected = ghz::testing::kSeen[g.index()][index(r)] ? kBack : kFront;
      CHECK(t.at(g, r) == expected);
    }
  }
}

TEST_CASE("every side is seen by exactly two guards") {
  const auto t = view_table();
  std::map<std::pair<RobberId, SideView>, int> count;
  for (GuardId g : kAllGuards)
    for (RobberId r : kAllRobbers) ++count[{r, t.at(g, r)}];
  CHECK(count.size() == 6);
  for (const auto& [side, n] : count) CHECK(n == 2);
}

TEST_CASE("rows of guards 1-3 are robber permutations of each other") {
  const auto t = view_table();
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      auto ra = t.row(GuardId(a));
      auto rb = t.row(GuardId(b));
      std::sort(ra.begin(), ra.end());
      std::sort(rb.begin(), rb.end());
      CHECK(ra == rb);
    }
  }
}

TEST_CASE("question_for") {
  CHECK(question_for(GuardId(1), kB) == kFront);
  CHECK(question_for(GuardId(3), kC) == kBack);
  CHECK(question_for(GuardId(4), kA) == kBack);
}

TEST_CASE("required_parity and statements") {
  CHECK(required_parity(GuardId(1)) == Sign::kPlus);
  CHECK(required_parity(GuardId(3)) == Sign::kPlus);
  CHECK(required_parity(GuardId(4)) == Sign::kMinus);
  const Statement s = statement(GuardId(2));
  CHECK(s.guard == GuardId(2));
  CHECK(s.seen == SeenSides{kFront, kBack, kFront});
  CHECK(s.parity == Sign::kPlus);
}

TEST_CASE("verify examples") {
  CHECK(verify(GuardId(1), {{kRed, kRed, kRed}}));
  CHECK_FALSE(verify(GuardId(4), {{kRed, kRed, kRed}}));
  CHECK(verify(GuardId(4), {{kGreen, kRed, kRed}}));
}

TEST_CASE("odd-red and even-green phrasings agree, and order does not matter") {
  for (int code = 0; code < 8; ++code) {
    std::array<Color, 3> c = {code & 4 ? kGreen : kRed, code & 2 ? kGreen : kRed,
                              code & 1 ? kGreen : kRed};
    for (GuardId g : kAllGuards) {
      const bool v = verify(g, {c});
      CHECK(v == red_count_claim_holds(g, {c}));
      auto perm = c;
      std::sort(perm.begin(), perm.end());
      do {
        CHECK(verify(g, {perm}) == v);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
}

TEST_CASE("colour sign encoding is a bijection") {
  CHECK(color_sign(kRed) == Sign::kPlus);
  CHECK(color_sign(kGreen) == Sign::kMinus);
  for (Color c : kAllColors) CHECK(color_from_sign(color_sign(c)) == c);
}

TEST_CASE("GuardId range and GuardSet") {
  CHECK_THROWS_AS(GuardId(0), std::out_of_range);
  CHECK_THROWS_AS(GuardId(5), std::out_of_range);
  GuardSet s{1, 3};
  CHECK(s.size() == 2);
  CHECK(s.contains(GuardId(3)));
  CHECK_FALSE(s.contains(GuardId(2)));
  CHECK(s.to_string() == "{1,3}");
  CHECK(GuardSet::all().to_string() == "{1,2,3,4}");
  CHECK(GuardSet().to_string() == "{}");
}

TEST_CASE("string tokens round trip") {
  for (Color c : kAllColors) CHECK(parse_color(to_string(c)) == c);
  for (SideView s : kAllSides) CHECK(parse_side(to_string(s)) == s);
  for (RobberId r : kAllRobbers) CHECK(parse_robber(to_string(r)) == r);
  CHECK_FALSE(parse_color("red").has_value());
  CHECK_FALSE(parse_robber("D").has_value());
}

}  // namespace
}  // namespace ghz::game
