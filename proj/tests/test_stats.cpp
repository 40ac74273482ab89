#include <doctest.h>

#include <cmath>

#include "ghz/stats.hpp"

namespace ghz::harness {
namespace {

Transcript completed(int guard, bool verdict, game::Color a, game::Color b, game::Color c) {
  Transcript t;
  t.guard = game::GuardId(guard);
  t.verdict = verdict;
  t.suspects[0].answer = a;
  t.suspects[1].answer = b;
  t.suspects[2].answer = c;
  return t;
}

TEST_CASE("Clopper-Pearson bounds") {
  // Closed forms at the edges: k = 0 gives upper 1 - (alpha/2)^(1/n),
  // k = n gives lower (alpha/2)^(1/n).
  const auto none = clopper_pearson(0, 10);
  CHECK(none.lower == 0.0);
  CHECK(none.upper == doctest::Approx(1.0 - std::pow(0.025, 0.1)).epsilon(1e-10));
  const auto all = clopper_pearson(1000, 1000);
  CHECK(all.upper == 1.0);
  CHECK(all.lower == doctest::Approx(std::pow(0.025, 1.0 / 1000)).epsilon(1e-10));
  // Symmetry: interval for k is the mirror of the interval for n - k.
  const auto a = clopper_pearson(3, 17);
  const auto b = clopper_pearson(14, 17);
  CHECK(a.lower == doctest::Approx(1.0 - b.upper).epsilon(1e-10));
  CHECK(a.upper == doctest::Approx(1.0 - b.lower).epsilon(1e-10));
  CHECK(a.lower < 3.0 / 17);
  CHECK(a.upper > 3.0 / 17);
  CHECK_THROWS_AS(clopper_pearson(5, 4), std::invalid_argument);
  const auto empty = clopper_pearson(0, 0);
  CHECK(empty.lower == 0.0);
  CHECK(empty.upper == 1.0);
}

TEST_CASE("aborted trials leave pass-rate denominators alone") {
  using enum game::Color;
  Stats s;
  s.add(completed(1, true, kRed, kRed, kRed));
  s.add(completed(4, false, kRed, kRed, kRed));
  Transcript aborted;
  aborted.guard = game::GuardId(4);
  aborted.aborted = true;
  aborted.suspects[0].answer = kGreen;
  s.add(aborted);

  CHECK(s.total_trials() == 3);
  CHECK(s.overall.trials == 2);
  CHECK(s.overall.aborted == 1);
  CHECK(s.overall.pass_rate() == 0.5);
  CHECK(s.per_guard[3].trials == 1);
  CHECK(s.per_guard[3].aborted == 1);
  CHECK(s.per_suspect[0].answered == 2);
  CHECK(s.per_suspect[0].red == 2);
  CHECK(s.per_guard_suspect[0][1].red_frequency() == 1.0);

  std::uint64_t sum = 0;
  for (const auto& g : s.per_guard) sum += g.trials + g.aborted;
  CHECK(sum == s.total_trials());
}

TEST_CASE("reports") {
  Stats s;
  s.add(completed(2, true, game::Color::kGreen, game::Color::kRed, game::Color::kGreen));
  const auto j = s.to_json();
  CHECK(j["overall"]["passes"] == 1);
  CHECK(j["guards"]["2"]["suspects"]["A"]["red"] == 0);
  CHECK(j["suspects"]["B"]["red_frequency"] == 1.0);
  CHECK(s.to_text().find("guard 2: 1/1 passed") != std::string::npos);
}

}  // namespace
}  // namespace ghz::harness
