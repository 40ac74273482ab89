#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "ghz/session.hpp"
#include "ghz/strategy.hpp"

namespace ghz::harness {
namespace {

using game::GuardId;

SessionConfig local(std::uint64_t seed, std::uint64_t trials, std::string_view guard,
                    std::string_view strategy = "quantum") {
  SessionConfig c;
  c.seed = seed;
  c.trials = trials;
  c.guard_policy = GuardPolicy::parse(guard);
  c.strategy = PlayStrategy::parse(strategy);
  return c;
}

TEST_CASE("run_local_game examples") {
  for (int g : {1, 4, 2}) {
    Engine rng(42);
    const Transcript t = run_local_game(GuardId(g), rng);
    CHECK(t.verdict);
    CHECK(verdict_sound(t));
    for (game::RobberId r : game::kAllRobbers) {
      const auto& s = t.suspects[game::index(r)];
      CHECK(s.question == game::question_for(GuardId(g), r));
      REQUIRE(s.answer.has_value());
      CHECK(s.basis == strategy::basis_for_question(s.question));
      CHECK(strategy::color_for_outcome(*s.outcome) == *s.answer);
    }
  }
}

TEST_CASE("local guarantee holds for every answer order") {
  std::array<qsim::QubitId, 3> order = {qsim::QubitId::kA, qsim::QubitId::kB,
                                        qsim::QubitId::kC};
  do {
    for (GuardId g : game::kAllGuards) {
      Engine rng(1234 + g.number());
      for (int i = 0; i < 500; ++i) CHECK(run_local_game(g, rng, PlayStrategy::quantum(), order).verdict);
    }
  } while (std::next_permutation(order.begin(), order.end()));
}

TEST_CASE("seeded sessions are reproducible") {
  const auto a = run_trials(local(7, 1000, "4"));
  const auto b = run_trials(local(7, 1000, "4"));
  CHECK(a.stats.to_json().dump() == b.stats.to_json().dump());
  CHECK(a.transcripts == b.transcripts);
  const auto c = run_trials(local(8, 1000, "4"));
  CHECK(c.transcripts != a.transcripts);
}

TEST_CASE("a trial does not depend on how many trials follow it") {
  const auto short_run = run_trials(local(5, 50, "uniform"));
  const auto long_run = run_trials(local(5, 200, "uniform"));
  for (std::size_t i = 0; i < 50; ++i) CHECK(short_run.transcripts[i] == long_run.transcripts[i]);
}

TEST_CASE("quantum pass rate is exactly one") {
  const auto r = run_trials(local(11, 10000, "uniform"));
  CHECK(r.stats.overall.trials == 10000);
  CHECK(r.stats.overall.passes == 10000);
  for (const auto& t : r.transcripts) CHECK(verdict_sound(t));
  const double sigma = 3.0 * std::sqrt(0.25 / 10000);
  for (const auto& s : r.stats.per_suspect) {
    CHECK(std::abs(s.red_frequency() - 0.5) <= sigma);
  }
}

TEST_CASE("best classical strategy converges to three quarters") {
  const auto r = run_trials(local(3, 10000, "uniform", "classical:best"));
  CHECK(std::abs(r.stats.overall.pass_rate() - 0.75) <= 3.0 * std::sqrt(0.1875 / 10000));
  // Deterministic per guard.
  CHECK(r.stats.per_guard[3].passes == 0);
  for (int g = 0; g < 3; ++g) CHECK(r.stats.per_guard[g].pass_rate() == 1.0);
}

TEST_CASE("one agent ignoring its outcome passes half the time") {
  // Analytic value: with A always Red, a trial passes iff the product of B's
  // and C's outcomes equals the guard's parity.
  double analytic = 0.0;
  for (GuardId g : game::kAllGuards) {
    qsim::BasisTriple bases{};
    for (game::RobberId r : game::kAllRobbers) {
      bases[game::index(r)] = strategy::basis_for_question(game::question_for(g, r));
    }
    const auto d = qsim::joint_distribution(qsim::ghz_state(), bases);
    for (std::size_t i = 0; i < qsim::kDim; ++i) {
      const auto o = qsim::JointDistribution::outcomes_at(i);
      if (o[1] * o[2] == game::required_parity(g)) analytic += 0.25 * d.probabilities()[i];
    }
  }
  CHECK(analytic == doctest::Approx(0.5).epsilon(1e-12));

  auto config = local(21, 4000, "uniform");
  config.agent_strategies[game::RobberId::kA] = PlayStrategy::fixed_color(game::Color::kRed);
  const auto r = run_trials(config);
  CHECK(r.stats.overall.pass_rate() < 1.0);
  CHECK(std::abs(r.stats.overall.pass_rate() - analytic) <= 3.0 * std::sqrt(0.25 / 4000));
}

TEST_CASE("guard draws are uniform and fixed policy is honoured") {
  const auto r = run_trials(local(9, 40000, "uniform"));
  for (const auto& g : r.stats.per_guard) {
    CHECK(std::abs(static_cast<double>(g.trials) / 40000 - 0.25) <=
          3.0 * std::sqrt(0.1875 / 40000));
  }
  const auto fixed = run_trials(local(9, 100, "3"));
  CHECK(fixed.stats.per_guard[2].trials == 100);
}

TEST_CASE("transcripts persist as JSON lines") {
  const auto path = std::filesystem::temp_directory_path() / "ghz_test_session_log.jsonl";
  std::filesystem::remove(path);
  auto config = local(2, 25, "uniform");
  config.log_path = path;
  const auto r = run_trials(config);
  run_trials(config);  // appends
  const auto back = read_transcripts(path);
  REQUIRE(back.size() == 50);
  for (std::size_t i = 0; i < 25; ++i) {
    CHECK(back[i] == r.transcripts[i]);
    CHECK(back[i + 25] == r.transcripts[i]);
  }
  std::filesystem::remove(path);
}

TEST_CASE("transcript verdict soundness detects tampering") {
  Engine rng(1);
  Transcript t = run_local_game(GuardId(3), rng);
  CHECK(verdict_sound(t));
  t.verdict = false;
  CHECK_FALSE(verdict_sound(t));
  t.verdict = true;
  t.suspects[1].answer = t.suspects[1].answer == game::Color::kRed ? game::Color::kGreen
                                                                   : game::Color::kRed;
  CHECK_FALSE(verdict_sound(t));
  CHECK_THROWS_AS(transcript_from_json(nlohmann::json{{"trial", 1}}), std::invalid_argument);
}

TEST_CASE("configuration parsing and validation") {
  CHECK(Endpoint::parse("127.0.0.1:9000") == Endpoint{"127.0.0.1", 9000});
  CHECK(Endpoint::parse("localhost:0").port == 0);
  CHECK_THROWS_AS(Endpoint::parse("nohost"), std::invalid_argument);
  CHECK_THROWS_AS(Endpoint::parse("h:70000"), std::invalid_argument);
  CHECK_THROWS_AS(Endpoint::parse("h:12x"), std::invalid_argument);

  CHECK_FALSE(GuardPolicy::parse("uniform").fixed.has_value());
  CHECK(GuardPolicy::parse("2").fixed == GuardId(2));
  CHECK_THROWS_AS(GuardPolicy::parse("5"), std::invalid_argument);

  CHECK(PlayStrategy::parse("quantum").kind == PlayStrategy::Kind::kQuantum);
  CHECK(PlayStrategy::parse("classical:GRGRGR").to_string() == "classical:GRGRGR");
  CHECK(PlayStrategy::parse("classical:best").kind == PlayStrategy::Kind::kClassical);
  CHECK(PlayStrategy::parse("fixed:Green").fixed == game::Color::kGreen);
  CHECK_THROWS_AS(PlayStrategy::parse("telepathy"), std::invalid_argument);

  SessionConfig c;
  c.trials = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.trials = 1;
  c.mode = Mode::kDistributed;
  c.referee_endpoint = Endpoint{"127.0.0.1", 7000};
  c.device_endpoint = Endpoint{"127.0.0.1", 7000};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.device_endpoint = Endpoint{"127.0.0.1", 7001};
  CHECK_NOTHROW(c.validate());
}

}  // namespace
}  // namespace ghz::harness
