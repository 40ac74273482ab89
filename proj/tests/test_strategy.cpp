#include <doctest.h>

#include <algorithm>
#include <deque>

#include "ghz/strategy.hpp"

namespace ghz::strategy {
namespace {

using enum game::SideView;
using game::GuardId;
using game::RobberId;

// Replays fixed uniform draws.
struct Draws {
  std::deque<double> values;
  double operator()() {
    const double v = values.front();
    values.pop_front();
    return v;
  }
};

TEST_CASE("question to basis and outcome to colour") {
  CHECK(basis_for_question(kFront) == MeasBasis::kY);
  CHECK(basis_for_question(kBack) == MeasBasis::kX);
  CHECK(QuestionMapping::side_to_button(kFront) == Button::kLock);
  CHECK(QuestionMapping::side_to_button(kBack) == Button::kUnlock);
  CHECK(color_for_outcome(Sign::kPlus) == game::Color::kRed);
  CHECK(color_for_outcome(Sign::kMinus) == game::Color::kGreen);
  for (Sign s : qsim::kAllOutcomes) CHECK(game::color_sign(color_for_outcome(s)) == s);
}

TEST_CASE("worked guard-1 game step by step") {
  SharedRegister reg(Draws{{0.2, 0.3, 0.99}});
  AgentHandle a(RobberId::kA), b(RobberId::kB), c(RobberId::kC);

  CHECK(quantum_answer(a, kBack, reg) == game::Color::kRed);
  const qsim::QubitVector right{1 / std::sqrt(2.0), 1 / std::sqrt(2.0)};
  qsim::StateVector::Amplitudes bc{};
  for (std::size_t s = 0; s < 2; ++s) {
    bc[4 * s] = right[s] / std::sqrt(2.0);
    bc[4 * s + 3] = -right[s] / std::sqrt(2.0);
  }
  CHECK(qsim::equal_up_to_global_phase(reg.state(), qsim::StateVector(bc)));

  CHECK(quantum_answer(b, kFront, reg) == game::Color::kRed);
  const qsim::QubitVector otimes{1 / std::sqrt(2.0), qsim::Amplitude(0, 1 / std::sqrt(2.0))};
  CHECK(qsim::equal_up_to_global_phase(reg.state(),
                                       qsim::StateVector::product(right, otimes, otimes)));

  CHECK(quantum_answer(c, kFront, reg) == game::Color::kRed);
}

TEST_CASE("handles are single use") {
  SharedRegister reg(Draws{{0.1, 0.1}});
  AgentHandle a(RobberId::kA);
  quantum_answer(a, kBack, reg);
  CHECK(a.used());
  CHECK_THROWS_AS(quantum_answer(a, kBack, reg), ProtocolViolation);

  AgentHandle moved_from(RobberId::kB);
  AgentHandle owner(std::move(moved_from));
  CHECK_THROWS_AS(quantum_answer(moved_from, kFront, reg), ProtocolViolation);
  CHECK_FALSE(owner.used());
}

TEST_CASE("register refuses a second measurement of the same qubit") {
  SharedRegister reg(Draws{{0.1, 0.1, 0.1}});
  reg.measure(RobberId::kC, MeasBasis::kX);
  CHECK_THROWS_AS(reg.measure(RobberId::kC, MeasBasis::kY), ProtocolViolation);
  reg.reset();
  CHECK_NOTHROW(reg.measure(RobberId::kC, MeasBasis::kY));
}

// Exhaustive over guards, answer orders and a grid of draws.
TEST_CASE("quantum answers always confirm the tested guard") {
  const std::vector<double> grid = {0.0, 0.1, 0.25, 0.49, 0.5, 0.51, 0.75, 0.9, 0.999999};
  for (GuardId g : game::kAllGuards) {
    std::array<RobberId, 3> order = {RobberId::kA, RobberId::kB, RobberId::kC};
    do {
      for (double u1 : grid)
        for (double u2 : grid)
          for (double u3 : {0.0, 0.5, 0.999999}) {
            SharedRegister reg(Draws{{u1, u2, u3}});
            game::AnswerSet answers{};
            for (RobberId r : order) {
              AgentHandle h(r);
              answers.colors[game::index(r)] =
                  quantum_answer(h, game::question_for(g, r), reg);
            }
            CHECK(game::verify(g, answers));
          }
    } while (std::next_permutation(order.begin(), order.end()));
  }
}

TEST_CASE("each answer alone is a fair coin whichever guard is tested") {
  for (GuardId g : game::kAllGuards) {
    qsim::BasisTriple bases{};
    for (RobberId r : game::kAllRobbers) {
      bases[game::index(r)] = basis_for_question(game::question_for(g, r));
    }
    const auto d = qsim::joint_distribution(qsim::ghz_state(), bases);
    for (RobberId r : game::kAllRobbers) {
      CHECK(d.marginal(qubit_of(r), Sign::kPlus) == doctest::Approx(0.5).epsilon(1e-12));
    }
    CHECK(d.parity_probability(game::required_parity(g)) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

}  // namespace
}  // namespace ghz::strategy
