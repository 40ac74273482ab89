#ifndef GHZ_ORACLE_HPP_
#define GHZ_ORACLE_HPP_

// Exhaustive classical analysis of the four guards' statements.
//
// A classical, non-communicating strategy is a fixed answer per suspect per
// question. Such a strategy is the same thing as a colouring of the six robber
// sides, so the 64 colourings are the complete deterministic strategy space.
//
// Shared randomness does not help: a randomized strategy is a probability
// mixture of deterministic ones, its expected pass rate is the same mixture
// of their pass rates, and a weighted average never exceeds its largest term.
// The deterministic maximum computed here therefore bounds every classical
// strategy.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ghz/game.hpp"

namespace ghz::oracle {

using game::Color;
using game::GuardId;
using game::GuardSet;
using game::RobberId;
using game::SideView;

inline constexpr int kNumSides = 6;
inline constexpr int kNumColorings = 64;

// Slot of a (robber, side) pair: 2*robber + (Front ? 0 : 1).
constexpr std::size_t side_slot(RobberId r, SideView s) {
  return 2 * game::index(r) + (s == SideView::kFront ? 0 : 1);
}

class Coloring {
 public:
  Coloring() = default;  // all Red
  explicit Coloring(const std::array<Color, kNumSides>& colors)
      : colors_(colors) {}

  // Canonical code: bit side_slot(r, s) is set iff that side is Green.
  static Coloring from_code(std::uint8_t code);
  std::uint8_t code() const;

  Color at(RobberId r, SideView s) const { return colors_[side_slot(r, s)]; }
  void set(RobberId r, SideView s, Color c) { colors_[side_slot(r, s)] = c; }

  // "A:RG B:RG C:RG" listing front then back colour per robber.
  std::string to_string() const;

  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  std::array<Color, kNumSides> colors_{};
};

// Answer as a function of the suspect's own question only.
struct DeterministicStrategy {
  // answers[robber][0] for Front, [1] for Back.
  std::array<std::array<Color, 2>, 3> answers{};

  Color answer(RobberId r, SideView s) const {
    return answers[game::index(r)][s == SideView::kFront ? 0 : 1];
  }

  friend bool operator==(const DeterministicStrategy&,
                         const DeterministicStrategy&) = default;
};

Coloring to_coloring(const DeterministicStrategy& s);
DeterministicStrategy from_coloring(const Coloring& c);

// Answers given by a classical strategy when the given guard is tested.
game::AnswerSet classical_answers(const DeterministicStrategy& s,
                                  GuardId guard);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational reduced(std::int64_t num, std::int64_t den);
  double to_double() const { return static_cast<double>(num) / den; }
  std::string to_string() const;

  friend bool operator==(const Rational&, const Rational&) = default;
};

// All 64 colourings in canonical code order 0..63.
std::vector<Coloring> enumerate_colorings();

GuardSet satisfied_guards(const Coloring& c);

struct MaxSatisfiable {
  int count = 0;
  // One witness per 3-subset of guards, in the order {2,3,4}, {1,3,4},
  // {1,2,4}, {1,2,3} (the subset omitting guard 1, 2, 3, 4 respectively).
  std::vector<std::pair<GuardSet, Coloring>> witnesses;
  int colorings_satisfying_all_four = 0;
  // Colourings attaining `count`.
  int colorings_at_max = 0;
};

MaxSatisfiable max_satisfiable();

struct SideFactor {
  RobberId robber;
  SideView side;
  GuardId guard;  // whose statement contributes this factor
};

struct ProductProof {
  // The twelve sign factors the four statements multiply together.
  std::vector<SideFactor> factors;
  // How often each side occurs among the factors, indexed by side_slot.
  std::array<int, kNumSides> multiplicity{};
  // Product of the twelve factors implied by the multiplicities alone:
  // each side's sign appears squared when its multiplicity is even.
  Sign joint_product = Sign::kPlus;
  // Product of the four asserted parities.
  Sign required_product = Sign::kPlus;
  bool contradiction = false;
};

ProductProof product_argument();

// The exactly-two guards whose statements involve (robber, side).
std::pair<GuardId, GuardId> candidate_statements(RobberId robber,
                                                 SideView side);

// Union of the candidate pairs over the three suspects' questions when
// `guard` is tested.
GuardSet ambiguity_cover(GuardId guard);

// Guards whose full set of seen sides matches the given questions. The
// prosecution can check a statement only when this is non-empty.
GuardSet testable_statements(const game::SeenSides& questions);

struct GameValue {
  Rational value;
  DeterministicStrategy witness;
  GuardSet witness_passes;
  int optimal_strategy_count = 0;
  bool any_strategy_wins_all = false;
  // Every strategy maps to a distinct colouring with identical per-guard
  // pass/fail.
  bool strategy_coloring_equivalent = false;
};

// Best pass probability over deterministic strategies with the tested guard
// drawn uniformly.
GameValue classical_game_value();

// Expected pass rate, uniform guard, of a mixture of deterministic strategies
// indexed by colouring code. Weights must be non-negative and sum to 1.
double mixture_value(std::span<const double, kNumColorings> weights);

// Parses six R/G letters in the order A-front, A-back, B-front, B-back,
// C-front, C-back. Throws std::invalid_argument on malformed input.
DeterministicStrategy parse_strategy(std::string_view letters);
std::string format_strategy(const DeterministicStrategy& s);

}  // namespace ghz::oracle

#endif  // GHZ_ORACLE_HPP_
