#include "ghz/oracle.hpp"

#include <numeric>
#include <set>
#include <stdexcept>

namespace ghz::oracle {

Coloring Coloring::from_code(std::uint8_t code) {
  if (code >= kNumColorings) {
    throw std::out_of_range("colouring code must be < 64");
  }
  std::array<Color, kNumSides> colors{};
  for (int k = 0; k < kNumSides; ++k) {
    colors[k] = ((code >> k) & 1) ? Color::kGreen : Color::kRed;
  }
  return Coloring(colors);
}

std::uint8_t Coloring::code() const {
  std::uint8_t code = 0;
  for (int k = 0; k < kNumSides; ++k) {
    if (colors_[k] == Color::kGreen) code |= static_cast<std::uint8_t>(1u << k);
  }
  return code;
}

std::string Coloring::to_string() const {
  std::string out;
  for (RobberId r : game::kAllRobbers) {
    if (!out.empty()) out += ' ';
    out += game::to_string(r);
    out += ':';
    for (SideView s : game::kAllSides) {
      out += at(r, s) == Color::kRed ? 'R' : 'G';
    }
  }
  return out;
}

Coloring to_coloring(const DeterministicStrategy& s) {
  Coloring c;
  for (RobberId r : game::kAllRobbers) {
    for (SideView side : game::kAllSides) c.set(r, side, s.answer(r, side));
  }
  return c;
}

DeterministicStrategy from_coloring(const Coloring& c) {
  DeterministicStrategy s;
  for (RobberId r : game::kAllRobbers) {
    s.answers[game::index(r)] = {c.at(r, SideView::kFront),
                                 c.at(r, SideView::kBack)};
  }
  return s;
}

game::AnswerSet classical_answers(const DeterministicStrategy& s,
                                  GuardId guard) {
  game::AnswerSet a{};
  for (RobberId r : game::kAllRobbers) {
    a.colors[game::index(r)] = s.answer(r, game::question_for(guard, r));
  }
  return a;
}

Rational Rational::reduced(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

std::string Rational::to_string() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

std::vector<Coloring> enumerate_colorings() {
  std::vector<Coloring> out;
  out.reserve(kNumColorings);
  for (int code = 0; code < kNumColorings; ++code) {
    out.push_back(Coloring::from_code(static_cast<std::uint8_t>(code)));
  }
  return out;
}

GuardSet satisfied_guards(const Coloring& c) {
  const auto table = game::view_table();
  GuardSet out;
  for (GuardId g : game::kAllGuards) {
    Sign p = Sign::kPlus;
    for (RobberId r : game::kAllRobbers) {
      p = p * game::color_sign(c.at(r, table.at(g, r)));
    }
    if (p == game::required_parity(g)) out.insert(g);
  }
  return out;
}

MaxSatisfiable max_satisfiable() {
  MaxSatisfiable result;
  std::array<std::optional<Coloring>, 4> witness_by_omitted;
  for (const Coloring& c : enumerate_colorings()) {
    const GuardSet sat = satisfied_guards(c);
    const int n = sat.size();
    if (n > result.count) {
      result.count = n;
      result.colorings_at_max = 0;
    }
    if (n == result.count) ++result.colorings_at_max;
    if (n == 4) ++result.colorings_satisfying_all_four;
    if (n == 3) {
      for (GuardId g : game::kAllGuards) {
        if (!sat.contains(g) && !witness_by_omitted[g.index()]) {
          witness_by_omitted[g.index()] = c;
        }
      }
    }
  }
  for (GuardId omitted : game::kAllGuards) {
    const auto& w = witness_by_omitted[omitted.index()];
    if (!w) continue;
    result.witnesses.emplace_back(satisfied_guards(*w), *w);
  }
  return result;
}

ProductProof product_argument() {
  ProductProof proof;
  const auto table = game::view_table();
  for (GuardId g : game::kAllGuards) {
    for (RobberId r : game::kAllRobbers) {
      const SideView s = table.at(g, r);
      proof.factors.push_back({r, s, g});
      ++proof.multiplicity[side_slot(r, s)];
    }
    proof.required_product = proof.required_product * game::required_parity(g);
  }
  // x^m is +1 for every x in {+1,-1} iff m is even. A side with odd
  // multiplicity would leave the joint product undetermined.
  bool all_even = true;
  for (int m : proof.multiplicity) all_even = all_even && m % 2 == 0;
  proof.joint_product = Sign::kPlus;
  proof.contradiction = all_even && proof.joint_product != proof.required_product;
  return proof;
}

std::pair<GuardId, GuardId> candidate_statements(RobberId robber,
                                                 SideView side) {
  const auto table = game::view_table();
  std::vector<GuardId> found;
  for (GuardId g : game::kAllGuards) {
    if (table.at(g, robber) == side) found.push_back(g);
  }
  if (found.size() != 2) {
    throw std::logic_error("view table must cover each side exactly twice");
  }
  return {found[0], found[1]};
}

GuardSet ambiguity_cover(GuardId guard) {
  GuardSet cover;
  for (RobberId r : game::kAllRobbers) {
    const auto [g1, g2] = candidate_statements(r, game::question_for(guard, r));
    cover.insert(g1);
    cover.insert(g2);
  }
  return cover;
}

GuardSet testable_statements(const game::SeenSides& questions) {
  const auto table = game::view_table();
  GuardSet out;
  for (GuardId g : game::kAllGuards) {
    if (table.row(g) == questions) out.insert(g);
  }
  return out;
}

GameValue classical_game_value() {
  GameValue best;
  int best_passes = -1;
  bool equivalent = true;
  std::set<std::uint8_t> codes_seen;

  for (const Coloring& c : enumerate_colorings()) {
    const DeterministicStrategy s = from_coloring(c);
    GuardSet passes;
    for (GuardId g : game::kAllGuards) {
      if (game::verify(g, classical_answers(s, g))) passes.insert(g);
    }
    equivalent = equivalent && to_coloring(s) == c &&
                 passes == satisfied_guards(c);
    codes_seen.insert(to_coloring(s).code());

    if (passes.size() > best_passes) {
      best_passes = passes.size();
      best.witness = s;
      best.witness_passes = passes;
      best.optimal_strategy_count = 0;
    }
    if (passes.size() == best_passes) ++best.optimal_strategy_count;
    if (passes.size() == 4) best.any_strategy_wins_all = true;
  }

  best.value = Rational::reduced(best_passes, 4);
  best.strategy_coloring_equivalent =
      equivalent && codes_seen.size() == kNumColorings;
  return best;
}

double mixture_value(std::span<const double, kNumColorings> weights) {
  double total_weight = 0.0;
  double value = 0.0;
  for (int code = 0; code < kNumColorings; ++code) {
    const double w = weights[code];
    if (w < 0.0) throw std::invalid_argument("negative mixture weight");
    total_weight += w;
    const GuardSet sat =
        satisfied_guards(Coloring::from_code(static_cast<std::uint8_t>(code)));
    value += w * sat.size() / 4.0;
  }
  if (std::abs(total_weight - 1.0) > 1e-9) {
    throw std::invalid_argument("mixture weights must sum to 1");
  }
  return value;
}

DeterministicStrategy parse_strategy(std::string_view letters) {
  if (letters.size() != 6) {
    throw std::invalid_argument(
        "classical strategy needs 6 letters (R/G) for A-front, A-back, "
        "B-front, B-back, C-front, C-back");
  }
  DeterministicStrategy s;
  for (std::size_t k = 0; k < 6; ++k) {
    Color c;
    switch (letters[k]) {
      case 'R': case 'r': c = Color::kRed; break;
      case 'G': case 'g': c = Color::kGreen; break;
      default:
        throw std::invalid_argument("strategy letters must be R or G");
    }
    s.answers[k / 2][k % 2] = c;
  }
  return s;
}

std::string format_strategy(const DeterministicStrategy& s) {
  std::string out;
  for (const auto& per_robber : s.answers) {
    for (Color c : per_robber) out += c == Color::kRed ? 'R' : 'G';
  }
  return out;
}

}  // namespace ghz::oracle
