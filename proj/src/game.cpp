#include "ghz/game.hpp"

#include <bit>

namespace ghz::game {

GuardId::GuardId(int number) : number_(number) {
  if (number < 1 || number > 4) {
    throw std::out_of_range("guard number must be 1..4, got " +
                            std::to_string(number));
  }
}

GuardSet::GuardSet(std::initializer_list<int> numbers) {
  for (int n : numbers) insert(GuardId(n));
}

int GuardSet::size() const { return std::popcount(mask_); }

std::string GuardSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (GuardId g : kAllGuards) {
    if (!contains(g)) continue;
    if (!first) out += ",";
    out += std::to_string(g.number());
    first = false;
  }
  return out + "}";
}

ViewTable view_table() {
  using enum SideView;
  ViewTable t;
  t.rows_ = {{
      {kBack, kFront, kFront},   // guard 1
      {kFront, kBack, kFront},   // guard 2
      {kFront, kFront, kBack},   // guard 3
      {kBack, kBack, kBack},     // guard 4
  }};
  return t;
}

SideView question_for(GuardId guard, RobberId robber) {
  return view_table().at(guard, robber);
}

Sign required_parity(GuardId guard) {
  return guard.number() == 4 ? Sign::kMinus : Sign::kPlus;
}

Statement statement(GuardId guard) {
  return {guard, view_table().row(guard), required_parity(guard)};
}

Sign AnswerSet::product() const {
  Sign p = Sign::kPlus;
  for (Color c : colors) p = p * color_sign(c);
  return p;
}

bool verify(GuardId guard, const AnswerSet& answers) {
  return answers.product() == required_parity(guard);
}

bool red_count_claim_holds(GuardId guard, const AnswerSet& answers) {
  int red = 0;
  for (Color c : answers.colors) red += c == Color::kRed ? 1 : 0;
  return guard.number() == 4 ? red % 2 == 0 : red % 2 == 1;
}

std::string_view to_string(Color c) {
  return c == Color::kRed ? "Red" : "Green";
}

std::string_view to_string(SideView s) {
  return s == SideView::kFront ? "Front" : "Back";
}

std::string_view to_string(RobberId r) {
  switch (r) {
    case RobberId::kA: return "A";
    case RobberId::kB: return "B";
    case RobberId::kC: return "C";
  }
  return "?";
}

std::optional<Color> parse_color(std::string_view s) {
  if (s == "Red") return Color::kRed;
  if (s == "Green") return Color::kGreen;
  return std::nullopt;
}

std::optional<SideView> parse_side(std::string_view s) {
  if (s == "Front") return SideView::kFront;
  if (s == "Back") return SideView::kBack;
  return std::nullopt;
}

std::optional<RobberId> parse_robber(std::string_view s) {
  if (s == "A") return RobberId::kA;
  if (s == "B") return RobberId::kB;
  if (s == "C") return RobberId::kC;
  return std::nullopt;
}

}  // namespace ghz::game
