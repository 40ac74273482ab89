#ifndef GHZ_GAME_HPP_
#define GHZ_GAME_HPP_

// Classical rules of the interrogation.
//
// Each of four guards saw one side (front or back) of each of three robbers
// and asserts a parity over the colours of those three sides. Colours are
// encoded as signs, Red = +1 and Green = -1, so a guard's statement is
// "the product of the three signs I saw equals my parity".

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ghz/sign.hpp"

namespace ghz::game {

enum class Color : std::uint8_t { kRed, kGreen };
enum class SideView : std::uint8_t { kFront, kBack };
enum class RobberId : std::uint8_t { kA = 0, kB = 1, kC = 2 };

inline constexpr std::array<RobberId, 3> kAllRobbers = {
    RobberId::kA, RobberId::kB, RobberId::kC};
inline constexpr std::array<SideView, 2> kAllSides = {SideView::kFront,
                                                      SideView::kBack};
inline constexpr std::array<Color, 2> kAllColors = {Color::kRed,
                                                    Color::kGreen};

constexpr Sign color_sign(Color c) {
  return c == Color::kRed ? Sign::kPlus : Sign::kMinus;
}
constexpr Color color_from_sign(Sign s) {
  return s == Sign::kPlus ? Color::kRed : Color::kGreen;
}
constexpr std::size_t index(RobberId r) { return static_cast<std::size_t>(r); }

class GuardId {
 public:
  // Throws std::out_of_range unless 1 <= number <= 4.
  explicit GuardId(int number);

  int number() const { return number_; }
  std::size_t index() const { return static_cast<std::size_t>(number_ - 1); }

  friend auto operator<=>(GuardId, GuardId) = default;

 private:
  int number_;
};

inline const std::array<GuardId, 4> kAllGuards = {GuardId(1), GuardId(2),
                                                  GuardId(3), GuardId(4)};

// Small set of guards, ordered by number.
class GuardSet {
 public:
  GuardSet() = default;
  GuardSet(std::initializer_list<int> numbers);

  void insert(GuardId g) { mask_ |= bit(g); }
  bool contains(GuardId g) const { return (mask_ & bit(g)) != 0; }
  int size() const;
  bool empty() const { return mask_ == 0; }
  std::uint8_t mask() const { return mask_; }

  static GuardSet all() { return GuardSet({1, 2, 3, 4}); }

  // "{1,2,3}"
  std::string to_string() const;

  friend bool operator==(GuardSet, GuardSet) = default;

 private:
  static std::uint8_t bit(GuardId g) {
    return static_cast<std::uint8_t>(1u << g.index());
  }
  std::uint8_t mask_ = 0;
};

using SeenSides = std::array<SideView, 3>;  // indexed by RobberId

struct Statement {
  GuardId guard;
  SeenSides seen;
  Sign parity;
};

// Which side each guard saw of each robber.
class ViewTable {
 public:
  SideView at(GuardId g, RobberId r) const { return rows_[g.index()][index(r)]; }
  const SeenSides& row(GuardId g) const { return rows_[g.index()]; }

 private:
  friend ViewTable view_table();
  std::array<SeenSides, 4> rows_{};
};

// The answer each suspect gave, indexed by RobberId.
struct AnswerSet {
  std::array<Color, 3> colors;

  Color operator[](RobberId r) const { return colors[index(r)]; }
  Sign product() const;
};

ViewTable view_table();
SideView question_for(GuardId guard, RobberId robber);
Sign required_parity(GuardId guard);
Statement statement(GuardId guard);
bool verify(GuardId guard, const AnswerSet& answers);

// Phrasing used by the guards themselves: "an odd number wearing red" for
// guards 1-3, "an even number wearing red" for guard 4.
bool red_count_claim_holds(GuardId guard, const AnswerSet& answers);

std::string_view to_string(Color c);
std::string_view to_string(SideView s);
std::string_view to_string(RobberId r);

// Inverse of to_string; std::nullopt on an unknown token.
std::optional<Color> parse_color(std::string_view s);
std::optional<SideView> parse_side(std::string_view s);
std::optional<RobberId> parse_robber(std::string_view s);

}  // namespace ghz::game

#endif  // GHZ_GAME_HPP_
