#ifndef GHZ_SIGN_HPP_
#define GHZ_SIGN_HPP_

#include <cstdint>
#include <string_view>

namespace ghz {

// A value in {+1, -1}. Used for measurement outcomes, colour encodings and
// guard parities, so that every parity argument is a plain product.
enum class Sign : std::int8_t { kPlus = 1, kMinus = -1 };

constexpr int to_int(Sign s) { return static_cast<int>(s); }

constexpr Sign operator*(Sign a, Sign b) {
  return to_int(a) * to_int(b) > 0 ? Sign::kPlus : Sign::kMinus;
}

constexpr Sign operator-(Sign s) {
  return s == Sign::kPlus ? Sign::kMinus : Sign::kPlus;
}

// Throws std::invalid_argument unless v is +1 or -1.
Sign sign_from_int(int v);

std::string_view to_string(Sign s);

}  // namespace ghz

#endif  // GHZ_SIGN_HPP_
