#ifndef GHZ_WIRE_HPP_
#define GHZ_WIRE_HPP_

// Newline-delimited JSON messages exchanged by referee, device and agents.
//
// One UTF-8 JSON object per line, discriminated by "type". Unknown fields are
// ignored on decode. Encoding is canonical (keys sorted, no whitespace) so a
// message always has exactly one byte representation.
//
//   {"role":"agent-A","session":"s","type":"HELLO"}
//   {"side":"Back","suspect":"A","trial":0,"type":"ASK"}
//   {"basis":"X","suspect":"A","trial":0,"type":"MEASURE"}
//   {"sign":1,"suspect":"A","trial":0,"type":"OUTCOME"}
//   {"color":"Red","suspect":"A","trial":0,"type":"ANSWER"}
//   {"consistent":true,"guard":1,"trial":0,"type":"VERDICT"}
//   {"code":"DUP","detail":"...","type":"ERROR"}

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "ghz/game.hpp"
#include "ghz/qsim.hpp"

namespace ghz::wire {

using game::Color;
using game::RobberId;
using game::SideView;
using qsim::MeasBasis;

namespace error_code {
inline constexpr std::string_view kDuplicate = "DUP";
inline constexpr std::string_view kRole = "ROLE";
inline constexpr std::string_view kSession = "SESSION";
inline constexpr std::string_view kParse = "PARSE";
inline constexpr std::string_view kProtocol = "PROTO";
inline constexpr std::string_view kTimeout = "TIMEOUT";
inline constexpr std::string_view kClosed = "CLOSED";
}  // namespace error_code

// Roles named in HELLO.
inline constexpr std::string_view kRoleReferee = "referee";
inline constexpr std::string_view kRoleDevice = "device";
std::string agent_role(RobberId suspect);
// Suspect for an "agent-X" role; std::nullopt for any other role.
std::optional<RobberId> suspect_of_role(std::string_view role);

struct Hello {
  std::string role;
  std::string session;
  friend bool operator==(const Hello&, const Hello&) = default;
};
struct Ask {
  std::uint64_t trial;
  RobberId suspect;
  SideView side;
  friend bool operator==(const Ask&, const Ask&) = default;
};
struct Measure {
  std::uint64_t trial;
  RobberId suspect;
  MeasBasis basis;
  friend bool operator==(const Measure&, const Measure&) = default;
};
struct Outcome {
  std::uint64_t trial;
  RobberId suspect;
  Sign sign;
  friend bool operator==(const Outcome&, const Outcome&) = default;
};
struct Answer {
  std::uint64_t trial;
  RobberId suspect;
  Color color;
  friend bool operator==(const Answer&, const Answer&) = default;
};
struct Verdict {
  std::uint64_t trial;
  int guard;
  bool consistent;
  // Extension field: the trial was aborted and excluded from pass rates.
  bool aborted = false;
  friend bool operator==(const Verdict&, const Verdict&) = default;
};
struct Error {
  std::string code;
  std::string detail;
  // Extension fields identifying the affected trial, when there is one.
  std::optional<std::uint64_t> trial;
  std::optional<RobberId> suspect;
  friend bool operator==(const Error&, const Error&) = default;
};

using WireMessage =
    std::variant<Hello, Ask, Measure, Outcome, Answer, Verdict, Error>;

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Single line without the trailing newline.
std::string encode(const WireMessage& msg);
// Throws DecodeError on malformed JSON, unknown type or bad field values.
WireMessage decode(std::string_view line);

std::string_view type_name(const WireMessage& msg);

qsim::MeasBasis parse_basis(std::string_view s);

}  // namespace ghz::wire

#endif  // GHZ_WIRE_HPP_
