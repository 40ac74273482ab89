#include "ghz/wire.hpp"

#include <json.hpp>

namespace ghz::wire {
namespace {

using nlohmann::json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) {
    throw DecodeError(std::string("missing field \"") + name + "\"");
  }
  return *it;
}

std::string get_string(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_string()) {
    throw DecodeError(std::string("field \"") + name + "\" must be a string");
  }
  return v.get<std::string>();
}

std::uint64_t get_trial(const json& j) {
  const json& v = field(j, "trial");
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw DecodeError("field \"trial\" must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

RobberId get_suspect(const json& j) {
  auto r = game::parse_robber(get_string(j, "suspect"));
  if (!r) throw DecodeError("field \"suspect\" must be A, B or C");
  return *r;
}

}  // namespace

std::string agent_role(RobberId suspect) {
  return "agent-" + std::string(game::to_string(suspect));
}

std::optional<RobberId> suspect_of_role(std::string_view role) {
  constexpr std::string_view prefix = "agent-";
  if (!role.starts_with(prefix)) return std::nullopt;
  return game::parse_robber(role.substr(prefix.size()));
}

qsim::MeasBasis parse_basis(std::string_view s) {
  if (s == "X") return MeasBasis::kX;
  if (s == "Y") return MeasBasis::kY;
  throw DecodeError("basis must be X or Y");
}

std::string_view type_name(const WireMessage& msg) {
  return std::visit(
      Overloaded{
          [](const Hello&) { return std::string_view("HELLO"); },
          [](const Ask&) { return std::string_view("ASK"); },
          [](const Measure&) { return std::string_view("MEASURE"); },
          [](const Outcome&) { return std::string_view("OUTCOME"); },
          [](const Answer&) { return std::string_view("ANSWER"); },
          [](const Verdict&) { return std::string_view("VERDICT"); },
          [](const Error&) { return std::string_view("ERROR"); },
      },
      msg);
}

std::string encode(const WireMessage& msg) {
  json j;
  j["type"] = type_name(msg);
  std::visit(
      Overloaded{
          [&](const Hello& m) {
            j["role"] = m.role;
            j["session"] = m.session;
          },
          [&](const Ask& m) {
            j["trial"] = m.trial;
            j["suspect"] = game::to_string(m.suspect);
            j["side"] = game::to_string(m.side);
          },
          [&](const Measure& m) {
            j["trial"] = m.trial;
            j["suspect"] = game::to_string(m.suspect);
            j["basis"] = qsim::to_string(m.basis);
          },
          [&](const Outcome& m) {
            j["trial"] = m.trial;
            j["suspect"] = game::to_string(m.suspect);
            j["sign"] = to_int(m.sign);
          },
          [&](const Answer& m) {
            j["trial"] = m.trial;
            j["suspect"] = game::to_string(m.suspect);
            j["color"] = game::to_string(m.color);
          },
          [&](const Verdict& m) {
            j["trial"] = m.trial;
            j["guard"] = m.guard;
            j["consistent"] = m.consistent;
            if (m.aborted) j["aborted"] = true;
          },
          [&](const Error& m) {
            j["code"] = m.code;
            j["detail"] = m.detail;
            if (m.trial) j["trial"] = *m.trial;
            if (m.suspect) j["suspect"] = game::to_string(*m.suspect);
          },
      },
      msg);
  return j.dump();
}

WireMessage decode(std::string_view line) {
  json j = json::parse(line.begin(), line.end(), nullptr, false);
  if (j.is_discarded()) throw DecodeError("malformed JSON");
  if (!j.is_object()) throw DecodeError("message must be a JSON object");
  const std::string type = get_string(j, "type");

  if (type == "HELLO") {
    return Hello{get_string(j, "role"), get_string(j, "session")};
  }
  if (type == "ASK") {
    auto side = game::parse_side(get_string(j, "side"));
    if (!side) throw DecodeError("field \"side\" must be Front or Back");
    return Ask{get_trial(j), get_suspect(j), *side};
  }
  if (type == "MEASURE") {
    return Measure{get_trial(j), get_suspect(j),
                   parse_basis(get_string(j, "basis"))};
  }
  if (type == "OUTCOME") {
    const json& s = field(j, "sign");
    if (!s.is_number_integer()) throw DecodeError("field \"sign\" must be +1 or -1");
    const auto v = s.get<std::int64_t>();
    if (v != 1 && v != -1) throw DecodeError("field \"sign\" must be +1 or -1");
    return Outcome{get_trial(j), get_suspect(j), sign_from_int(static_cast<int>(v))};
  }
  if (type == "ANSWER") {
    auto color = game::parse_color(get_string(j, "color"));
    if (!color) throw DecodeError("field \"color\" must be Red or Green");
    return Answer{get_trial(j), get_suspect(j), *color};
  }
  if (type == "VERDICT") {
    const json& g = field(j, "guard");
    const json& c = field(j, "consistent");
    if (!g.is_number_integer() || g.get<int>() < 1 || g.get<int>() > 4) {
      throw DecodeError("field \"guard\" must be 1..4");
    }
    if (!c.is_boolean()) throw DecodeError("field \"consistent\" must be boolean");
    Verdict v{get_trial(j), g.get<int>(), c.get<bool>()};
    if (auto it = j.find("aborted"); it != j.end() && it->is_boolean()) {
      v.aborted = it->get<bool>();
    }
    return v;
  }
  if (type == "ERROR") {
    Error e{get_string(j, "code"), get_string(j, "detail"), std::nullopt,
            std::nullopt};
    if (j.contains("trial")) e.trial = get_trial(j);
    if (j.contains("suspect")) e.suspect = get_suspect(j);
    return e;
  }
  throw DecodeError("unknown message type \"" + type + "\"");
}

}  // namespace ghz::wire
