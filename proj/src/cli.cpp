#include "ghz/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <optional>
#include <string>
#include <vector>

#include "ghz/distributed.hpp"
#include "ghz/oracle.hpp"
#include "ghz/session.hpp"
#include "ghz/strategy.hpp"

namespace ghz::cli {
namespace {

using harness::Endpoint;
using nlohmann::json;

struct Flags {
  std::uint64_t seed = 0;
  std::uint64_t trials = 1000;
  std::string guard = "uniform";
  std::string strategy = "quantum";
  std::string mode = "local";
  std::vector<std::string> endpoints;
  std::string log;
  std::string report = "text";
  std::string session;
  std::string capture_dir;
  std::string suspect;
  int timeout_ms = 5000;
};

void add_session_flags(CLI::App* app, Flags& f) {
  app->add_option("--seed", f.seed, "Session seed");
  app->add_option("--trials", f.trials, "Number of trials")
      ->check(CLI::PositiveNumber);
  app->add_option("--guard", f.guard, "Tested guard: 1..4 or uniform");
  app->add_option("--strategy", f.strategy,
                  "quantum | classical:best | classical:<RGRGRG> | fixed:<Red|Green>");
  app->add_option("--log", f.log, "Append transcripts (JSON lines) to this file");
  app->add_option("--session", f.session, "Session id shared by all roles");
  app->add_option("--timeout-ms", f.timeout_ms, "Per-trial reply timeout")
      ->check(CLI::PositiveNumber);
  app->add_option("--capture-dir", f.capture_dir,
                  "Directory for agent traffic captures and the device log");
}

void add_endpoint_flag(CLI::App* app, Flags& f) {
  app->add_option("--endpoint", f.endpoints, "<role>=<host:port>, role is referee or device");
}

void add_report_flag(CLI::App* app, Flags& f) {
  app->add_option("--report", f.report, "Report format")
      ->check(CLI::IsMember({"text", "json"}));
}

std::optional<Endpoint> endpoint_for(const Flags& f, std::string_view role,
                                     std::string_view env_var) {
  const std::string prefix = std::string(role) + "=";
  for (const auto& e : f.endpoints) {
    if (e.starts_with(prefix)) return Endpoint::parse(e.substr(prefix.size()));
  }
  if (const char* v = std::getenv(std::string(env_var).c_str()); v && *v) {
    return Endpoint::parse(v);
  }
  return std::nullopt;
}

void check_endpoint_roles(const Flags& f) {
  for (const auto& e : f.endpoints) {
    if (!e.starts_with("referee=") && !e.starts_with("device=")) {
      throw std::invalid_argument("--endpoint must be referee=<host:port> or "
                                  "device=<host:port>, got " + e);
    }
  }
}

harness::SessionConfig make_config(const Flags& f) {
  check_endpoint_roles(f);
  harness::SessionConfig c;
  c.seed = f.seed;
  c.trials = f.trials;
  c.guard_policy = harness::GuardPolicy::parse(f.guard);
  c.strategy = harness::PlayStrategy::parse(f.strategy);
  if (f.mode == "local") {
    c.mode = harness::Mode::kLocal;
  } else if (f.mode == "distributed") {
    c.mode = harness::Mode::kDistributed;
  } else {
    throw std::invalid_argument("--mode must be local or distributed");
  }
  c.referee_endpoint = endpoint_for(f, "referee", harness::kEndpointEnvReferee);
  c.device_endpoint = endpoint_for(f, "device", harness::kEndpointEnvDevice);
  if (!f.log.empty()) c.log_path = f.log;
  if (!f.capture_dir.empty()) c.capture_dir = f.capture_dir;
  c.session_id = f.session;
  c.timeout = std::chrono::milliseconds(f.timeout_ms);
  c.validate();
  return c;
}

std::string sign_text(Sign s) { return std::string(to_string(s)); }

int run_exercise1(const Flags& f, std::ostream& out) {
  const auto proof = oracle::product_argument();
  const auto max = oracle::max_satisfiable();
  if (f.report == "json") {
    json mult = json::object();
    for (game::RobberId r : game::kAllRobbers) {
      for (game::SideView s : game::kAllSides) {
        mult[std::string(game::to_string(r)) + "." + std::string(game::to_string(s))] =
            proof.multiplicity[oracle::side_slot(r, s)];
      }
    }
    json witnesses = json::array();
    for (const auto& [guards, coloring] : max.witnesses) {
      witnesses.push_back({{"guards", guards.to_string()}, {"coloring", coloring.to_string()}});
    }
    out << json{{"product_argument",
                 {{"factors", proof.factors.size()},
                  {"multiplicity", mult},
                  {"joint_product", to_int(proof.joint_product)},
                  {"required_product", to_int(proof.required_product)},
                  {"contradiction", proof.contradiction}}},
                {"enumeration",
                 {{"colorings", oracle::kNumColorings},
                  {"satisfying_all_four", max.colorings_satisfying_all_four},
                  {"max_satisfiable", max.count},
                  {"colorings_at_max", max.colorings_at_max},
                  {"witnesses", witnesses}}}}
               .dump(2)
        << '\n';
    return 0;
  }
  out << "Product argument (Red = +1, Green = -1)\n";
  out << "  factors in the four statements: " << proof.factors.size() << '\n';
  for (game::RobberId r : game::kAllRobbers) {
    for (game::SideView s : game::kAllSides) {
      out << "    " << game::to_string(r) << " " << std::left << std::setw(5)
          << game::to_string(s) << " appears "
          << proof.multiplicity[oracle::side_slot(r, s)] << " times\n";
    }
  }
  out << "  product of the twelve factors: " << sign_text(proof.joint_product)
      << " (every side squared)\n";
  out << "  product the guards assert:     " << sign_text(proof.required_product) << '\n';
  out << "  contradiction: " << (proof.contradiction ? "yes" : "no") << "\n\n";
  out << "Enumeration over " << oracle::kNumColorings << " colourings\n";
  out << "  colourings satisfying all four statements: "
      << max.colorings_satisfying_all_four << '\n';
  out << "  max simultaneously satisfiable = " << max.count << '\n';
  out << "  colourings attaining the maximum: " << max.colorings_at_max << '\n';
  for (const auto& [guards, coloring] : max.witnesses) {
    out << "    " << std::left << std::setw(9) << guards.to_string() << " "
        << coloring.to_string() << '\n';
  }
  return 0;
}

int run_exercise2(const Flags& f, std::ostream& out) {
  json rows = json::array();
  for (game::GuardId g : game::kAllGuards) {
    const auto questions = game::view_table().row(g);
    json cand = json::object();
    for (game::RobberId r : game::kAllRobbers) {
      const auto [a, b] = oracle::candidate_statements(r, questions[game::index(r)]);
      cand[std::string(game::to_string(r))] = {a.number(), b.number()};
    }
    rows.push_back({{"guard", g.number()},
                    {"questions",
                     {game::to_string(questions[0]), game::to_string(questions[1]),
                      game::to_string(questions[2])}},
                    {"testable", oracle::testable_statements(questions).to_string()},
                    {"candidates", cand},
                    {"ambiguity_cover", oracle::ambiguity_cover(g).to_string()}});
  }
  if (f.report == "json") {
    out << json{{"guards", rows}}.dump(2) << '\n';
    return 0;
  }
  out << "Tested guard | questions (A B C)  | testable | suspect candidates        | cover\n";
  for (const auto& row : rows) {
    std::string qs;
    for (const auto& q : row["questions"]) qs += q.get<std::string>() + " ";
    std::string cands;
    for (const auto& [who, pair] : row["candidates"].items()) {
      cands += who + ":" + std::to_string(pair[0].get<int>()) + "/" +
               std::to_string(pair[1].get<int>()) + " ";
    }
    out << "      " << row["guard"].get<int>() << "      | " << std::left
        << std::setw(18) << qs << " | " << std::setw(8)
        << row["testable"].get<std::string>() << " | " << std::setw(25) << cands
        << " | " << row["ambiguity_cover"].get<std::string>() << '\n';
  }
  out << "Each set of questions tests exactly one statement; the suspects' "
         "candidate pairs always cover all four.\n";
  return 0;
}

int run_oracle(const Flags& f, std::ostream& out) {
  const auto v = oracle::classical_game_value();
  if (f.report == "json") {
    out << json{{"value", v.value.to_string()},
                {"value_decimal", v.value.to_double()},
                {"witness", oracle::format_strategy(v.witness)},
                {"witness_passes", v.witness_passes.to_string()},
                {"optimal_strategies", v.optimal_strategy_count},
                {"any_strategy_wins_all", v.any_strategy_wins_all},
                {"strategy_coloring_equivalent", v.strategy_coloring_equivalent}}
               .dump(2)
        << '\n';
    return 0;
  }
  out << "classical game value (uniform guard) = " << v.value.to_string() << '\n';
  out << "  witness strategy " << oracle::format_strategy(v.witness)
      << " (A-front A-back B-front B-back C-front C-back)\n";
  out << "  witness passes guards " << v.witness_passes.to_string() << '\n';
  out << "  optimal deterministic strategies: " << v.optimal_strategy_count << " of "
      << oracle::kNumColorings << '\n';
  out << "  strategy with value 1: " << (v.any_strategy_wins_all ? "yes" : "none") << '\n';
  return 0;
}

void print_result(const Flags& f, const harness::SessionResult& r, std::ostream& out) {
  if (f.report == "json") {
    json j{{"stats", r.stats.to_json()}};
    if (r.audit) j["audit"] = r.audit->to_json();
    out << j.dump(2) << '\n';
    return;
  }
  out << r.stats.to_text();
  if (r.audit) {
    out << "traffic audit: " << (r.audit->ok ? "ok" : "FAILED") << '\n';
    for (const auto& a : r.audit->agents) {
      for (const auto& v : a.violations) {
        out << "  " << wire::agent_role(a.suspect) << ": " << v << '\n';
      }
    }
  }
}

int run_play(const Flags& f, std::ostream& out, std::ostream& err) {
  const auto config = make_config(f);
  try {
    const auto result = harness::run_trials(config);
    print_result(f, result, out);
    return result.audit && !result.audit->ok ? 1 : 0;
  } catch (const harness::SessionError& e) {
    err << "session error: " << e.what() << '\n';
    print_result(f, e.partial(), out);
    return 1;
  }
}

int run_serve_device(const Flags& f, std::ostream& out) {
  check_endpoint_roles(f);
  const auto at = endpoint_for(f, "device", harness::kEndpointEnvDevice);
  if (!at) throw std::invalid_argument("serve device needs --endpoint device=<host:port>");
  harness::DeviceOptions opts;
  opts.seed = f.seed;
  opts.session = f.session.empty() ? "session-" + std::to_string(f.seed) : f.session;
  if (!f.capture_dir.empty()) opts.log = harness::device_log_path(f.capture_dir);
  const auto report = harness::device_serve(*at, opts);
  out << "device: " << report.measurements << " measurements, "
      << report.trials_closed << " trials closed, " << report.errors << " errors\n";
  return 0;
}

int run_serve_agent(const Flags& f, std::ostream& out) {
  check_endpoint_roles(f);
  harness::AgentOptions opts;
  const auto suspect = game::parse_robber(f.suspect);
  if (!suspect) throw std::invalid_argument("--suspect must be A, B or C");
  opts.suspect = *suspect;
  const auto referee = endpoint_for(f, "referee", harness::kEndpointEnvReferee);
  const auto device = endpoint_for(f, "device", harness::kEndpointEnvDevice);
  if (!referee || !device) {
    throw std::invalid_argument("serve agent needs referee and device endpoints");
  }
  opts.referee = *referee;
  opts.device = *device;
  opts.session = f.session.empty() ? "session-" + std::to_string(f.seed) : f.session;
  opts.strategy = harness::PlayStrategy::parse(f.strategy);
  opts.timeout = std::chrono::milliseconds(f.timeout_ms);
  if (!f.capture_dir.empty()) opts.capture_dir = std::filesystem::path(f.capture_dir);
  const auto report = harness::agent_run(opts);
  out << wire::agent_role(opts.suspect) << ": " << report.answered << " answers, "
      << report.errors << " errors\n";
  return 0;
}

int run_serve_referee(const Flags& f, std::ostream& out, std::ostream& err) {
  auto config = make_config(f);
  if (!config.referee_endpoint || !config.device_endpoint) {
    throw std::invalid_argument("serve referee needs referee and device endpoints");
  }
  net::Socket listener = net::listen_tcp(*config.referee_endpoint);
  try {
    auto result = harness::referee_run(listener, *config.device_endpoint, config);
    listener.close();
    if (config.capture_dir) {
      harness::merge_device_log(harness::device_log_path(*config.capture_dir),
                                result.transcripts);
      result.audit = harness::audit_traffic(*config.capture_dir, result.transcripts,
                                            config.effective_session_id());
    }
    if (config.log_path) harness::append_transcripts(*config.log_path, result.transcripts);
    print_result(f, result, out);
    return result.audit && !result.audit->ok ? 1 : 0;
  } catch (const harness::SessionError& e) {
    err << "session error: " << e.what() << '\n';
    print_result(f, e.partial(), out);
    return 1;
  }
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out,
                 std::ostream& err) {
  CLI::App app{"GHZ pseudo-telepathy game: classical analysis and quantum play"};
  app.name("ghz");
  app.require_subcommand(1);
  Flags f;

  auto* ex1 = app.add_subcommand("exercise1", "Inconsistency of the four statements");
  add_report_flag(ex1, f);
  auto* ex2 = app.add_subcommand("exercise2", "Testability and ambiguity tables");
  add_report_flag(ex2, f);
  auto* orc = app.add_subcommand("oracle", "Optimal classical game value");
  add_report_flag(orc, f);

  auto* play = app.add_subcommand("play", "Run trials of the game");
  add_session_flags(play, f);
  add_endpoint_flag(play, f);
  add_report_flag(play, f);
  play->add_option("--mode", f.mode, "local or distributed")
      ->check(CLI::IsMember({"local", "distributed"}));

  auto* serve = app.add_subcommand("serve", "Run one distributed role");
  serve->require_subcommand(1);
  auto* device = serve->add_subcommand("device", "Hold the shared register");
  auto* agent = serve->add_subcommand("agent", "Answer for one suspect");
  auto* referee = serve->add_subcommand("referee", "Question the suspects");
  for (auto* sub : {device, agent, referee}) {
    add_session_flags(sub, f);
    add_endpoint_flag(sub, f);
  }
  add_report_flag(referee, f);
  agent->add_option("--suspect", f.suspect, "A, B or C")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*ex1) return run_exercise1(f, out);
    if (*ex2) return run_exercise2(f, out);
    if (*orc) return run_oracle(f, out);
    if (*play) return run_play(f, out, err);
    if (*device) return run_serve_device(f, out);
    if (*agent) return run_serve_agent(f, out);
    if (*referee) {
      f.mode = "distributed";
      return run_serve_referee(f, out, err);
    }
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace ghz::cli
