#ifndef GHZ_SESSION_HPP_
#define GHZ_SESSION_HPP_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghz/oracle.hpp"
#include "ghz/qsim.hpp"
#include "ghz/rng.hpp"
#include "ghz/stats.hpp"
#include "ghz/transcript.hpp"

namespace ghz::harness {

struct Endpoint {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;  // 0 = pick a free port

  // "host:port"; throws std::invalid_argument.
  static Endpoint parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

inline constexpr std::string_view kEndpointEnvReferee = "GHZ_REFEREE_ENDPOINT";
inline constexpr std::string_view kEndpointEnvDevice = "GHZ_DEVICE_ENDPOINT";

// Uniform when `fixed` is empty.
struct GuardPolicy {
  std::optional<game::GuardId> fixed;

  // "uniform" or "1".."4"; throws std::invalid_argument.
  static GuardPolicy parse(std::string_view text);
  game::GuardId draw(std::uint64_t seed, std::uint64_t trial) const;
  std::string to_string() const;
};

enum class Mode { kLocal, kDistributed };

// How the suspects answer.
struct PlayStrategy {
  enum class Kind { kQuantum, kClassical, kFixedColor };
  Kind kind = Kind::kQuantum;
  // kClassical: answer table.
  oracle::DeterministicStrategy table{};
  // kFixedColor: measure as the quantum strategy would, then ignore the
  // outcome and always give this colour.
  game::Color fixed = game::Color::kRed;

  static PlayStrategy quantum() { return {}; }
  static PlayStrategy classical(const oracle::DeterministicStrategy& s) {
    return {Kind::kClassical, s, game::Color::kRed};
  }
  static PlayStrategy fixed_color(game::Color c) {
    return {Kind::kFixedColor, {}, c};
  }

  // "quantum", "classical:best", "classical:<6 R/G letters>", "fixed:Red",
  // "fixed:Green"; throws std::invalid_argument.
  static PlayStrategy parse(std::string_view text);
  std::string to_string() const;
};

struct SessionConfig {
  std::uint64_t seed = 0;
  std::uint64_t trials = 1;
  GuardPolicy guard_policy;
  Mode mode = Mode::kLocal;
  PlayStrategy strategy;
  // Overrides `strategy` for individual agents (distributed mode).
  std::map<game::RobberId, PlayStrategy> agent_strategies;
  std::optional<Endpoint> referee_endpoint;
  std::optional<Endpoint> device_endpoint;
  std::optional<std::filesystem::path> log_path;
  // Where distributed runs keep per-agent traffic captures and the device
  // log. A fresh temporary directory is used when empty.
  std::optional<std::filesystem::path> capture_dir;
  std::string session_id;
  std::chrono::milliseconds timeout{5000};

  // Throws std::invalid_argument.
  void validate() const;
  std::string effective_session_id() const;
  const PlayStrategy& strategy_for(game::RobberId r) const;
};

struct AgentAudit {
  game::RobberId suspect = game::RobberId::kA;
  std::uint64_t lines_from_referee = 0;
  std::uint64_t lines_from_device = 0;
  bool referee_stream_matches = false;
  bool device_stream_matches = false;
  std::vector<std::string> violations;
};

struct AuditReport {
  std::array<AgentAudit, 3> agents{};
  // Completed trials by the order in which the device received the three
  // MEASUREs, e.g. "BAC", with the number that passed.
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> by_arrival_order;
  bool ok = false;

  nlohmann::json to_json() const;
};

struct SessionResult {
  Stats stats;
  std::vector<Transcript> transcripts;
  std::optional<AuditReport> audit;
};

class SessionError : public std::runtime_error {
 public:
  SessionError(const std::string& what, SessionResult partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const SessionResult& partial() const { return partial_; }

 private:
  SessionResult partial_;
};

inline constexpr qsim::QubitOrder kDefaultOrder = {
    qsim::QubitId::kA, qsim::QubitId::kB, qsim::QubitId::kC};

// One in-process game. `device_rng` supplies the register's uniform draws;
// suspects answer in `order`.
Transcript run_local_game(game::GuardId guard, Engine& device_rng,
                          const PlayStrategy& strategy = PlayStrategy::quantum(),
                          const qsim::QubitOrder& order = kDefaultOrder,
                          std::uint64_t trial = 0);

// As above with a separate strategy per suspect, indexed by RobberId.
Transcript run_local_game(game::GuardId guard, Engine& device_rng,
                          const std::array<PlayStrategy, 3>& strategies,
                          const qsim::QubitOrder& order = kDefaultOrder,
                          std::uint64_t trial = 0);

// Trial t uses guard_policy.draw(seed, t) and the device stream for (seed, t).
// Distributed mode forks the device and agents; see distributed.hpp.
SessionResult run_trials(const SessionConfig& config);

}  // namespace ghz::harness

#endif  // GHZ_SESSION_HPP_
