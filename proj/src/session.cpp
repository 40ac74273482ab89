#include "ghz/session.hpp"

#include <charconv>

#include "ghz/distributed.hpp"
#include "ghz/strategy.hpp"

namespace ghz::harness {

Endpoint Endpoint::parse(std::string_view text) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos || colon == 0) {
    throw std::invalid_argument("endpoint must be host:port, got \"" +
                                std::string(text) + "\"");
  }
  Endpoint e;
  e.host = std::string(text.substr(0, colon));
  const auto port_text = text.substr(colon + 1);
  unsigned port = 0;
  auto [ptr, ec] = std::from_chars(port_text.data(),
                                   port_text.data() + port_text.size(), port);
  if (ec != std::errc() || ptr != port_text.data() + port_text.size() ||
      port > 65535) {
    throw std::invalid_argument("bad port in endpoint \"" + std::string(text) +
                                "\"");
  }
  e.port = static_cast<std::uint16_t>(port);
  return e;
}

std::string Endpoint::to_string() const {
  return host + ":" + std::to_string(port);
}

GuardPolicy GuardPolicy::parse(std::string_view text) {
  if (text == "uniform") return {};
  if (text.size() == 1 && text[0] >= '1' && text[0] <= '4') {
    return {game::GuardId(text[0] - '0')};
  }
  throw std::invalid_argument("guard must be 1..4 or uniform");
}

game::GuardId GuardPolicy::draw(std::uint64_t seed, std::uint64_t trial) const {
  if (fixed) return *fixed;
  Engine e = trial_stream(seed, trial, StreamPurpose::kGuardChoice);
  return uniform_guard(e);
}

std::string GuardPolicy::to_string() const {
  return fixed ? std::to_string(fixed->number()) : "uniform";
}

PlayStrategy PlayStrategy::parse(std::string_view text) {
  if (text == "quantum") return quantum();
  if (text == "classical:best") {
    return classical(oracle::classical_game_value().witness);
  }
  if (text.starts_with("classical:")) {
    return classical(oracle::parse_strategy(text.substr(10)));
  }
  if (text.starts_with("fixed:")) {
    auto c = game::parse_color(text.substr(6));
    if (!c) throw std::invalid_argument("fixed strategy needs Red or Green");
    return fixed_color(*c);
  }
  throw std::invalid_argument(
      "strategy must be quantum, classical:best, classical:<RGRGRG> or "
      "fixed:<Red|Green>");
}

std::string PlayStrategy::to_string() const {
  switch (kind) {
    case Kind::kQuantum: return "quantum";
    case Kind::kClassical: return "classical:" + oracle::format_strategy(table);
    case Kind::kFixedColor: return "fixed:" + std::string(game::to_string(fixed));
  }
  return "?";
}

void SessionConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (timeout.count() <= 0) throw std::invalid_argument("timeout must be positive");
  if (mode == Mode::kDistributed && referee_endpoint && device_endpoint &&
      referee_endpoint->port != 0 && *referee_endpoint == *device_endpoint) {
    throw std::invalid_argument("referee and device endpoints must differ");
  }
}

std::string SessionConfig::effective_session_id() const {
  return session_id.empty() ? "session-" + std::to_string(seed) : session_id;
}

const PlayStrategy& SessionConfig::strategy_for(game::RobberId r) const {
  auto it = agent_strategies.find(r);
  return it == agent_strategies.end() ? strategy : it->second;
}

Transcript run_local_game(game::GuardId guard, Engine& device_rng,
                          const PlayStrategy& play,
                          const qsim::QubitOrder& order, std::uint64_t trial) {
  return run_local_game(guard, device_rng, {play, play, play}, order, trial);
}

Transcript run_local_game(game::GuardId guard, Engine& device_rng,
                          const std::array<PlayStrategy, 3>& strategies,
                          const qsim::QubitOrder& order, std::uint64_t trial) {
  Transcript t;
  t.trial = trial;
  t.guard = guard;

  strategy::SharedRegister reg([&device_rng] { return uniform01(device_rng); });
  std::int64_t tick = 0;
  for (qsim::QubitId q : order) {
    const auto r = static_cast<game::RobberId>(q);
    SuspectRecord& rec = t.suspects[game::index(r)];
    rec.question = game::question_for(guard, r);
    rec.asked_at = tick++;
    const PlayStrategy& play = strategies[game::index(r)];
    switch (play.kind) {
      case PlayStrategy::Kind::kClassical:
        rec.answer = play.table.answer(r, rec.question);
        break;
      case PlayStrategy::Kind::kQuantum:
      case PlayStrategy::Kind::kFixedColor: {
        strategy::AgentHandle handle(r);
        const auto a = strategy::quantum_answer_recorded(handle, rec.question, reg);
        rec.basis = a.basis;
        rec.outcome = a.outcome;
        rec.answer = play.kind == PlayStrategy::Kind::kQuantum ? a.color : play.fixed;
        break;
      }
    }
    rec.answered_at = tick++;
  }
  t.verdict = game::verify(guard, *t.answers());
  return t;
}

SessionResult run_trials(const SessionConfig& config) {
  config.validate();
  if (config.mode == Mode::kDistributed) return run_distributed(config);

  SessionResult result;
  result.transcripts.reserve(config.trials);
  for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
    const game::GuardId guard = config.guard_policy.draw(config.seed, trial);
    Engine device = trial_stream(config.seed, trial, StreamPurpose::kDevice);
    Transcript t = run_local_game(
        guard, device,
        {config.strategy_for(game::RobberId::kA),
         config.strategy_for(game::RobberId::kB),
         config.strategy_for(game::RobberId::kC)},
        kDefaultOrder, trial);
    t.seed = config.seed;
    result.stats.add(t);
    result.transcripts.push_back(std::move(t));
  }
  if (config.log_path) append_transcripts(*config.log_path, result.transcripts);
  return result;
}

}  // namespace ghz::harness
