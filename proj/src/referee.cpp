#include <poll.h>

#include "ghz/distributed.hpp"

namespace ghz::harness {
namespace {

using Clock = std::chrono::steady_clock;

net::LineChannel accept_agent(const net::Socket& listener, const std::string& session,
                              std::chrono::milliseconds timeout,
                              game::RobberId& suspect) {
  auto s = net::accept_with_timeout(listener, timeout);
  if (!s) throw net::TransportError("timed out waiting for agents to connect");
  net::LineChannel ch(std::move(*s));
  std::string line;
  if (ch.read_line(line, timeout) != net::LineChannel::ReadStatus::kLine) {
    throw net::TransportError("agent sent no HELLO");
  }
  wire::WireMessage msg;
  try {
    msg = wire::decode(line);
  } catch (const wire::DecodeError& e) {
    throw net::TransportError(std::string("bad agent HELLO: ") + e.what());
  }
  const auto* hello = std::get_if<wire::Hello>(&msg);
  const auto who = hello ? wire::suspect_of_role(hello->role) : std::nullopt;
  if (!hello || hello->session != session || !who) {
    ch.send(wire::Error{std::string(wire::error_code::kRole), "rejected: " + line,
                        std::nullopt, std::nullopt});
    throw net::TransportError("agent handshake rejected: " + line);
  }
  suspect = *who;
  ch.send(wire::Hello{std::string(wire::kRoleReferee), session});
  return ch;
}

}  // namespace

SessionResult referee_run(net::Socket& listener, const Endpoint& device_endpoint,
                          const SessionConfig& config) {
  config.validate();
  const std::string session = config.effective_session_id();
  const auto connect_timeout = std::max(config.timeout, std::chrono::milliseconds(10000));
  SessionResult result;

  net::LineChannel device(net::connect_tcp(device_endpoint, connect_timeout));
  device.send(wire::Hello{std::string(wire::kRoleReferee), session});
  {
    std::string line;
    if (device.read_line(line, connect_timeout) != net::LineChannel::ReadStatus::kLine) {
      throw SessionError("device did not answer HELLO", result);
    }
    const auto msg = wire::decode(line);
    const auto* hello = std::get_if<wire::Hello>(&msg);
    if (!hello || hello->role != wire::kRoleDevice) {
      throw SessionError("device handshake rejected: " + line, result);
    }
  }

  std::array<std::optional<net::LineChannel>, 3> agents;
  for (int n = 0; n < 3; ++n) {
    game::RobberId who{};
    auto ch = accept_agent(listener, session, connect_timeout, who);
    if (agents[game::index(who)]) {
      throw SessionError("two agents claimed suspect " +
                             std::string(game::to_string(who)),
                         result);
    }
    agents[game::index(who)] = std::move(ch);
  }

  const auto start = Clock::now();
  auto now_us = [&] {
    return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start)
        .count();
  };

  result.transcripts.reserve(config.trials);
  for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
    Transcript t;
    t.trial = trial;
    t.seed = config.seed;
    t.guard = config.guard_policy.draw(config.seed, trial);

    try {
      for (game::RobberId r : game::kAllRobbers) {
        SuspectRecord& rec = t.suspects[game::index(r)];
        rec.question = game::question_for(t.guard, r);
        rec.asked_at = now_us();
        agents[game::index(r)]->send(wire::Ask{trial, r, rec.question});
      }

      std::array<bool, 3> done{};
      const auto deadline = Clock::now() + config.timeout;
      while (!(done[0] && done[1] && done[2])) {
        for (game::RobberId r : game::kAllRobbers) {
          if (!done[game::index(r)] && !agents[game::index(r)]->open()) {
            throw net::TransportError(wire::agent_role(r) + " disconnected");
          }
        }
        std::vector<pollfd> fds;
        for (auto& a : agents) fds.push_back({a->open() ? a->fd() : -1, POLLIN, 0});
        const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
            deadline - Clock::now());
        const int rc = left.count() > 0
                           ? ::poll(fds.data(), fds.size(), static_cast<int>(left.count()))
                           : 0;
        if (rc < 0 && errno == EINTR) continue;
        if (rc <= 0) {
          t.aborted = true;
          for (game::RobberId r : game::kAllRobbers) {
            if (!done[game::index(r)]) {
              t.abort_reason += (t.abort_reason.empty() ? "" : "; ") +
                                std::string("timeout waiting for ") +
                                wire::agent_role(r);
            }
          }
          break;
        }
        for (game::RobberId r : game::kAllRobbers) {
          auto& ch = *agents[game::index(r)];
          if (fds[game::index(r)].revents == 0) continue;
          const bool alive = ch.pump();
          std::string line;
          while (ch.take_buffered_line(line)) {
            wire::WireMessage msg;
            try {
              msg = wire::decode(line);
            } catch (const wire::DecodeError&) {
              continue;
            }
            if (const auto* a = std::get_if<wire::Answer>(&msg)) {
              if (a->trial != trial) continue;  // stale, from an aborted trial
              if (a->suspect != r || done[game::index(r)]) {
                t.aborted = true;
                t.abort_reason += "protocol violation by " + wire::agent_role(r);
                done[game::index(r)] = true;
                continue;
              }
              t.suspects[game::index(r)].answer = a->color;
              t.suspects[game::index(r)].answered_at = now_us();
              done[game::index(r)] = true;
            } else if (const auto* e = std::get_if<wire::Error>(&msg)) {
              if (e->trial && *e->trial != trial) continue;
              t.aborted = true;
              t.abort_reason += (t.abort_reason.empty() ? "" : "; ") +
                                wire::agent_role(r) + " " + e->code + ": " + e->detail;
              done[game::index(r)] = true;
            }
          }
          // An agent may hang up right after its last answer.
          if (!alive && !done[game::index(r)]) {
            throw net::TransportError(wire::agent_role(r) + " disconnected");
          }
        }
      }

      t.verdict = !t.aborted && game::verify(t.guard, *t.answers());
      device.send(wire::Verdict{trial, t.guard.number(), t.verdict, t.aborted});
    } catch (const net::TransportError& e) {
      throw SessionError(std::string("trial ") + std::to_string(trial) + ": " +
                             e.what(),
                         result);
    }
    result.stats.add(t);
    result.transcripts.push_back(std::move(t));
  }
  return result;
}

}  // namespace ghz::harness
