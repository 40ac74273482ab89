#ifndef GHZ_DISTRIBUTED_HPP_
#define GHZ_DISTRIBUTED_HPP_

// Multi-process play.
//
// Topology: the device and the referee each listen; every agent opens one
// connection to each of them. Agents never learn each other's endpoints, and
// the referee and device only ever send an agent messages about that agent's
// own suspect:
//
//   referee -> agent-X : HELLO, ASK{X}
//   agent-X -> referee : HELLO, ANSWER{X}, ERROR
//   agent-X -> device  : HELLO, MEASURE{X}
//   device  -> agent-X : HELLO, OUTCOME{X}, ERROR
//   referee -> device  : HELLO, VERDICT
//
// The device holds one GHZ register per open trial, seeded from
// (session seed, trial), and applies MEASUREs in arrival order.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "ghz/net.hpp"
#include "ghz/session.hpp"

namespace ghz::harness {

struct DeviceOptions {
  std::uint64_t seed = 0;
  std::string session;
  // One JSON object per measurement: trial, suspect, basis, sign, seq.
  std::optional<std::filesystem::path> log;
  std::chrono::milliseconds idle_timeout{60000};
};

struct DeviceReport {
  std::uint64_t measurements = 0;
  std::uint64_t errors = 0;
  std::uint64_t trials_closed = 0;
};

// Serves until the referee has connected and every connection has closed.
DeviceReport device_serve(net::Socket listener, const DeviceOptions& options);
DeviceReport device_serve(const Endpoint& endpoint, const DeviceOptions& options);

struct AgentOptions {
  game::RobberId suspect = game::RobberId::kA;
  Endpoint referee;
  Endpoint device;
  std::string session;
  PlayStrategy strategy;
  std::chrono::milliseconds timeout{5000};
  std::chrono::milliseconds idle_timeout{60000};
  // Writes agent-X.referee.rx, agent-X.device.rx and agent-X.device.tx.
  std::optional<std::filesystem::path> capture_dir;
};

struct AgentReport {
  std::uint64_t answered = 0;
  std::uint64_t errors = 0;
};

// Answers ASKs until the referee closes the stream.
AgentReport agent_run(const AgentOptions& options);

// Runs config.trials trials against three connected agents. Throws
// SessionError carrying the partial result on transport failure.
SessionResult referee_run(net::Socket& listener, const Endpoint& device,
                          const SessionConfig& config);

// Forks the device and three agents, runs the referee in this process,
// merges the device log into the transcripts and audits the captured traffic.
SessionResult run_distributed(const SessionConfig& config);

// Fills basis/outcome of each transcript from a device log.
void merge_device_log(const std::filesystem::path& device_log,
                      std::vector<Transcript>& transcripts);

// Replays captured agent traffic against the transcripts and the device log.
AuditReport audit_traffic(const std::filesystem::path& capture_dir,
                          const std::vector<Transcript>& transcripts,
                          const std::string& session);

std::filesystem::path rx_capture_path(const std::filesystem::path& dir,
                                      game::RobberId suspect,
                                      std::string_view peer);
std::filesystem::path device_log_path(const std::filesystem::path& dir);

}  // namespace ghz::harness

#endif  // GHZ_DISTRIBUTED_HPP_
