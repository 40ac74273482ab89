#include <signal.h>
#include <stdlib.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <thread>

#include "ghz/distributed.hpp"

namespace ghz::harness {
namespace {

// Runs `body` in a forked child that never returns to the caller's stack.
pid_t spawn(const std::function<int()>& body) {
  std::cout.flush();
  std::cerr.flush();
  const pid_t pid = ::fork();
  if (pid < 0) throw net::TransportError("fork failed");
  if (pid == 0) {
    int rc = 1;
    try {
      rc = body();
    } catch (const std::exception& e) {
      std::fprintf(stderr, "ghz child %d: %s\n", static_cast<int>(::getpid()),
                   e.what());
    }
    std::fflush(stderr);
    ::_exit(rc);
  }
  return pid;
}

// Exit status per child; children still running after the grace period are
// killed and reported as failed.
std::vector<int> reap(const std::vector<pid_t>& pids, std::chrono::milliseconds grace) {
  std::vector<int> status(pids.size(), -1);
  std::vector<bool> done(pids.size(), false);
  const auto deadline = std::chrono::steady_clock::now() + grace;
  for (;;) {
    bool all = true;
    for (std::size_t i = 0; i < pids.size(); ++i) {
      if (done[i]) continue;
      int st = 0;
      const pid_t r = ::waitpid(pids[i], &st, WNOHANG);
      if (r == pids[i]) {
        done[i] = true;
        status[i] = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
      } else {
        all = false;
      }
    }
    if (all) return status;
    if (std::chrono::steady_clock::now() >= deadline) break;
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  for (std::size_t i = 0; i < pids.size(); ++i) {
    if (done[i]) continue;
    ::kill(pids[i], SIGKILL);
    ::waitpid(pids[i], nullptr, 0);
  }
  return status;
}

std::filesystem::path make_capture_dir(const SessionConfig& config) {
  if (config.capture_dir) {
    std::filesystem::create_directories(*config.capture_dir);
    for (game::RobberId r : game::kAllRobbers) {
      std::filesystem::remove(rx_capture_path(*config.capture_dir, r, wire::kRoleReferee));
      std::filesystem::remove(rx_capture_path(*config.capture_dir, r, wire::kRoleDevice));
      std::filesystem::remove(*config.capture_dir /
                              (wire::agent_role(r) + ".device.tx"));
    }
    std::filesystem::remove(device_log_path(*config.capture_dir));
    return *config.capture_dir;
  }
  std::string tmpl = (std::filesystem::temp_directory_path() / "ghz-XXXXXX").string();
  if (::mkdtemp(tmpl.data()) == nullptr) {
    throw std::runtime_error("cannot create capture directory");
  }
  return tmpl;
}

}  // namespace

std::filesystem::path device_log_path(const std::filesystem::path& dir) {
  return dir / "device.jsonl";
}

void merge_device_log(const std::filesystem::path& device_log,
                      std::vector<Transcript>& transcripts) {
  std::ifstream in(device_log);
  if (!in) return;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto rec = nlohmann::json::parse(line);
    const auto trial = rec.at("trial").get<std::uint64_t>();
    if (trial >= transcripts.size()) continue;
    const auto suspect = game::parse_robber(rec.at("suspect").get<std::string>());
    if (!suspect) continue;
    SuspectRecord& s = transcripts[trial].suspects[game::index(*suspect)];
    s.basis = wire::parse_basis(rec.at("basis").get<std::string>());
    s.outcome = sign_from_int(rec.at("sign").get<int>());
  }
}

SessionResult run_distributed(const SessionConfig& config) {
  config.validate();
  const std::string session = config.effective_session_id();
  const auto capture_dir = make_capture_dir(config);

  net::Socket referee_listener =
      net::listen_tcp(config.referee_endpoint.value_or(Endpoint{}));
  net::Socket device_listener =
      net::listen_tcp(config.device_endpoint.value_or(Endpoint{}));
  const Endpoint referee_at{config.referee_endpoint.value_or(Endpoint{}).host,
                            net::local_port(referee_listener)};
  const Endpoint device_at{config.device_endpoint.value_or(Endpoint{}).host,
                           net::local_port(device_listener)};

  std::vector<pid_t> children;
  const int referee_fd = referee_listener.fd();

  children.push_back(spawn([&] {
    ::close(referee_fd);
    DeviceOptions opts;
    opts.seed = config.seed;
    opts.session = session;
    opts.log = device_log_path(capture_dir);
    device_serve(net::Socket(device_listener.release()), opts);
    return 0;
  }));
  device_listener.close();

  for (game::RobberId r : game::kAllRobbers) {
    children.push_back(spawn([&, r] {
      ::close(referee_fd);
      AgentOptions opts;
      opts.suspect = r;
      opts.referee = referee_at;
      opts.device = device_at;
      opts.session = session;
      opts.strategy = config.strategy_for(r);
      opts.timeout = config.timeout;
      opts.capture_dir = capture_dir;
      agent_run(opts);
      return 0;
    }));
  }

  SessionResult result;
  try {
    result = referee_run(referee_listener, device_at, config);
  } catch (...) {
    referee_listener.close();
    reap(children, std::chrono::milliseconds(0));
    throw;
  }
  referee_listener.close();

  const auto status = reap(children, std::chrono::milliseconds(10000));
  merge_device_log(device_log_path(capture_dir), result.transcripts);
  result.audit = audit_traffic(capture_dir, result.transcripts, session);
  if (config.log_path) append_transcripts(*config.log_path, result.transcripts);

  for (std::size_t i = 0; i < status.size(); ++i) {
    if (status[i] != 0) {
      throw SessionError(std::string(i == 0 ? "device" : "agent") +
                             " process exited abnormally",
                         result);
    }
  }
  return result;
}

}  // namespace ghz::harness
