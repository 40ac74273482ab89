#include <poll.h>

#include <fstream>
#include <list>
#include <map>
#include <set>

#include "ghz/distributed.hpp"
#include "ghz/rng.hpp"
#include "ghz/strategy.hpp"

namespace ghz::harness {
namespace {

struct Connection {
  net::LineChannel channel;
  std::string role;
  bool greeted = false;
  bool closed = false;
};

struct OpenTrial {
  qsim::StateVector state = qsim::ghz_state();
  Engine rng;
  std::uint8_t measured = 0;
  int arrivals = 0;
};

class Device {
 public:
  explicit Device(const DeviceOptions& options) : options_(options) {
    if (options_.log) {
      log_.open(*options_.log, std::ios::app);
      if (!log_) throw net::TransportError("cannot open device log");
    }
  }

  DeviceReport serve(net::Socket listener) {
    bool referee_seen = false;
    bool referee_gone = false;
    while (!(referee_seen && referee_gone && connections_.empty())) {
      std::vector<pollfd> fds;
      fds.push_back({listener.fd(), POLLIN, 0});
      for (auto& c : connections_) fds.push_back({c.channel.fd(), POLLIN, 0});
      const int rc = ::poll(fds.data(), fds.size(),
                            static_cast<int>(options_.idle_timeout.count()));
      if (rc < 0) {
        if (errno == EINTR) continue;
        throw net::TransportError("device poll failed");
      }
      if (rc == 0) throw net::TransportError("device idle timeout");

      if (fds[0].revents & POLLIN) {
        if (auto s = net::accept_with_timeout(listener, std::chrono::milliseconds(0))) {
          connections_.push_back({net::LineChannel(std::move(*s)), "", false, false});
        }
      }
      std::size_t i = 1;
      for (auto& c : connections_) {
        if (i >= fds.size()) break;
        if (fds[i++].revents == 0) continue;
        const bool alive = c.channel.pump();
        std::string line;
        while (!c.closed && c.channel.take_buffered_line(line)) handle(c, line);
        if (!alive) c.closed = true;
      }
      for (auto it = connections_.begin(); it != connections_.end();) {
        if (it->closed) {
          if (it->role == wire::kRoleReferee) referee_gone = true;
          it = connections_.erase(it);
        } else {
          if (it->role == wire::kRoleReferee) referee_seen = true;
          ++it;
        }
      }
    }
    return report_;
  }

 private:
  void reply_error(Connection& c, std::string_view code, std::string detail,
                   std::optional<std::uint64_t> trial = std::nullopt,
                   std::optional<game::RobberId> suspect = std::nullopt) {
    ++report_.errors;
    c.channel.send(wire::Error{std::string(code), std::move(detail), trial, suspect});
  }

  bool role_taken(const std::string& role) const {
    for (const auto& c : connections_) {
      if (c.greeted && !c.closed && c.role == role) return true;
    }
    return false;
  }

  void handle(Connection& c, const std::string& line) {
    wire::WireMessage msg;
    try {
      msg = wire::decode(line);
    } catch (const wire::DecodeError& e) {
      reply_error(c, wire::error_code::kParse, e.what());
      return;
    }

    if (!c.greeted) {
      const auto* hello = std::get_if<wire::Hello>(&msg);
      if (!hello) {
        reply_error(c, wire::error_code::kProtocol, "expected HELLO");
        c.closed = true;
        return;
      }
      if (hello->session != options_.session) {
        reply_error(c, wire::error_code::kSession, "unknown session " + hello->session);
        c.closed = true;
        return;
      }
      const bool valid_role = hello->role == wire::kRoleReferee ||
                              wire::suspect_of_role(hello->role).has_value();
      if (!valid_role || role_taken(hello->role)) {
        reply_error(c, wire::error_code::kRole, "role unavailable: " + hello->role);
        c.closed = true;
        return;
      }
      c.role = hello->role;
      c.greeted = true;
      c.channel.send(wire::Hello{std::string(wire::kRoleDevice), options_.session});
      return;
    }

    if (const auto* m = std::get_if<wire::Measure>(&msg)) {
      on_measure(c, *m);
    } else if (const auto* v = std::get_if<wire::Verdict>(&msg)) {
      if (c.role != wire::kRoleReferee) {
        reply_error(c, wire::error_code::kRole, "only the referee closes trials",
                    v->trial);
        return;
      }
      open_.erase(v->trial);
      closed_.insert(v->trial);
      ++report_.trials_closed;
    } else {
      reply_error(c, wire::error_code::kProtocol,
                  "unexpected " + std::string(wire::type_name(msg)));
    }
  }

  void on_measure(Connection& c, const wire::Measure& m) {
    const auto own = wire::suspect_of_role(c.role);
    if (!own || *own != m.suspect) {
      reply_error(c, wire::error_code::kRole,
                  c.role + " may not measure suspect " +
                      std::string(game::to_string(m.suspect)),
                  m.trial, m.suspect);
      return;
    }
    if (closed_.contains(m.trial)) {
      reply_error(c, wire::error_code::kClosed, "trial already closed", m.trial,
                  m.suspect);
      return;
    }
    auto it = open_.find(m.trial);
    if (it == open_.end()) {
      it = open_.emplace(m.trial, OpenTrial{qsim::ghz_state(),
                                            trial_stream(options_.seed, m.trial,
                                                         StreamPurpose::kDevice),
                                            0, 0})
               .first;
    }
    OpenTrial& t = it->second;
    const auto bit = static_cast<std::uint8_t>(1u << game::index(m.suspect));
    if (t.measured & bit) {
      reply_error(c, wire::error_code::kDuplicate, "qubit already measured",
                  m.trial, m.suspect);
      return;
    }
    t.measured |= bit;
    const auto result = qsim::measure_qubit(t.state, strategy::qubit_of(m.suspect),
                                            m.basis, uniform01(t.rng));
    t.state = result.post_state;
    ++report_.measurements;
    if (log_.is_open()) {
      nlohmann::json rec{{"trial", m.trial},
                         {"suspect", game::to_string(m.suspect)},
                         {"basis", qsim::to_string(m.basis)},
                         {"sign", to_int(result.outcome)},
                         {"seq", t.arrivals}};
      log_ << rec.dump() << '\n' << std::flush;
    }
    ++t.arrivals;
    c.channel.send(wire::Outcome{m.trial, m.suspect, result.outcome});
  }

  DeviceOptions options_;
  std::list<Connection> connections_;
  std::map<std::uint64_t, OpenTrial> open_;
  std::set<std::uint64_t> closed_;
  std::ofstream log_;
  DeviceReport report_;
};

}  // namespace

DeviceReport device_serve(net::Socket listener, const DeviceOptions& options) {
  Device device(options);
  return device.serve(std::move(listener));
}

DeviceReport device_serve(const Endpoint& endpoint, const DeviceOptions& options) {
  return device_serve(net::listen_tcp(endpoint), options);
}

}  // namespace ghz::harness
