#include "ghz/distributed.hpp"
#include "ghz/strategy.hpp"

namespace ghz::harness {
namespace {

void handshake(net::LineChannel& ch, const std::string& role,
               const std::string& session, std::string_view expected_peer,
               std::chrono::milliseconds timeout) {
  ch.send(wire::Hello{role, session});
  std::string line;
  if (ch.read_line(line, timeout) != net::LineChannel::ReadStatus::kLine) {
    throw net::TransportError("no HELLO from " + std::string(expected_peer));
  }
  const auto msg = wire::decode(line);
  const auto* hello = std::get_if<wire::Hello>(&msg);
  if (!hello || hello->role != expected_peer || hello->session != session) {
    throw net::TransportError("handshake with " + std::string(expected_peer) +
                              " rejected: " + line);
  }
}

}  // namespace

std::filesystem::path rx_capture_path(const std::filesystem::path& dir,
                                      game::RobberId suspect,
                                      std::string_view peer) {
  return dir / (wire::agent_role(suspect) + "." + std::string(peer) + ".rx");
}

AgentReport agent_run(const AgentOptions& options) {
  const std::string role = wire::agent_role(options.suspect);
  const game::RobberId me = options.suspect;

  net::LineChannel device(net::connect_tcp(options.device, options.idle_timeout));
  net::LineChannel referee(net::connect_tcp(options.referee, options.idle_timeout));
  if (options.capture_dir) {
    device.capture_rx(rx_capture_path(*options.capture_dir, me, wire::kRoleDevice));
    device.capture_tx((*options.capture_dir / (role + ".device.tx")).string());
    referee.capture_rx(rx_capture_path(*options.capture_dir, me, wire::kRoleReferee));
  }
  handshake(device, role, options.session, wire::kRoleDevice, options.timeout);
  handshake(referee, role, options.session, wire::kRoleReferee, options.timeout);

  AgentReport report;
  std::optional<std::uint64_t> last_trial;
  auto report_error = [&](std::string_view code, std::string detail,
                          std::optional<std::uint64_t> trial) {
    ++report.errors;
    referee.send(wire::Error{std::string(code), std::move(detail), trial, me});
  };

  for (;;) {
    std::string line;
    const auto status = referee.read_line(line, options.idle_timeout);
    if (status == net::LineChannel::ReadStatus::kClosed) break;
    if (status == net::LineChannel::ReadStatus::kTimeout) {
      throw net::TransportError(role + ": referee idle timeout");
    }

    wire::WireMessage msg;
    try {
      msg = wire::decode(line);
    } catch (const wire::DecodeError& e) {
      report_error(wire::error_code::kParse, e.what(), std::nullopt);
      continue;
    }
    const auto* ask = std::get_if<wire::Ask>(&msg);
    if (!ask) {
      report_error(wire::error_code::kProtocol,
                   "unexpected " + std::string(wire::type_name(msg)), std::nullopt);
      continue;
    }
    if (ask->suspect != me) {
      report_error(wire::error_code::kRole, "ASK addressed to another suspect",
                   ask->trial);
      continue;
    }
    if (last_trial && ask->trial <= *last_trial) {
      report_error(wire::error_code::kDuplicate, "already asked in this trial",
                   ask->trial);
      continue;
    }
    last_trial = ask->trial;

    const PlayStrategy& play = options.strategy;
    game::Color color = game::Color::kRed;
    if (play.kind == PlayStrategy::Kind::kClassical) {
      color = play.table.answer(me, ask->side);
    } else {
      device.send(wire::Measure{ask->trial, me, strategy::basis_for_question(ask->side)});
      std::string reply;
      const auto st = device.read_line(reply, options.timeout);
      if (st != net::LineChannel::ReadStatus::kLine) {
        report_error(wire::error_code::kTimeout, "no OUTCOME from device",
                     ask->trial);
        if (st == net::LineChannel::ReadStatus::kClosed) break;
        continue;
      }
      wire::WireMessage out;
      try {
        out = wire::decode(reply);
      } catch (const wire::DecodeError& e) {
        report_error(wire::error_code::kParse, e.what(), ask->trial);
        continue;
      }
      if (const auto* err = std::get_if<wire::Error>(&out)) {
        report_error(err->code, "device: " + err->detail, ask->trial);
        continue;
      }
      const auto* outcome = std::get_if<wire::Outcome>(&out);
      if (!outcome || outcome->trial != ask->trial || outcome->suspect != me) {
        report_error(wire::error_code::kProtocol, "mismatched OUTCOME", ask->trial);
        continue;
      }
      color = play.kind == PlayStrategy::Kind::kQuantum
                  ? strategy::color_for_outcome(outcome->sign)
                  : play.fixed;
    }
    referee.send(wire::Answer{ask->trial, me, color});
    ++report.answered;
  }
  return report;
}

}  // namespace ghz::harness
