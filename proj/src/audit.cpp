#include <fstream>
#include <map>

#include "ghz/distributed.hpp"
#include "ghz/strategy.hpp"

namespace ghz::harness {
namespace {

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::vector<std::string> out;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

struct DeviceRecord {
  std::uint64_t trial;
  game::RobberId suspect;
  qsim::MeasBasis basis;
  Sign sign;
  int seq;
};

std::vector<DeviceRecord> read_device_log(const std::filesystem::path& path) {
  std::vector<DeviceRecord> out;
  for (const auto& line : read_lines(path)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    out.push_back({j.at("trial").get<std::uint64_t>(),
                   *game::parse_robber(j.at("suspect").get<std::string>()),
                   wire::parse_basis(j.at("basis").get<std::string>()),
                   sign_from_int(j.at("sign").get<int>()), j.at("seq").get<int>()});
  }
  return out;
}

}  // namespace

nlohmann::json AuditReport::to_json() const {
  nlohmann::json agents_json = nlohmann::json::object();
  for (const auto& a : agents) {
    agents_json[wire::agent_role(a.suspect)] = {
        {"lines_from_referee", a.lines_from_referee},
        {"lines_from_device", a.lines_from_device},
        {"referee_stream_matches", a.referee_stream_matches},
        {"device_stream_matches", a.device_stream_matches},
        {"violations", a.violations}};
  }
  nlohmann::json orders = nlohmann::json::object();
  for (const auto& [order, counts] : by_arrival_order) {
    orders[order] = {{"trials", counts.first}, {"passes", counts.second}};
  }
  return {{"ok", ok}, {"agents", agents_json}, {"arrival_orders", orders}};
}

AuditReport audit_traffic(const std::filesystem::path& capture_dir,
                          const std::vector<Transcript>& transcripts,
                          const std::string& session) {
  AuditReport report;
  const auto device_log = read_device_log(device_log_path(capture_dir));
  bool ok = true;

  for (game::RobberId r : game::kAllRobbers) {
    AgentAudit& a = report.agents[game::index(r)];
    a.suspect = r;

    // Everything the referee may send this agent: its handshake and its own
    // question in each trial.
    std::vector<std::string> expected_referee{
        wire::encode(wire::Hello{std::string(wire::kRoleReferee), session})};
    for (const auto& t : transcripts) {
      expected_referee.push_back(
          wire::encode(wire::Ask{t.trial, r, t.suspects[game::index(r)].question}));
    }
    const auto from_referee = read_lines(rx_capture_path(capture_dir, r, wire::kRoleReferee));
    a.lines_from_referee = from_referee.size();
    a.referee_stream_matches = from_referee == expected_referee;
    if (!a.referee_stream_matches) {
      a.violations.push_back("referee stream differs from own ASK replay");
    }

    // Everything the device may send: its handshake and the outcomes of this
    // agent's own measurements.
    std::vector<std::string> expected_device{
        wire::encode(wire::Hello{std::string(wire::kRoleDevice), session})};
    for (const auto& rec : device_log) {
      if (rec.suspect != r) continue;
      expected_device.push_back(wire::encode(wire::Outcome{rec.trial, r, rec.sign}));
    }
    const auto from_device = read_lines(rx_capture_path(capture_dir, r, wire::kRoleDevice));
    a.lines_from_device = from_device.size();
    a.device_stream_matches = from_device == expected_device;
    if (!a.device_stream_matches) {
      a.violations.push_back("device stream differs from own OUTCOME replay");
    }

    for (const auto& line : from_referee) {
      const auto msg = wire::decode(line);
      if (const auto* ask = std::get_if<wire::Ask>(&msg); ask && ask->suspect != r) {
        a.violations.push_back("received ASK for another suspect: " + line);
      }
    }
    for (const auto& line : from_device) {
      const auto msg = wire::decode(line);
      if (const auto* o = std::get_if<wire::Outcome>(&msg); o && o->suspect != r) {
        a.violations.push_back("received OUTCOME for another suspect: " + line);
      }
    }

    // The agent's own MEASUREs must use the basis its question calls for.
    const auto sent = read_lines(capture_dir / (wire::agent_role(r) + ".device.tx"));
    for (const auto& line : sent) {
      const auto msg = wire::decode(line);
      const auto* m = std::get_if<wire::Measure>(&msg);
      if (!m) continue;
      if (m->suspect != r || m->trial >= transcripts.size() ||
          m->basis != strategy::basis_for_question(
                          transcripts[m->trial].suspects[game::index(r)].question)) {
        a.violations.push_back("MEASURE inconsistent with question: " + line);
      }
    }
    ok = ok && a.violations.empty();
  }

  std::map<std::uint64_t, std::array<char, 3>> arrival;
  for (const auto& rec : device_log) {
    auto& slots = arrival.try_emplace(rec.trial, std::array<char, 3>{'?', '?', '?'})
                      .first->second;
    if (rec.seq >= 0 && rec.seq < 3) {
      slots[rec.seq] = game::to_string(rec.suspect)[0];
    }
  }
  for (const auto& [trial, slots] : arrival) {
    if (trial >= transcripts.size() || transcripts[trial].aborted) continue;
    auto& counts = report.by_arrival_order[std::string(slots.begin(), slots.end())];
    ++counts.first;
    if (transcripts[trial].verdict) ++counts.second;
  }
  report.ok = ok;
  return report;
}

}  // namespace ghz::harness
