#include "ghz/transcript.hpp"

#include <fstream>
#include <stdexcept>

#include "ghz/wire.hpp"

namespace ghz::harness {

using nlohmann::json;

std::optional<game::AnswerSet> Transcript::answers() const {
  game::AnswerSet a{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!suspects[i].answer) return std::nullopt;
    a.colors[i] = *suspects[i].answer;
  }
  return a;
}

bool verdict_sound(const Transcript& t) {
  if (t.aborted) return !t.verdict;
  const auto a = t.answers();
  return a && t.verdict == game::verify(t.guard, *a);
}

json to_json(const Transcript& t) {
  json suspects = json::object();
  for (game::RobberId r : game::kAllRobbers) {
    const SuspectRecord& s = t.suspects[game::index(r)];
    json rec;
    rec["question"] = game::to_string(s.question);
    rec["basis"] = s.basis ? json(qsim::to_string(*s.basis)) : json(nullptr);
    rec["outcome"] = s.outcome ? json(to_int(*s.outcome)) : json(nullptr);
    rec["answer"] = s.answer ? json(game::to_string(*s.answer)) : json(nullptr);
    rec["asked_at"] = s.asked_at;
    rec["answered_at"] = s.answered_at;
    suspects[std::string(game::to_string(r))] = rec;
  }
  json j;
  j["trial"] = t.trial;
  j["guard"] = t.guard.number();
  j["suspects"] = suspects;
  j["verdict"] = t.verdict;
  j["aborted"] = t.aborted;
  if (t.aborted) j["abort_reason"] = t.abort_reason;
  j["seed"] = t.seed;
  return j;
}

Transcript transcript_from_json(const json& j) {
  try {
    Transcript t;
    t.trial = j.at("trial").get<std::uint64_t>();
    t.guard = game::GuardId(j.at("guard").get<int>());
    for (game::RobberId r : game::kAllRobbers) {
      const json& rec = j.at("suspects").at(std::string(game::to_string(r)));
      SuspectRecord& s = t.suspects[game::index(r)];
      auto q = game::parse_side(rec.at("question").get<std::string>());
      if (!q) throw std::invalid_argument("bad question");
      s.question = *q;
      if (!rec.at("basis").is_null()) {
        s.basis = wire::parse_basis(rec["basis"].get<std::string>());
      }
      if (!rec.at("outcome").is_null()) {
        s.outcome = sign_from_int(rec["outcome"].get<int>());
      }
      if (!rec.at("answer").is_null()) {
        s.answer = game::parse_color(rec["answer"].get<std::string>());
        if (!s.answer) throw std::invalid_argument("bad answer");
      }
      s.asked_at = rec.at("asked_at").get<std::int64_t>();
      s.answered_at = rec.at("answered_at").get<std::int64_t>();
    }
    t.verdict = j.at("verdict").get<bool>();
    t.aborted = j.at("aborted").get<bool>();
    t.abort_reason = j.value("abort_reason", "");
    t.seed = j.at("seed").get<std::uint64_t>();
    return t;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed transcript: ") + e.what());
  } catch (const wire::DecodeError& e) {
    throw std::invalid_argument(std::string("malformed transcript: ") + e.what());
  }
}

void append_transcripts(const std::filesystem::path& path,
                        const std::vector<Transcript>& transcripts) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open log " + path.string());
  for (const auto& t : transcripts) out << to_json(t).dump() << '\n';
}

std::vector<Transcript> read_transcripts(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open log " + path.string());
  std::vector<Transcript> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument("malformed log line");
    out.push_back(transcript_from_json(j));
  }
  return out;
}

}  // namespace ghz::harness
