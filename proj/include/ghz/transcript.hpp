#ifndef GHZ_TRANSCRIPT_HPP_
#define GHZ_TRANSCRIPT_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ghz/game.hpp"
#include "ghz/qsim.hpp"

namespace ghz::harness {

struct SuspectRecord {
  game::SideView question = game::SideView::kFront;
  // Basis and outcome are unknown to the referee in distributed mode until
  // merged from the device log.
  std::optional<qsim::MeasBasis> basis;
  std::optional<Sign> outcome;
  std::optional<game::Color> answer;
  // Local mode: logical ticks within the trial. Distributed mode:
  // microseconds since the referee started the session.
  std::int64_t asked_at = 0;
  std::int64_t answered_at = 0;

  friend bool operator==(const SuspectRecord&, const SuspectRecord&) = default;
};

struct Transcript {
  std::uint64_t trial = 0;
  game::GuardId guard{1};
  std::array<SuspectRecord, 3> suspects{};
  bool verdict = false;
  bool aborted = false;
  std::string abort_reason;
  std::uint64_t seed = 0;

  // All three answers, when every suspect answered.
  std::optional<game::AnswerSet> answers() const;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

// verdict == game::verify(guard, answers) for completed trials; aborted
// trials must carry verdict false.
bool verdict_sound(const Transcript& t);

nlohmann::json to_json(const Transcript& t);
// Throws std::invalid_argument on a malformed record.
Transcript transcript_from_json(const nlohmann::json& j);

// Appends one JSON object per line.
void append_transcripts(const std::filesystem::path& path,
                        const std::vector<Transcript>& transcripts);
std::vector<Transcript> read_transcripts(const std::filesystem::path& path);

}  // namespace ghz::harness

#endif  // GHZ_TRANSCRIPT_HPP_
