#ifndef GHZ_STATS_HPP_
#define GHZ_STATS_HPP_

#include <array>
#include <cstdint>
#include <string>

#include <json.hpp>

#include "ghz/transcript.hpp"

namespace ghz::harness {

struct Interval {
  double lower = 0.0;
  double upper = 1.0;
};

// Exact (Clopper-Pearson) two-sided interval for k successes in n trials.
Interval clopper_pearson(std::uint64_t k, std::uint64_t n,
                         double confidence = 0.95);

struct PassCounts {
  std::uint64_t trials = 0;  // completed (non-aborted)
  std::uint64_t passes = 0;
  std::uint64_t aborted = 0;
  double pass_rate() const {
    return trials ? static_cast<double>(passes) / trials : 0.0;
  }
  friend bool operator==(const PassCounts&, const PassCounts&) = default;
};

struct AnswerCounts {
  std::uint64_t answered = 0;
  std::uint64_t red = 0;
  double red_frequency() const {
    return answered ? static_cast<double>(red) / answered : 0.0;
  }
  friend bool operator==(const AnswerCounts&, const AnswerCounts&) = default;
};

struct Stats {
  std::array<PassCounts, 4> per_guard{};
  std::array<AnswerCounts, 3> per_suspect{};
  // Red frequency of each suspect conditioned on the tested guard.
  std::array<std::array<AnswerCounts, 3>, 4> per_guard_suspect{};
  PassCounts overall{};

  // Aborted trials count towards `aborted` only, never towards pass-rate
  // denominators. Answers from aborted trials are not tallied.
  void add(const Transcript& t);

  std::uint64_t total_trials() const { return overall.trials + overall.aborted; }
  Interval pass_rate_bounds(double confidence = 0.95) const;

  nlohmann::json to_json() const;
  std::string to_text() const;

  friend bool operator==(const Stats&, const Stats&) = default;
};

}  // namespace ghz::harness

#endif  // GHZ_STATS_HPP_
