#include "ghz/stats.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>

namespace ghz::harness {

using nlohmann::json;

Interval clopper_pearson(std::uint64_t k, std::uint64_t n, double confidence) {
  if (k > n) throw std::invalid_argument("successes exceed trials");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("confidence must lie in (0,1)");
  }
  if (n == 0) return {0.0, 1.0};
  const double alpha = 1.0 - confidence;
  const auto kd = static_cast<double>(k);
  const auto nd = static_cast<double>(n);
  Interval ci;
  ci.lower = k == 0 ? 0.0 : boost::math::ibeta_inv(kd, nd - kd + 1.0, alpha / 2);
  ci.upper =
      k == n ? 1.0 : boost::math::ibeta_inv(kd + 1.0, nd - kd, 1.0 - alpha / 2);
  return ci;
}

void Stats::add(const Transcript& t) {
  PassCounts& g = per_guard[t.guard.index()];
  if (t.aborted) {
    ++g.aborted;
    ++overall.aborted;
    return;
  }
  ++g.trials;
  ++overall.trials;
  if (t.verdict) {
    ++g.passes;
    ++overall.passes;
  }
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& answer = t.suspects[i].answer;
    if (!answer) continue;
    const bool red = *answer == game::Color::kRed;
    ++per_suspect[i].answered;
    ++per_guard_suspect[t.guard.index()][i].answered;
    if (red) {
      ++per_suspect[i].red;
      ++per_guard_suspect[t.guard.index()][i].red;
    }
  }
}

Interval Stats::pass_rate_bounds(double confidence) const {
  return clopper_pearson(overall.passes, overall.trials, confidence);
}

json Stats::to_json() const {
  auto counts = [](const PassCounts& c) {
    return json{{"trials", c.trials},
                {"passes", c.passes},
                {"aborted", c.aborted},
                {"pass_rate", c.pass_rate()}};
  };
  auto answers = [](const AnswerCounts& c) {
    return json{{"answered", c.answered},
                {"red", c.red},
                {"red_frequency", c.red_frequency()}};
  };
  json guards = json::object();
  for (game::GuardId g : game::kAllGuards) {
    json entry = counts(per_guard[g.index()]);
    json by_suspect = json::object();
    for (game::RobberId r : game::kAllRobbers) {
      by_suspect[std::string(game::to_string(r))] =
          answers(per_guard_suspect[g.index()][game::index(r)]);
    }
    entry["suspects"] = by_suspect;
    guards[std::to_string(g.number())] = entry;
  }
  json suspects = json::object();
  for (game::RobberId r : game::kAllRobbers) {
    suspects[std::string(game::to_string(r))] =
        answers(per_suspect[game::index(r)]);
  }
  const Interval ci = pass_rate_bounds();
  json all = counts(overall);
  all["ci95"] = {ci.lower, ci.upper};
  return json{{"overall", all}, {"guards", guards}, {"suspects", suspects}};
}

std::string Stats::to_text() const {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6);
  const Interval ci = pass_rate_bounds();
  os << "trials: " << total_trials() << " (completed " << overall.trials
     << ", aborted " << overall.aborted << ")\n";
  os << "pass rate: " << overall.pass_rate() << "  95% CI [" << ci.lower
     << ", " << ci.upper << "]\n";
  for (game::GuardId g : game::kAllGuards) {
    const PassCounts& c = per_guard[g.index()];
    os << "  guard " << g.number() << ": " << c.passes << "/" << c.trials
       << " passed";
    if (c.aborted) os << ", " << c.aborted << " aborted";
    os << "  (rate " << c.pass_rate() << ")\n";
  }
  for (game::RobberId r : game::kAllRobbers) {
    const AnswerCounts& c = per_suspect[game::index(r)];
    os << "  suspect " << game::to_string(r) << ": Red "
       << c.red_frequency() << " of " << c.answered << " answers\n";
  }
  return os.str();
}

}  // namespace ghz::harness
