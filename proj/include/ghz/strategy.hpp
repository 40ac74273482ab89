#ifndef GHZ_STRATEGY_HPP_
#define GHZ_STRATEGY_HPP_

// The suspects' quantum strategy.
//
// Asked about the front: press Lock, which measures spin along y.
// Asked about the back:  press Unlock, which measures spin along x.
// Outcome +1 (|otimes> or |->>) means answer Red, -1 means Green.

#include <cstdint>
#include <functional>
#include <stdexcept>

#include "ghz/game.hpp"
#include "ghz/qsim.hpp"

namespace ghz::strategy {

using game::Color;
using game::RobberId;
using game::SideView;
using qsim::MeasBasis;
using qsim::MeasOutcome;

enum class Button : std::uint8_t { kLock, kUnlock };

struct QuestionMapping {
  static Button side_to_button(SideView side);
  static MeasBasis button_to_basis(Button b);
  static Color outcome_to_color(MeasOutcome o);
};

MeasBasis basis_for_question(SideView side);
Color color_for_outcome(MeasOutcome outcome);

qsim::QubitId qubit_of(RobberId suspect);

class ProtocolViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Anything that can measure one suspect's qubit of a shared register.
class MeasurementDevice {
 public:
  virtual ~MeasurementDevice() = default;
  virtual MeasOutcome measure(RobberId suspect, MeasBasis basis) = 0;
};

struct AnswerRecord {
  MeasBasis basis;
  MeasOutcome outcome;
  Color color;
};

class AgentHandle;
// quantum_answer plus the basis and outcome behind the answer.
AnswerRecord quantum_answer_recorded(AgentHandle& handle, SideView side,
                                     MeasurementDevice& device);

// One suspect's single-use right to measure its own qubit for one game.
// Move-only: a handle cannot be duplicated and handed to another party.
class AgentHandle {
 public:
  explicit AgentHandle(RobberId suspect) : suspect_(suspect) {}
  AgentHandle(const AgentHandle&) = delete;
  AgentHandle& operator=(const AgentHandle&) = delete;
  AgentHandle(AgentHandle&& other) noexcept
      : suspect_(other.suspect_), used_(other.used_) {
    other.used_ = true;
  }
  AgentHandle& operator=(AgentHandle&&) = delete;

  RobberId suspect() const { return suspect_; }
  bool used() const { return used_; }

 private:
  friend AnswerRecord quantum_answer_recorded(AgentHandle&, SideView,
                                              MeasurementDevice&);
  RobberId suspect_;
  bool used_ = false;
};

// Measures the handle's qubit in the basis for `side` and maps the outcome
// to a colour. Throws ProtocolViolation if the handle was already used.
Color quantum_answer(AgentHandle& handle, SideView side,
                     MeasurementDevice& device);

// In-process device: a GHZ register plus a stream of uniform draws.
// Each qubit may be measured once per game; reset() starts the next game.
class SharedRegister : public MeasurementDevice {
 public:
  using UniformSource = std::function<double()>;

  explicit SharedRegister(UniformSource uniform);

  MeasOutcome measure(RobberId suspect, MeasBasis basis) override;

  void reset();
  const qsim::StateVector& state() const { return state_; }

 private:
  UniformSource uniform_;
  qsim::StateVector state_;
  std::uint8_t measured_ = 0;
};

}  // namespace ghz::strategy

#endif  // GHZ_STRATEGY_HPP_
