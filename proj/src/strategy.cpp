#include "ghz/strategy.hpp"

#include <utility>

namespace ghz::strategy {

Button QuestionMapping::side_to_button(SideView side) {
  return side == SideView::kFront ? Button::kLock : Button::kUnlock;
}

MeasBasis QuestionMapping::button_to_basis(Button b) {
  return b == Button::kLock ? MeasBasis::kY : MeasBasis::kX;
}

Color QuestionMapping::outcome_to_color(MeasOutcome o) {
  return o == Sign::kPlus ? Color::kRed : Color::kGreen;
}

MeasBasis basis_for_question(SideView side) {
  return QuestionMapping::button_to_basis(QuestionMapping::side_to_button(side));
}

Color color_for_outcome(MeasOutcome outcome) {
  return QuestionMapping::outcome_to_color(outcome);
}

qsim::QubitId qubit_of(RobberId suspect) {
  return static_cast<qsim::QubitId>(game::index(suspect));
}

AnswerRecord quantum_answer_recorded(AgentHandle& handle, SideView side,
                                     MeasurementDevice& device) {
  if (handle.used_) {
    throw ProtocolViolation("suspect " +
                            std::string(game::to_string(handle.suspect_)) +
                            " already answered this game");
  }
  handle.used_ = true;
  const MeasBasis basis = basis_for_question(side);
  const MeasOutcome outcome = device.measure(handle.suspect_, basis);
  return {basis, outcome, color_for_outcome(outcome)};
}

Color quantum_answer(AgentHandle& handle, SideView side,
                     MeasurementDevice& device) {
  return quantum_answer_recorded(handle, side, device).color;
}

SharedRegister::SharedRegister(UniformSource uniform)
    : uniform_(std::move(uniform)), state_(qsim::ghz_state()) {}

MeasOutcome SharedRegister::measure(RobberId suspect, MeasBasis basis) {
  const auto bit = static_cast<std::uint8_t>(1u << game::index(suspect));
  if (measured_ & bit) {
    throw ProtocolViolation("qubit " + std::string(game::to_string(suspect)) +
                            " already measured this game");
  }
  measured_ |= bit;
  auto m = qsim::measure_qubit(state_, qubit_of(suspect), basis, uniform_());
  state_ = m.post_state;
  return m.outcome;
}

void SharedRegister::reset() {
  state_ = qsim::ghz_state();
  measured_ = 0;
}

}  // namespace ghz::strategy
