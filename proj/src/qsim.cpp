#include "ghz/qsim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ghz {

Sign sign_from_int(int v) {
  if (v == 1) return Sign::kPlus;
  if (v == -1) return Sign::kMinus;
  throw std::invalid_argument("sign must be +1 or -1, got " +
                              std::to_string(v));
}

std::string_view to_string(Sign s) { return s == Sign::kPlus ? "+1" : "-1"; }

}  // namespace ghz

namespace ghz::qsim {
namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

// Bit weight of a qubit in the basis index.
constexpr std::size_t weight(QubitId q) {
  return std::size_t{4} >> static_cast<std::size_t>(q);
}

void require_normalized(const StateVector& s) {
  if (!s.is_normalized()) {
    throw PreconditionError("state is not normalized (squared norm " +
                            std::to_string(s.squared_norm()) + ")");
  }
}

// Overlap of the outcome vector with the qubit's slice for each setting of
// the other two qubits, keyed by the index with the qubit's bit cleared.
std::array<Amplitude, kDim> slice_overlaps(const StateVector& state,
                                           QubitId qubit,
                                           const QubitVector& v) {
  std::array<Amplitude, kDim> out{};
  const std::size_t w = weight(qubit);
  for (std::size_t i = 0; i < kDim; ++i) {
    if (i & w) continue;
    out[i] = std::conj(v[0]) * state[i] + std::conj(v[1]) * state[i | w];
  }
  return out;
}

}  // namespace

std::string_view to_string(QubitId q) {
  switch (q) {
    case QubitId::kA: return "A";
    case QubitId::kB: return "B";
    case QubitId::kC: return "C";
  }
  return "?";
}

std::string_view to_string(MeasBasis b) {
  return b == MeasBasis::kX ? "X" : "Y";
}

StateVector::StateVector(const Amplitudes& amps) : amps_(amps) {
  for (const auto& a : amps_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("state vector amplitude is not finite");
    }
  }
}

StateVector StateVector::product(const QubitVector& a, const QubitVector& b,
                                 const QubitVector& c) {
  Amplitudes amps{};
  for (std::size_t i = 0; i < kDim; ++i) {
    amps[i] = a[(i >> 2) & 1] * b[(i >> 1) & 1] * c[i & 1];
  }
  return StateVector(amps);
}

double StateVector::squared_norm() const {
  double n = 0.0;
  for (const auto& a : amps_) n += std::norm(a);
  return n;
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(squared_norm() - 1.0) <= tol;
}

StateVector ghz_state() {
  StateVector::Amplitudes amps{};
  amps[0] = kInvSqrt2;
  amps[7] = -kInvSqrt2;
  return StateVector(amps);
}

std::array<QubitVector, 2> basis_vectors(MeasBasis basis) {
  const Amplitude i_unit{0.0, 1.0};
  if (basis == MeasBasis::kX) {
    return {QubitVector{kInvSqrt2, kInvSqrt2},
            QubitVector{kInvSqrt2, -kInvSqrt2}};
  }
  return {QubitVector{kInvSqrt2, i_unit * kInvSqrt2},
          QubitVector{kInvSqrt2, -i_unit * kInvSqrt2}};
}

QubitVector basis_vector(MeasBasis basis, MeasOutcome outcome) {
  return basis_vectors(basis)[outcome == Sign::kPlus ? 0 : 1];
}

double outcome_probability(const StateVector& state, QubitId qubit,
                           MeasBasis basis, MeasOutcome outcome) {
  require_normalized(state);
  const auto overlaps =
      slice_overlaps(state, qubit, basis_vector(basis, outcome));
  double p = 0.0;
  for (const auto& o : overlaps) p += std::norm(o);
  return p;
}

Projection project(const StateVector& state, QubitId qubit, MeasBasis basis,
                   MeasOutcome outcome) {
  require_normalized(state);
  const QubitVector v = basis_vector(basis, outcome);
  const auto overlaps = slice_overlaps(state, qubit, v);
  double p = 0.0;
  for (const auto& o : overlaps) p += std::norm(o);
  if (p <= 0.0) return {0.0, std::nullopt};

  const double scale = 1.0 / std::sqrt(p);
  const std::size_t w = weight(qubit);
  StateVector::Amplitudes amps{};
  for (std::size_t i = 0; i < kDim; ++i) {
    if (i & w) continue;
    amps[i] = v[0] * overlaps[i] * scale;
    amps[i | w] = v[1] * overlaps[i] * scale;
  }
  return {p, StateVector(amps)};
}

Measurement measure_qubit(const StateVector& state, QubitId qubit,
                          MeasBasis basis, double u) {
  if (!(u >= 0.0 && u < 1.0)) {
    throw std::invalid_argument("uniform draw must lie in [0,1)");
  }
  double p_plus = outcome_probability(state, qubit, basis, Sign::kPlus);
  if (p_plus < kAmplitudeTol) p_plus = 0.0;
  if (p_plus > 1.0 - kAmplitudeTol) p_plus = 1.0;
  const MeasOutcome outcome = u < p_plus ? Sign::kPlus : Sign::kMinus;
  auto projection = project(state, qubit, basis, outcome);
  return {outcome, *projection.post_state};
}

double JointDistribution::total() const {
  double t = 0.0;
  for (double p : p_) t += p;
  return t;
}

double JointDistribution::parity_probability(Sign s) const {
  double t = 0.0;
  for (std::size_t i = 0; i < kDim; ++i) {
    const auto o = outcomes_at(i);
    if (o[0] * o[1] * o[2] == s) t += p_[i];
  }
  return t;
}

double JointDistribution::marginal(QubitId q, MeasOutcome o) const {
  double t = 0.0;
  for (std::size_t i = 0; i < kDim; ++i) {
    if (outcomes_at(i)[static_cast<std::size_t>(q)] == o) t += p_[i];
  }
  return t;
}

std::size_t JointDistribution::index_of(const OutcomeTriple& o) {
  std::size_t i = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    i = (i << 1) | (o[k] == Sign::kMinus ? 1 : 0);
  }
  return i;
}

OutcomeTriple JointDistribution::outcomes_at(std::size_t index) {
  OutcomeTriple o{};
  for (std::size_t k = 0; k < 3; ++k) {
    o[k] = ((index >> (2 - k)) & 1) ? Sign::kMinus : Sign::kPlus;
  }
  return o;
}

JointDistribution joint_distribution(const StateVector& state,
                                     const BasisTriple& bases,
                                     const QubitOrder& order) {
  require_normalized(state);
  JointDistribution dist;
  // Depth-first over the outcome tree; each leaf carries the product of the
  // conditional probabilities along its branch.
  auto descend = [&](auto&& self, const StateVector& s, std::size_t depth,
                     OutcomeTriple& outcomes, double weight_so_far) -> void {
    if (depth == 3) {
      dist.at(outcomes) += weight_so_far;
      return;
    }
    const QubitId q = order[depth];
    for (MeasOutcome o : kAllOutcomes) {
      auto pr = project(s, q, bases[static_cast<std::size_t>(q)], o);
      if (!pr.post_state) continue;
      outcomes[static_cast<std::size_t>(q)] = o;
      self(self, *pr.post_state, depth + 1, outcomes,
           weight_so_far * pr.probability);
    }
  };
  OutcomeTriple outcomes{Sign::kPlus, Sign::kPlus, Sign::kPlus};
  descend(descend, state, 0, outcomes, 1.0);
  return dist;
}

bool equal_up_to_global_phase(const StateVector& a, const StateVector& b,
                              double tol) {
  // The minimizing phase aligns b with a: c = <b|a> / |<b|a>|.
  Amplitude overlap{};
  for (std::size_t i = 0; i < kDim; ++i) overlap += std::conj(b[i]) * a[i];
  const double mag = std::abs(overlap);
  const Amplitude c = mag > 0.0 ? overlap / mag : Amplitude{1.0, 0.0};
  double dist2 = 0.0;
  for (std::size_t i = 0; i < kDim; ++i) dist2 += std::norm(a[i] - c * b[i]);
  return std::sqrt(dist2) <= tol;
}

}  // namespace ghz::qsim
