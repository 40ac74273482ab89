#ifndef GHZ_QSIM_HPP_
#define GHZ_QSIM_HPP_

// Exact state-vector simulation of a three-qubit register.
//
// Basis ordering: index = 4*bit(A) + 2*bit(B) + bit(C), with bit(up) = 0 and
// bit(down) = 1. The register never grows; there is no general n-qubit path.
//
// Measurement bases:
//   X: +1 -> (|up> + |down>)/sqrt2     -1 -> (|up> - |down>)/sqrt2
//   Y: +1 -> (|up> + i|down>)/sqrt2    -1 -> (|up> - i|down>)/sqrt2
//
// All functions are pure. Randomness enters only through the caller-supplied
// uniform number passed to measure_qubit.

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "ghz/sign.hpp"

namespace ghz::qsim {

using Amplitude = std::complex<double>;
using MeasOutcome = Sign;

inline constexpr std::size_t kDim = 8;
inline constexpr double kAmplitudeTol = 1e-12;
inline constexpr double kDistributionTol = 1e-9;

enum class QubitId : std::uint8_t { kA = 0, kB = 1, kC = 2 };
enum class MeasBasis : std::uint8_t { kX, kY };

inline constexpr std::array<QubitId, 3> kAllQubits = {QubitId::kA, QubitId::kB,
                                                      QubitId::kC};
inline constexpr std::array<MeasBasis, 2> kAllBases = {MeasBasis::kX,
                                                       MeasBasis::kY};
inline constexpr std::array<MeasOutcome, 2> kAllOutcomes = {Sign::kPlus,
                                                            Sign::kMinus};

std::string_view to_string(QubitId q);
std::string_view to_string(MeasBasis b);

// Raised when an operation is handed a state that is not normalized.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Single-qubit vector (amplitude of |up>, amplitude of |down>).
using QubitVector = std::array<Amplitude, 2>;

class StateVector {
 public:
  using Amplitudes = std::array<Amplitude, kDim>;

  // Throws std::invalid_argument on a non-finite amplitude. Normalization is
  // not enforced here; operations check it as a precondition.
  explicit StateVector(const Amplitudes& amps);

  // Product state |a>_A |b>_B |c>_C.
  static StateVector product(const QubitVector& a, const QubitVector& b,
                             const QubitVector& c);

  const Amplitudes& amplitudes() const { return amps_; }
  const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

  double squared_norm() const;
  bool is_normalized(double tol = kAmplitudeTol) const;

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  Amplitudes amps_;
};

// (|up,up,up> - |down,down,down>)/sqrt2.
StateVector ghz_state();

// {+1 vector, -1 vector} for the basis.
std::array<QubitVector, 2> basis_vectors(MeasBasis basis);

QubitVector basis_vector(MeasBasis basis, MeasOutcome outcome);

double outcome_probability(const StateVector& state, QubitId qubit,
                           MeasBasis basis, MeasOutcome outcome);

struct Projection {
  double probability;
  // Empty when the outcome has probability zero.
  std::optional<StateVector> post_state;
};

// Projects `qubit` onto the given outcome and renormalizes by the computed
// norm.
Projection project(const StateVector& state, QubitId qubit, MeasBasis basis,
                   MeasOutcome outcome);

struct Measurement {
  MeasOutcome outcome;
  StateVector post_state;
};

// Outcome is +1 iff u < P(+1). Probabilities within kAmplitudeTol of 0 or 1
// are snapped so that eigenstates give their eigenvalue for every u in [0,1).
// Throws std::invalid_argument if u is outside [0,1).
Measurement measure_qubit(const StateVector& state, QubitId qubit,
                          MeasBasis basis, double u);

using BasisTriple = std::array<MeasBasis, 3>;   // indexed by QubitId
using OutcomeTriple = std::array<MeasOutcome, 3>;  // indexed by QubitId
using QubitOrder = std::array<QubitId, 3>;

// Probability of each outcome triple, indexed like the state vector:
// index = 4*bit(o_A) + 2*bit(o_B) + bit(o_C), bit(+1) = 0.
class JointDistribution {
 public:
  JointDistribution() = default;
  explicit JointDistribution(const std::array<double, kDim>& p) : p_(p) {}

  double at(const OutcomeTriple& o) const { return p_[index_of(o)]; }
  double& at(const OutcomeTriple& o) { return p_[index_of(o)]; }
  const std::array<double, kDim>& probabilities() const { return p_; }

  double total() const;
  // P(product of the three signs == s).
  double parity_probability(Sign s) const;
  // Marginal P(outcome of q == o).
  double marginal(QubitId q, MeasOutcome o) const;

  static std::size_t index_of(const OutcomeTriple& o);
  static OutcomeTriple outcomes_at(std::size_t index);

 private:
  std::array<double, kDim> p_{};
};

// Aggregates sequential Born-rule collapses in the given qubit order.
JointDistribution joint_distribution(const StateVector& state,
                                     const BasisTriple& bases,
                                     const QubitOrder& order = {
                                         QubitId::kA, QubitId::kB,
                                         QubitId::kC});

// True iff some |c| = 1 gives ||a - c*b|| <= tol.
bool equal_up_to_global_phase(const StateVector& a, const StateVector& b,
                              double tol = kAmplitudeTol);

}  // namespace ghz::qsim

#endif  // GHZ_QSIM_HPP_
