#ifndef GHZ_TESTS_ORACLES_HPP_
#define GHZ_TESTS_ORACLES_HPP_

// Independent reference computations for tests. Nothing here calls into the
// projection or enumeration code under test.

#include <array>
#include <cmath>
#include <complex>
#include <random>

namespace ghz::testing {

using C = std::complex<double>;
using Amps = std::array<C, 8>;

inline const double kH = 1.0 / std::sqrt(2.0);

// Eigenvectors written out by hand: [basis 0=X, 1=Y][outcome 0=+1, 1=-1].
inline std::array<C, 2> eigvec(int basis, int outcome) {
  const C i{0.0, 1.0};
  if (basis == 0) return outcome == 0 ? std::array<C, 2>{kH, kH} : std::array<C, 2>{kH, -kH};
  return outcome == 0 ? std::array<C, 2>{kH, i * kH} : std::array<C, 2>{kH, -i * kH};
}

inline Amps ghz_amps() {
  Amps a{};
  a[0] = kH;
  a[7] = -kH;
  return a;
}

// |<a (x) b (x) c | psi>|^2 by full expansion over the 8 basis labels.
inline double brute_force_probability(const Amps& psi, const std::array<int, 3>& bases,
                                      const std::array<int, 3>& outcomes) {
  const auto va = eigvec(bases[0], outcomes[0]);
  const auto vb = eigvec(bases[1], outcomes[1]);
  const auto vc = eigvec(bases[2], outcomes[2]);
  C overlap{};
  for (int sa = 0; sa < 2; ++sa)
    for (int sb = 0; sb < 2; ++sb)
      for (int sc = 0; sc < 2; ++sc)
        overlap += std::conj(va[sa] * vb[sb] * vc[sc]) * psi[4 * sa + 2 * sb + sc];
  return std::norm(overlap);
}

inline double brute_force_overlap_modulus(const Amps& a, const Amps& b) {
  C o{};
  for (int k = 0; k < 8; ++k) o += std::conj(a[k]) * b[k];
  return std::abs(o);
}

// Random normalized state with Gaussian real and imaginary parts.
inline Amps random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Amps a{};
  double norm2 = 0.0;
  for (auto& x : a) {
    x = {n(rng), n(rng)};
    norm2 += std::norm(x);
  }
  for (auto& x : a) x /= std::sqrt(norm2);
  return a;
}

// Hand copy of which side each guard saw: 0 = Front, 1 = Back.
inline constexpr int kSeen[4][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};

// Guard g (0-based) is satisfied by a colouring given as green[robber][side]
// iff the number of green sides he saw is even (guards 1-3) or odd (guard 4).
inline bool guard_satisfied(int g, const bool green[3][2]) {
  int greens = 0;
  for (int r = 0; r < 3; ++r) greens += green[r][kSeen[g][r]] ? 1 : 0;
  return g < 3 ? greens % 2 == 0 : greens % 2 == 1;
}

// Best number of guards any deterministic strategy satisfies, brute force
// over suspects' answer tables.
inline int brute_force_best_classical_passes() {
  int best = 0;
  for (int table = 0; table < 64; ++table) {
    bool green[3][2];
    for (int r = 0; r < 3; ++r)
      for (int s = 0; s < 2; ++s) green[r][s] = (table >> (2 * r + s)) & 1;
    int passes = 0;
    for (int g = 0; g < 4; ++g) passes += guard_satisfied(g, green) ? 1 : 0;
    best = std::max(best, passes);
  }
  return best;
}

}  // namespace ghz::testing

#endif  // GHZ_TESTS_ORACLES_HPP_
