#pragma once

#include <random>
#include <string>
#include <vector>

#include "symred/lie_algebra.hpp"

namespace symred::testing {

inline Vector random_vector(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

inline Matrix random_matrix(std::mt19937_64& rng, int r, int c, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = u(rng);
  return m;
}

inline Vector unit(int n, int i) { return Vector::Unit(n, i); }

inline Matrix canonical_omega(int m) {
  Matrix om = Matrix::Zero(2 * m, 2 * m);
  om.topRightCorner(m, m) = Matrix::Identity(m, m);
  om.bottomLeftCorner(m, m) = -Matrix::Identity(m, m);
  return om;
}

// Random symplectic instance: an isotropic Δ (k random vectors in the first
// Lagrangian, mixed by a random symplectic change of basis) and a random S̃.
struct Instance {
  Matrix omega, delta, s_tilde;
};

inline Instance random_instance(std::mt19937_64& rng, int m, int k) {
  const Matrix om = canonical_omega(m);
  // symplectic map exp(J H) with H symmetric
  const Matrix h0 = random_matrix(rng, 2 * m, 2 * m, 0.3);
  const Matrix h = 0.5 * (h0 + h0.transpose());
  const Matrix jm = -om;
  Matrix sym = Matrix::Identity(2 * m, 2 * m), term = sym;
  for (int i = 1; i < 30; ++i) {
    term = term * (jm * h) / double(i);
    sym += term;
  }
  Matrix delta = Matrix::Zero(2 * m, k);
  delta.topRows(m) = random_matrix(rng, m, k);
  Instance in;
  in.omega = om;
  in.delta = sym * delta;
  in.s_tilde = random_matrix(rng, 2 * m, k);
  return in;
}

struct ReductionCase {
  std::string group;
  Covector mu;
};

/// A regular value with reductive stabilizer for each non-abelian catalog entry.
inline std::vector<ReductionCase> reduction_cases() {
  Covector se2_mu(3), sl3_mu = Covector::Zero(8);
  se2_mu << 0.3, 1.0, 0.5;
  sl3_mu(0) = 1.0;
  sl3_mu(1) = 2.0;
  return {{"so3", unit(3, 2)},   {"su2", unit(3, 2)},   {"sl2r", unit(3, 0)},
          {"heis3", unit(3, 2)}, {"se2", se2_mu},       {"sl3r", sl3_mu}};
}

}  // namespace symred::testing
