#pragma once

#include <Eigen/Dense>

namespace symred {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Relative singular-value cutoff used for every rank and nullspace decision.
inline constexpr double kRankTol = 1e-10;

// Singular values at or below this are treated as zero regardless of scale.
inline constexpr double kAbsFloor = 1e-13;

namespace linalg {

Vector singular_values(const Matrix& a);

/// Numerical rank: number of singular values above rel_tol * sigma_max.
int rank(const Matrix& a, double rel_tol = kRankTol);

/// Orthonormal basis (as columns) of ker(a).
Matrix null_space(const Matrix& a, double rel_tol = kRankTol);

/// Orthonormal basis (as columns) of range(a).
Matrix orth(const Matrix& a, double rel_tol = kRankTol);

/// Orthonormal basis of span(a) ∩ span(b).
Matrix intersect(const Matrix& a, const Matrix& b, double rel_tol = kRankTol);

/// Spectral-norm distance between the orthogonal projectors onto span(a) and
/// span(b). Zero iff the spans coincide.
double subspace_distance(const Matrix& a, const Matrix& b);

/// Largest |x| for which x is the residual of projecting columns of b onto
/// span(a); zero iff span(b) ⊆ span(a).
double containment_defect(const Matrix& a, const Matrix& b);

double min_singular_value(const Matrix& a);
double condition_number(const Matrix& a);

/// Least-squares solution of a x = b with the shared rank cutoff.
Matrix lstsq(const Matrix& a, const Matrix& b);

Matrix hstack(const Matrix& a, const Matrix& b);

double max_abs(const Matrix& a);

}  // namespace linalg
}  // namespace symred
