#include "symred/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace symred::linalg {

namespace {

struct FullSvd {
  Vector sigma;
  Matrix u;
  Matrix v;
};

FullSvd full_svd(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {svd.singularValues(), svd.matrixU(), svd.matrixV()};
}

int rank_of(const Vector& sigma, double rel_tol) {
  if (sigma.size() == 0) return 0;
  const double cutoff = std::max(rel_tol * sigma(0), kAbsFloor);
  int r = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > cutoff) ++r;
  return r;
}

}  // namespace

Vector singular_values(const Matrix& a) {
  if (a.size() == 0) return Vector(0);
  return Eigen::JacobiSVD<Matrix>(a).singularValues();
}

int rank(const Matrix& a, double rel_tol) {
  return rank_of(singular_values(a), rel_tol);
}

Matrix null_space(const Matrix& a, double rel_tol) {
  const auto n = a.cols();
  if (n == 0) return Matrix(0, 0);
  if (a.rows() == 0) return Matrix::Identity(n, n);
  auto svd = full_svd(a);
  const int r = rank_of(svd.sigma, rel_tol);
  return svd.v.rightCols(n - r);
}

Matrix orth(const Matrix& a, double rel_tol) {
  if (a.cols() == 0 || a.rows() == 0) return Matrix(a.rows(), 0);
  auto svd = full_svd(a);
  const int r = rank_of(svd.sigma, rel_tol);
  return svd.u.leftCols(r);
}

Matrix intersect(const Matrix& a, const Matrix& b, double rel_tol) {
  const Matrix qa = orth(a, rel_tol);
  const Matrix qb = orth(b, rel_tol);
  if (qa.cols() == 0 || qb.cols() == 0) return Matrix(a.rows(), 0);
  Matrix stacked(qa.rows(), qa.cols() + qb.cols());
  stacked << qa, -qb;
  const Matrix ker = null_space(stacked, rel_tol);
  return orth(qa * ker.topRows(qa.cols()), rel_tol);
}

double subspace_distance(const Matrix& a, const Matrix& b) {
  const Matrix qa = orth(a);
  const Matrix qb = orth(b);
  const auto n = a.rows();
  Matrix pa = Matrix::Zero(n, n);
  Matrix pb = Matrix::Zero(n, n);
  if (qa.cols() > 0) pa = qa * qa.transpose();
  if (qb.cols() > 0) pb = qb * qb.transpose();
  const Matrix d = pa - pb;
  if (d.size() == 0) return 0.0;
  return singular_values(d)(0);
}

double containment_defect(const Matrix& a, const Matrix& b) {
  if (b.cols() == 0) return 0.0;
  const Matrix qa = orth(a);
  Matrix residual = b;
  if (qa.cols() > 0) residual -= qa * (qa.transpose() * b);
  return max_abs(residual);
}

double min_singular_value(const Matrix& a) {
  const Vector s = singular_values(a);
  return s.size() == 0 ? 0.0 : s(s.size() - 1);
}

double condition_number(const Matrix& a) {
  const Vector s = singular_values(a);
  if (s.size() == 0) return 1.0;
  const double lo = s(s.size() - 1);
  return lo > 0.0 ? s(0) / lo : INFINITY;
}

Matrix lstsq(const Matrix& a, const Matrix& b) {
  if (a.cols() == 0) return Matrix(0, b.cols());
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod;
  cod.setThreshold(kRankTol);
  cod.compute(a);
  return cod.solve(b);
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), a.cols() + b.cols());
  if (a.cols() > 0) out.leftCols(a.cols()) = a;
  if (b.cols() > 0) out.rightCols(b.cols()) = b;
  return out;
}

double max_abs(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

}  // namespace symred::linalg
