#include "symred/orbit.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

#include "symred/errors.hpp"

namespace symred {

OrbitChart::OrbitChart(const LieAlgebra& a, Covector mu, Matrix m_basis)
    : a_(a), mu_(std::move(mu)), m_(std::move(m_basis)) {
  if (!a_.has_realization()) throw Error(ErrorKind::NoRealization, "orbit chart needs a matrix realization");
  if (mu_.size() != a_.dim() || m_.rows() != a_.dim())
    throw Error(ErrorKind::DimensionMismatch, "orbit chart: μ or m has the wrong length");
  if (dim() > 0) checked_jacobian(Vector::Zero(dim()));
}

GroupElement OrbitChart::group_element(const Vector& t) const {
  if (t.size() != dim()) throw Error(ErrorKind::DimensionMismatch, "chart coordinates have the wrong length");
  if (dim() == 0) return identity(a_);
  return exp(a_, m_ * t);
}

PhasePoint OrbitChart::section(const Vector& t) const { return {group_element(t), mu_}; }

Covector OrbitChart::point(const Vector& t) const { return Coad(a_, group_element(t)) * mu_; }

Matrix OrbitChart::left_velocities(const Vector& t) const {
  const int k = dim();
  const int r = a_.rep_dim();
  const Matrix tm = a_.to_matrix(m_ * t);
  Matrix w(a_.dim(), k);
  // exp([[T, E],[0, T]]) has the derivative of e^T in direction E in its upper-right block
  Matrix block = Matrix::Zero(2 * r, 2 * r);
  block.topLeftCorner(r, r) = tm;
  block.bottomRightCorner(r, r) = tm;
  const Matrix g_inv = (-tm).exp();
  for (int c = 0; c < k; ++c) {
    block.topRightCorner(r, r) = a_.to_matrix(m_.col(c));
    const Matrix e = block.exp();
    w.col(c) = a_.from_matrix(g_inv * e.topRightCorner(r, r));
  }
  return w;
}

Matrix OrbitChart::jacobian(const Vector& t) const {
  const PhasePoint p = section(t);
  const Matrix w = left_velocities(t);
  Matrix j(a_.dim(), dim());
  for (int c = 0; c < dim(); ++c) j.col(c) = orbit_pushforward(a_, p, w.col(c));
  return j;
}

Matrix OrbitChart::checked_jacobian(const Vector& t) const {
  Matrix j = jacobian(t);
  if (linalg::rank(j) < dim()) throw Error(ErrorKind::RankLoss, "orbit chart differential is not injective");
  return j;
}

Vector OrbitChart::invert(const Covector& nu, const Vector& anchor) const {
  Vector t = anchor;
  const double scale = std::max(1.0, mu_.norm());
  double res = (point(t) - nu).norm();
  for (int it = 0; it < 50 && res > 1e-15 * scale; ++it) {
    const Matrix j = checked_jacobian(t);
    const Vector step = linalg::lstsq(j, nu - point(t));
    t += step;
    const double next = (point(t) - nu).norm();
    if (step.norm() <= 1e-16 * std::max(1.0, t.norm())) {
      res = next;
      break;
    }
    res = next;
  }
  if (res > 1e-12 * scale) throw Error(ErrorKind::RankLoss, "chart inversion did not converge");
  return t;
}

Vector OrbitChart::to_chart(const Vector& t, const Covector& v) const {
  const Matrix j = checked_jacobian(t);
  const Vector c = linalg::lstsq(j, v);
  if ((j * c - v).norm() > 1e-8 * std::max(1.0, v.norm()))
    throw Error(ErrorKind::NotTangent, "vector is not tangent to the orbit");
  return c;
}

Covector orbit_projection(const LieAlgebra& a, const PhasePoint& p) { return Coad(a, p.g) * p.xi; }

Covector orbit_pushforward(const LieAlgebra& a, const PhasePoint& p, const Vector& x) {
  return -(Coad(a, p.g) * coad_star(a, x, p.xi));
}

OrbitTangentFrame orbit_tangent_frame(const LieAlgebra& a, const Covector& nu) {
  return {nu, linalg::orth(coad_star_matrix(a, nu))};
}

Vector tangent_representative(const LieAlgebra& a, const Covector& nu, const Covector& v) {
  if (nu.size() != a.dim() || v.size() != a.dim())
    throw Error(ErrorKind::DimensionMismatch, "tangent_representative: length");
  const Matrix m = coad_star_matrix(a, nu);
  const Vector x = linalg::lstsq(m, v);
  if ((m * x - v).norm() > 1e-8 * std::max(1.0, v.norm()))
    throw Error(ErrorKind::NotTangent, "covector is not tangent to the coadjoint orbit");
  return x;
}

double kks_form(const LieAlgebra& a, const Covector& nu, const Covector& v, const Covector& w) {
  const Vector x = tangent_representative(a, nu, v);
  const Vector y = tangent_representative(a, nu, w);
  return nu.dot(bracket(a, x, y));
}

}  // namespace symred
