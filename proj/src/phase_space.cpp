#include "symred/phase_space.hpp"

#include <algorithm>
#include <cmath>

#include "symred/errors.hpp"

namespace symred {

Vector TrivTangent::stacked() const {
  if (x.size() != eta.size()) throw Error(ErrorKind::DimensionMismatch, "TrivTangent: X and η lengths differ");
  Vector u(2 * x.size());
  u << x, eta;
  return u;
}

TrivTangent TrivTangent::from_stacked(const Vector& u) {
  if (u.size() % 2 != 0) throw Error(ErrorKind::DimensionMismatch, "stacked tangent must have even length");
  const auto n = u.size() / 2;
  return {u.head(n), u.tail(n)};
}

double symplectic_form(const LieAlgebra& a, const Covector& xi, const TrivTangent& u, const TrivTangent& v) {
  const int n = a.dim();
  if (xi.size() != n || u.x.size() != n || u.eta.size() != n || v.x.size() != n || v.eta.size() != n)
    throw Error(ErrorKind::DimensionMismatch, "symplectic_form: inconsistent dimensions");
  return u.eta.dot(v.x) - v.eta.dot(u.x) - xi.dot(bracket(a, u.x, v.x));
}

Matrix omega_gram(const LieAlgebra& a, const Covector& xi) {
  const int n = a.dim();
  Matrix om = Matrix::Zero(2 * n, 2 * n);
  om.topLeftCorner(n, n) = -a.bracket_pairing(xi);
  om.topRightCorner(n, n) = -Matrix::Identity(n, n);
  om.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
  return om;
}

double liouville_form(const Covector& xi, const TrivTangent& u) {
  if (xi.size() != u.x.size()) throw Error(ErrorKind::DimensionMismatch, "liouville_form: size mismatch");
  return xi.dot(u.x);
}

TrivTangent fundamental_field(const LieAlgebra& a, Side side, const Vector& x, const PhasePoint& p) {
  if (side == Side::Right) return {x, coad_star(a, x, p.xi)};
  const GroupElement ginv = inverse(p.g);
  return {-Ad(a, ginv) * x, Covector::Zero(a.dim())};
}

Covector momentum_map(const LieAlgebra& a, Side side, const PhasePoint& p) {
  if (p.xi.size() != a.dim()) throw Error(ErrorKind::DimensionMismatch, "momentum_map: ξ length");
  if (side == Side::Right) return p.xi;
  return Coad(a, p.g) * p.xi;
}

PhasePoint flow(const LieAlgebra& a, const PhasePoint& p, const Vector& u, double s) {
  const int n = a.dim();
  if (u.size() != 2 * n) throw Error(ErrorKind::DimensionMismatch, "flow: direction length");
  PhasePoint q{p.g, p.xi + s * u.tail(n)};
  if (u.head(n).squaredNorm() > 0.0) q.g = p.g * exp(a, s * u.head(n));
  return q;
}

Matrix omega_complement(const LieAlgebra& a, const Covector& xi, const Matrix& basis) {
  const auto dim = 2 * a.dim();
  if (basis.cols() == 0) return Matrix::Identity(dim, dim);
  // ω(x, b) = xᵀ Ω b = 0 for every column b
  const Matrix om = omega_gram(a, xi);
  return linalg::null_space((om * basis).transpose());
}

ConstraintSplit constraint_split(const LieAlgebra& a, const Covector& mu) {
  const int n = a.dim();
  if (mu.size() != n) throw Error(ErrorKind::DimensionMismatch, "constraint_split: μ length");
  ConstraintSplit s;
  s.tangent = Matrix::Zero(2 * n, n);
  s.tangent.topRows(n) = Matrix::Identity(n, n);
  Matrix generators(2 * n, n);
  generators.topRows(n) = Matrix::Identity(n, n);
  generators.bottomRows(n) = coad_star_matrix(a, mu);
  s.perp = linalg::orth(generators);
  s.radical = linalg::intersect(s.tangent, s.perp);
  s.sum = linalg::orth(linalg::hstack(s.tangent, s.perp));
  return s;
}

RegularityReport regularity_report(const LieAlgebra& a, const Covector& mu, std::span<const PhasePoint> samples,
                                   double step) {
  const int n = a.dim();
  RegularityReport rep;
  rep.regular = true;
  for (const auto& p : samples) {
    if (p.xi.size() != n) throw Error(ErrorKind::DimensionMismatch, "regularity_report: ξ length");
    if ((p.xi - mu).norm() > 1e-10 * std::max(1.0, mu.norm()))
      throw Error(ErrorKind::PointOffConstraint, "sample is not on the level set J^r = μ");

    Matrix dj(n, 2 * n);
    for (int c = 0; c < 2 * n; ++c) {
      Vector e = Vector::Zero(2 * n);
      e(c) = 1.0;
      // J^r ignores g, so only the fiber part of the flow matters here.
      const PhasePoint fwd{p.g, p.xi + step * e.tail(n)};
      const PhasePoint bwd{p.g, p.xi - step * e.tail(n)};
      dj.col(c) = (momentum_map(a, Side::Right, fwd) - momentum_map(a, Side::Right, bwd)) / (2.0 * step);
    }
    const Vector s_dj = linalg::singular_values(dj);
    rep.momentum_min_singular.push_back(s_dj(n - 1));

    Matrix gen(2 * n, n);
    for (int i = 0; i < n; ++i)
      gen.col(i) = fundamental_field(a, Side::Right, Vector::Unit(n, i), p).stacked();
    const Vector s_gen = linalg::singular_values(gen);
    rep.generator_min_singular.push_back(s_gen(n - 1));

    if (s_dj(n - 1) < kRankTol * s_dj(0) || s_gen(n - 1) < kRankTol * s_gen(0)) rep.regular = false;
  }
  return rep;
}

double omega_closedness_defect(const LieAlgebra& a, const Covector& xi, const TrivTangent& u,
                               const TrivTangent& v, const TrivTangent& w) {
  // u(ω(v,w)) for constant-component fields: only the fiber part of u moves ξ,
  // and ω depends on ξ only through −⟨ξ,[X_v,X_w]⟩.
  auto derivative = [&](const TrivTangent& d, const TrivTangent& p, const TrivTangent& q) {
    return -d.eta.dot(bracket(a, p.x, q.x));
  };
  auto frame_bracket = [&](const TrivTangent& p, const TrivTangent& q) {
    return TrivTangent{bracket(a, p.x, q.x), Covector::Zero(a.dim())};
  };
  const double s = derivative(u, v, w) + derivative(v, w, u) + derivative(w, u, v) -
                   symplectic_form(a, xi, frame_bracket(u, v), w) -
                   symplectic_form(a, xi, frame_bracket(v, w), u) -
                   symplectic_form(a, xi, frame_bracket(w, u), v);
  return std::abs(s);
}

}  // namespace symred
