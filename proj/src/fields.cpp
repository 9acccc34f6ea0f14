#include "symred/fields.hpp"

namespace symred {

PhaseField constant_field(const Vector& u) {
  return [u](const PhasePoint&) { return u; };
}

Vector directional_derivative(const LieAlgebra& a, const PhaseField& v, const PhasePoint& p, const Vector& u,
                              double h) {
  if (u.squaredNorm() == 0.0) return Vector::Zero(2 * a.dim());
  return (v(flow(a, p, u, h)) - v(flow(a, p, u, -h))) / (2.0 * h);
}

Vector covariant_derivative(const LieAlgebra& a, const FrameConnection& conn, const PhaseField& u,
                            const PhaseField& v, const PhasePoint& p, double h) {
  const Vector up = u(p);
  return directional_derivative(a, v, p, up, h) + conn.apply(p.xi, up, v(p));
}

Vector lie_bracket(const LieAlgebra& a, const PhaseField& u, const PhaseField& v, const PhasePoint& p, double h) {
  const int n = a.dim();
  const Vector up = u(p), vp = v(p);
  Vector out = directional_derivative(a, v, p, up, h) - directional_derivative(a, u, p, vp, h);
  out.head(n) += bracket(a, up.head(n), vp.head(n));
  return out;
}

double field_nabla_omega(const LieAlgebra& a, const FrameConnection& conn, const PhaseField& u,
                         const PhaseField& v, const PhaseField& w, const PhasePoint& p, double h) {
  auto omega_vw = [&](const PhasePoint& q) {
    return v(q).dot(omega_gram(a, q.xi) * w(q));
  };
  const Vector up = u(p);
  const double d = (omega_vw(flow(a, p, up, h)) - omega_vw(flow(a, p, up, -h))) / (2.0 * h);
  const Matrix om = omega_gram(a, p.xi);
  return d - covariant_derivative(a, conn, u, v, p, h).dot(om * w(p)) -
         v(p).dot(om * covariant_derivative(a, conn, u, w, p, h));
}

}  // namespace symred
