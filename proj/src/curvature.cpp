#include "symred/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace symred {

double CurvatureTensor::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

Vector reduced_curvature_formula(const ReducedModel& model, const ChartField& x, const ChartField& y,
                                 const ChartField& z, const Vector& t, const CurvatureSteps& steps,
                                 const GroupElement* fiber) {
  const auto& ctx = model.context();
  const PhasePoint p = model.point(t, fiber);
  const double h1 = steps.h1, h2 = steps.h2;
  const PhaseField xb = model.lift_field(x, t), yb = model.lift_field(y, t), zb = model.lift_field(z, t);

  auto cov = [&](const PhaseField& u, const PhaseField& v, double h) { return model.sigma_covderiv_field(u, v, h); };
  const PhaseField cov_yz = cov(yb, zb, h1);
  const PhaseField cov_xz = cov(xb, zb, h1);
  const PhaseField xy = model.sigma_bracket_field(xb, yb, h1);

  // R(X̄,Ȳ)Z̄ of the connection on Σ_μ
  Vector sum = model.sigma_covderiv(xb, cov_yz, p, h2) - model.sigma_covderiv(yb, cov_xz, p, h2) -
               model.sigma_covderiv(xy, zb, p, h1);
  sum -= model.sigma_covderiv(xb, model.vertical_field(cov_yz), p, h2);
  sum += model.sigma_covderiv(yb, model.vertical_field(cov_xz), p, h2);
  sum += model.sigma_covderiv(model.vertical_field(xy), zb, p, h1);
  sum -= ctx.vertical(sum);
  return model.push_down(p, sum, t);
}

Vector curvature_fd_oracle(const ReducedModel& model, const ChartField& x, const ChartField& y,
                           const ChartField& z, const Vector& t, const CurvatureSteps& steps) {
  const int k = model.dim();
  const double h1 = steps.h1, h2 = steps.h2;

  // X^a ∂_a F at t for a chart field F
  auto along = [&](const Vector& xv, const ChartField& f) {
    Vector out = Vector::Zero(k);
    for (int a = 0; a < k; ++a) {
      if (xv(a) == 0.0) continue;
      Vector e = Vector::Zero(k);
      e(a) = h2;
      out += xv(a) * (f(t + e) - f(t - e)) / (2.0 * h2);
    }
    return out;
  };
  // ∇ʳ_X W = X(W) + (Γʳ term), the latter from ∇ʳ applied to the frozen value W(t)
  auto nested = [&](const ChartField& outer, const ChartField& inner) {
    const ChartField w = [&](const Vector& s) { return model.covderiv(inner, z, s, h1); };
    const Vector xv = outer(t);
    return Vector(along(xv, w) + model.covderiv(outer, constant_chart_field(w(t)), t, h1));
  };
  const Vector bracket_xy = along(x(t), y) - along(y(t), x);
  return nested(x, y) - nested(y, x) - model.covderiv(constant_chart_field(bracket_xy), z, t, h1);
}

CurvatureTensor curvature_tensor(const ReducedModel& model, const Vector& t, CurvaturePath path,
                                 const CurvatureSteps& steps) {
  const int k = model.dim();
  CurvatureTensor r(k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c) {
        const auto x = coordinate_field(k, a), y = coordinate_field(k, b), z = coordinate_field(k, c);
        const Vector v = path == CurvaturePath::Formula ? reduced_curvature_formula(model, x, y, z, t, steps)
                                                        : curvature_fd_oracle(model, x, y, z, t, steps);
        for (int d = 0; d < k; ++d) r(a, b, c, d) = v(d);
      }
  return r;
}

double relative_discrepancy(const CurvatureTensor& a, const CurvatureTensor& b) {
  double diff = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) diff = std::max(diff, std::abs(a.data()[i] - b.data()[i]));
  return diff / std::max(b.max_abs(), 1e-12);
}

void CurvatureSymmetry::merge(const CurvatureSymmetry& o) {
  antisymmetry = std::max(antisymmetry, o.antisymmetry);
  symplectic = std::max(symplectic, o.symplectic);
  bianchi = std::max(bianchi, o.bianchi);
}

CurvatureSymmetry curvature_symmetry_report(const CurvatureTensor& r, const Matrix& form) {
  const int k = r.dim();
  CurvatureSymmetry s;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c) {
        for (int d = 0; d < k; ++d) {
          s.antisymmetry = std::max(s.antisymmetry, std::abs(r(a, b, c, d) + r(b, a, c, d)));
          s.bianchi = std::max(s.bianchi, std::abs(r(a, b, c, d) + r(b, c, a, d) + r(c, a, b, d)));
          // ω(R(a,b)c, d) − ω(R(a,b)d, c)
          double v = 0.0;
          for (int e = 0; e < k; ++e) v += r(a, b, c, e) * form(e, d) - r(a, b, d, e) * form(e, c);
          s.symplectic = std::max(s.symplectic, std::abs(v));
        }
      }
  return s;
}

double curvature_invariance_defect(const ReducedModel& model, const Vector& t, const GroupElement& g,
                                   const CurvatureSteps& steps) {
  const auto& chart = model.chart();
  const Matrix coad = Coad(model.algebra(), g);
  const int k = model.dim();
  const Vector t2 = chart.invert(coad * chart.point(t), t);
  const Matrix j = chart.jacobian(t);
  // transported coordinate directions, as chart components at t2
  Matrix moved(k, k);
  for (int a = 0; a < k; ++a) moved.col(a) = chart.to_chart(t2, coad * j.col(a));
  double d = 0.0;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c) {
        const Vector here = reduced_curvature_formula(model, coordinate_field(k, a), coordinate_field(k, b),
                                                      coordinate_field(k, c), t, steps);
        const Vector there = reduced_curvature_formula(model, constant_chart_field(moved.col(a)),
                                                       constant_chart_field(moved.col(b)),
                                                       constant_chart_field(moved.col(c)), t2, steps);
        d = std::max(d, (there - chart.to_chart(t2, coad * j * here)).cwiseAbs().maxCoeff());
      }
  return d;
}

ConvergenceReport curvature_convergence(const ReducedModel& model, const Vector& t, double h2_start, int levels,
                                        double h1) {
  ConvergenceReport rep;
  double h2 = h2_start;
  for (int level = 0; level < levels; ++level, h2 *= 0.5) {
    const CurvatureSteps steps{h1, h2};
    const auto f = curvature_tensor(model, t, CurvaturePath::Formula, steps);
    const auto o = curvature_tensor(model, t, CurvaturePath::Oracle, steps);
    double diff = 0.0;
    for (std::size_t i = 0; i < f.data().size(); ++i) diff = std::max(diff, std::abs(f.data()[i] - o.data()[i]));
    rep.steps.push_back(h2);
    rep.discrepancies.push_back(diff);
    if (level > 0) rep.factors.push_back(rep.discrepancies[level - 1] / diff);
  }
  return rep;
}

}  // namespace symred
