#include "symred/reduced.hpp"

#include <algorithm>
#include <cmath>

#include "symred/errors.hpp"

namespace symred {

ChartField coordinate_field(int k, int index) {
  Vector e = Vector::Zero(k);
  e(index) = 1.0;
  return constant_chart_field(e);
}

ChartField constant_chart_field(const Vector& c) {
  return [c](const Vector&) { return c; };
}

namespace {

OrbitChart make_chart(const LieAlgebra& a, const ReductionContext& ctx) {
  if (ctx.base_dim() == 0)
    throw Error(ErrorKind::ZeroDimensionalBase, "the reduced space is a single point");
  return OrbitChart(a, ctx.mu, ctx.m);
}

}  // namespace

ReducedModel::ReducedModel(const LieAlgebra& a, ReductionContext ctx, FrameConnection conn)
    : ctx_(std::move(ctx)), conn_(std::move(conn)), chart_(make_chart(a, ctx_)), omega_(omega_gram(a, ctx_.mu)) {}

PhasePoint ReducedModel::point(const Vector& t, const GroupElement* fiber) const {
  PhasePoint p = chart_.section(t);
  if (fiber) p.g = p.g * *fiber;
  return p;
}

Vector ReducedModel::chart_coords(const PhasePoint& p, const Vector& anchor) const {
  return chart_.invert(orbit_projection(algebra(), p), anchor);
}

Vector ReducedModel::lift(const PhasePoint& p, const Covector& v) const {
  const auto& a = algebra();
  const int n = a.dim();
  if ((p.xi - ctx_.mu).norm() > 1e-10 * std::max(1.0, ctx_.mu.norm()))
    throw Error(ErrorKind::PointOffConstraint, "lift requested off Σ_μ");
  const Matrix w1x = ctx_.W1.topRows(n);
  Matrix proj(n, w1x.cols());
  for (int j = 0; j < w1x.cols(); ++j) proj.col(j) = orbit_pushforward(a, p, w1x.col(j));
  const Vector sv = linalg::singular_values(proj);
  if (sv(sv.size() - 1) <= kRankTol * sv(0))
    throw Error(ErrorKind::SingularProjection, "π_* restricted to W₁ is not invertible");
  const Vector c = linalg::lstsq(proj, v);
  if ((proj * c - v).norm() > 1e-10 * std::max(1.0, v.norm()))
    throw Error(ErrorKind::SingularProjection, "orbit vector has no horizontal lift");
  return ctx_.W1 * c;
}

PhaseField ReducedModel::lift_field(const ChartField& x, const Vector& anchor) const {
  return [this, x, anchor](const PhasePoint& p) {
    const Vector t = chart_coords(p, anchor);
    return lift(p, chart_.jacobian(t) * x(t));
  };
}

Vector ReducedModel::push_down(const PhasePoint& p, const Vector& u, const Vector& t) const {
  const int n = algebra().dim();
  return chart_.to_chart(t, orbit_pushforward(algebra(), p, tangent_part(u).head(n)));
}

Vector ReducedModel::tangent_part(const Vector& u) const {
  const int n = algebra().dim();
  if (u.tail(n).norm() > 1e-8 * std::max(1.0, u.norm()))
    throw Error(ErrorKind::NotTangent, "vector field is not tangent to Σ_μ");
  Vector out = u;
  out.tail(n).setZero();
  return out;
}

Vector ReducedModel::sigma_covderiv(const PhaseField& u, const PhaseField& v, const PhasePoint& p, double h) const {
  if ((p.xi - ctx_.mu).norm() > 1e-10 * std::max(1.0, ctx_.mu.norm()))
    throw Error(ErrorKind::PointOffConstraint, "covariant derivative requested off Σ_μ");
  const Vector up = tangent_part(u(p));
  return ctx_.P * (directional_derivative(algebra(), v, p, up, h) + conn_.apply(ctx_.mu, up, v(p)));
}

PhaseField ReducedModel::sigma_covderiv_field(PhaseField u, PhaseField v, double h) const {
  return [this, u = std::move(u), v = std::move(v), h](const PhasePoint& p) { return sigma_covderiv(u, v, p, h); };
}

Vector ReducedModel::sigma_bracket(const PhaseField& u, const PhaseField& v, const PhasePoint& p, double h) const {
  const auto& a = algebra();
  const int n = a.dim();
  const Vector up = tangent_part(u(p)), vp = tangent_part(v(p));
  Vector out = directional_derivative(a, v, p, up, h) - directional_derivative(a, u, p, vp, h);
  out.head(n) += bracket(a, up.head(n), vp.head(n));
  return out;
}

PhaseField ReducedModel::sigma_bracket_field(PhaseField u, PhaseField v, double h) const {
  return [this, u = std::move(u), v = std::move(v), h](const PhasePoint& p) { return sigma_bracket(u, v, p, h); };
}

PhaseField ReducedModel::vertical_field(PhaseField v) const {
  return [this, v = std::move(v)](const PhasePoint& p) { return ctx_.vertical(v(p)); };
}

Vector ReducedModel::covderiv(const ChartField& x, const ChartField& y, const Vector& t, double h,
                              const GroupElement* fiber) const {
  const PhasePoint p = point(t, fiber);
  Vector u = sigma_covderiv(lift_field(x, t), lift_field(y, t), p, h);
  u -= ctx_.vertical(u);
  return push_down(p, u, t);
}

double ReducedModel::form(const Vector& t, const Vector& v, const Vector& w, const GroupElement* fiber) const {
  const PhasePoint p = point(t, fiber);
  const Matrix j = chart_.jacobian(t);
  return lift(p, j * v).dot(omega_ * lift(p, j * w));
}

Matrix ReducedModel::form_matrix(const Vector& t) const {
  const int k = dim();
  const PhasePoint p = point(t);
  const Matrix j = chart_.jacobian(t);
  Matrix lifts(omega_.rows(), k);
  for (int a = 0; a < k; ++a) lifts.col(a) = lift(p, j.col(a));
  return lifts.transpose() * omega_ * lifts;
}

Tensor3 ReducedModel::christoffel(const Vector& t, double h) const {
  const int k = dim();
  Tensor3 g(k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      const Vector c = covderiv(coordinate_field(k, a), coordinate_field(k, b), t, h);
      for (int d = 0; d < k; ++d) g(a, b, d) = c(d);
    }
  return g;
}

double reduced_torsion_defect(const ReducedModel& model, const Vector& t, double h) {
  const Tensor3 g = model.christoffel(t, h);
  const int k = model.dim();
  double d = 0.0;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c) d = std::max(d, std::abs(g(a, b, c) - g(b, a, c)));
  return d;
}

namespace {

// ∂_a ω(t) by central differences, one matrix per direction.
std::vector<Matrix> form_derivatives(const ReducedModel& model, const Vector& t, double h) {
  std::vector<Matrix> out;
  for (int a = 0; a < model.dim(); ++a) {
    Vector e = Vector::Zero(model.dim());
    e(a) = h;
    out.push_back((model.form_matrix(t + e) - model.form_matrix(t - e)) / (2.0 * h));
  }
  return out;
}

}  // namespace

double reduced_nabla_form_defect(const ReducedModel& model, const Vector& t, double h) {
  const int k = model.dim();
  const Tensor3 g = model.christoffel(t, h);
  const Matrix om = model.form_matrix(t);
  const auto dom = form_derivatives(model, t, h);
  double d = 0.0;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c) {
        double s = dom[a](b, c);
        for (int e = 0; e < k; ++e) s -= g(a, b, e) * om(e, c) + g(a, c, e) * om(b, e);
        d = std::max(d, std::abs(s));
      }
  return d;
}

double reduced_closedness_defect(const ReducedModel& model, const Vector& t, double h) {
  const int k = model.dim();
  const auto dom = form_derivatives(model, t, h);
  double d = 0.0;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c) d = std::max(d, std::abs(dom[a](b, c) + dom[b](c, a) + dom[c](a, b)));
  return d;
}

KksComparison compare_with_kks(const ReducedModel& model, const std::vector<Vector>& points) {
  const auto& a = model.algebra();
  KksComparison out;
  for (const auto& t : points) {
    const Matrix om = model.form_matrix(t);
    const Matrix j = model.chart().jacobian(t);
    const Covector nu = model.chart().point(t);
    const int k = model.dim();
    Matrix kks(k, k);
    for (int p = 0; p < k; ++p)
      for (int q = 0; q < k; ++q) kks(p, q) = kks_form(a, nu, j.col(p), j.col(q));
    const double scale = linalg::max_abs(kks);
    if (out.sigma == 0.0) {
      Eigen::Index r, c;
      kks.cwiseAbs().maxCoeff(&r, &c);
      out.sigma = (om(r, c) * kks(r, c) >= 0.0) ? 1.0 : -1.0;
    }
    const double same = linalg::max_abs(om - out.sigma * kks);
    const double flipped = linalg::max_abs(om + out.sigma * kks);
    if (flipped < same) out.sign_consistent = false;
    out.max_relative_error = std::max(out.max_relative_error, same / scale);
  }
  return out;
}

double fiber_independence_defect(const ReducedModel& model, const std::vector<Vector>& points,
                                 const std::vector<GroupElement>& fiber_elements, double h) {
  const int k = model.dim();
  double d = 0.0;
  for (const auto& t : points)
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        const Vector ref = model.covderiv(coordinate_field(k, a), coordinate_field(k, b), t, h);
        for (const auto& f : fiber_elements) {
          const Vector moved = model.covderiv(coordinate_field(k, a), coordinate_field(k, b), t, h, &f);
          d = std::max(d, (moved - ref).cwiseAbs().maxCoeff());
        }
      }
  return d;
}

AutoparallelReport autoparallel_check(const LieAlgebra& a, const ReductionContext& ctx,
                                      const FrameConnection& conn, std::mt19937_64& rng,
                                      const std::vector<Vector>& points, double h) {
  AutoparallelReport rep;
  rep.defect = autoparallel_defect(a, ctx, conn);
  if (rep.defect > 1e-10) return rep;
  if (ctx.base_dim() == 0) {
    rep.independence = 0.0;
    return rep;
  }
  ReductionOptions opts;
  opts.s_tilde = random_stable_complement(a, ctx, rng);
  const ReducedModel first(a, ctx, conn);
  const ReducedModel second(a, build_context(a, ctx.mu, opts), conn);
  double d = 0.0;
  for (const auto& t : points)
    d = std::max(d, max_abs_diff(first.christoffel(t, h), second.christoffel(t, h)));
  rep.independence = d;
  return rep;
}

}  // namespace symred
