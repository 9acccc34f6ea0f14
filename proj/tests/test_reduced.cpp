#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "symred/catalog.hpp"
#include "symred/errors.hpp"
#include "symred/reduced.hpp"
#include "test_support.hpp"

using namespace symred;
using testing::unit;

namespace {

ReducedModel flagship(bool symplectized = true) {
  const auto so3 = catalog::so3();
  const auto conn = symplectized ? symplectize(baseline_connection(so3), so3) : baseline_connection(so3);
  return ReducedModel(so3, build_context(so3, unit(3, 2)), conn);
}

ReducedModel model_for(const testing::ReductionCase& c) {
  const auto a = catalog::by_name(c.group);
  return ReducedModel(a, build_context(a, c.mu), symplectize(baseline_connection(a), a));
}

std::vector<GroupElement> fiber_samples(const ReducedModel& m, std::mt19937_64& rng, int count) {
  std::vector<GroupElement> out;
  for (int i = 0; i < count; ++i)
    out.push_back(exp(m.algebra(), m.context().g_mu * testing::random_vector(rng, m.context().k(), 2.0)));
  return out;
}

}  // namespace

TEST_CASE("horizontal lifts") {
  const auto m = flagship();
  const Vector t0 = Vector::Zero(2);
  const PhasePoint p = m.point(t0);
  CHECK(m.lift(p, Covector::Zero(3)).norm() == 0.0);

  const Matrix j = m.chart().jacobian(t0);
  Matrix lifts(6, 2);
  for (int c = 0; c < 2; ++c) lifts.col(c) = m.lift(p, j.col(c));
  CHECK(linalg::subspace_distance(lifts, m.context().W1) <= 1e-12);

  std::mt19937_64 rng(51);
  for (const auto& c : testing::reduction_cases()) {
    CAPTURE(c.group);
    const auto model = model_for(c);
    for (int trial = 0; trial < 3; ++trial) {
      const Vector t = testing::random_vector(rng, model.dim(), 0.4);
      const auto fibers = fiber_samples(model, rng, 1);
      const PhasePoint q = model.point(t, &fibers[0]);
      const Covector v = model.chart().jacobian(t) * testing::random_vector(rng, model.dim());
      const Vector u = model.lift(q, v);
      CHECK((orbit_pushforward(model.algebra(), q, u.head(model.algebra().dim())) - v).norm() <= 1e-10);
      CHECK(model.context().alpha_vector(u).norm() <= 1e-12);
      CHECK(linalg::containment_defect(model.context().W1, u) <= 1e-12);
    }
  }
}

TEST_CASE("lift errors") {
  const auto m = flagship();
  try {
    m.lift(m.point(Vector::Zero(2)), unit(3, 2));
    FAIL("expected SingularProjection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularProjection);
  }
  PhasePoint off = m.point(Vector::Zero(2));
  off.xi = unit(3, 1);
  try {
    m.lift(off, Covector::Zero(3));
    FAIL("expected PointOffConstraint");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PointOffConstraint);
  }
  // a corrupted horizontal space containing Δ makes π_* singular on it
  const auto so3 = catalog::so3();
  auto ctx = build_context(so3, unit(3, 2));
  ctx.W1.col(1) = unit(6, 2);
  const ReducedModel broken(so3, ctx, baseline_connection(so3));
  try {
    broken.lift(broken.point(Vector::Zero(2)), m.chart().jacobian(Vector::Zero(2)).col(0));
    FAIL("expected SingularProjection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularProjection);
  }
}

TEST_CASE("zero-dimensional base") {
  const auto ab = catalog::abelian(2);
  const auto ctx = build_context(ab, Covector::Ones(2));
  const auto conn = symplectize(baseline_connection(ab), ab);
  CHECK(conn.coefficients(Covector::Ones(2)).max_abs() == 0.0);  // ∇ ≡ 0 on Σ
  try {
    ReducedModel(ab, ctx, conn);
    FAIL("expected ZeroDimensionalBase");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroDimensionalBase);
  }
}

TEST_CASE("connection along Σ on constant frame fields") {
  const auto m = flagship();
  const auto& ctx = m.context();
  std::mt19937_64 rng(52);
  const Tensor3 gamma = m.connection().coefficients(ctx.mu);
  for (int trial = 0; trial < 10; ++trial) {
    const Vector u = ctx.P * testing::random_vector(rng, 6), v = ctx.P * testing::random_vector(rng, 6);
    const PhasePoint p{exp(m.algebra(), testing::random_vector(rng, 3)), ctx.mu};
    Vector expected = Vector::Zero(6);
    for (int r = 0; r < 6; ++r) {
      double s = 0.0;
      for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
          for (int c = 0; c < 6; ++c) s += ctx.P(r, c) * u(a) * v(b) * gamma(a, b, c);
      expected(r) = s;
    }
    const Vector got = m.sigma_covderiv(constant_field(u), constant_field(v), p, 1e-5);
    CHECK((got - expected).norm() <= 1e-12);
    CHECK(linalg::containment_defect(ctx.split.tangent, got) <= 1e-12);
  }
}

TEST_CASE("connection along Σ: torsion, Leibniz rule and G_μ-equivariance") {
  std::mt19937_64 rng(53);
  for (const auto& c : testing::reduction_cases()) {
    CAPTURE(c.group);
    const auto m = model_for(c);
    const auto& a = m.algebra();
    const int k = m.dim();
    const Vector t = testing::random_vector(rng, k, 0.3);
    const Vector cx = testing::random_vector(rng, k), cy = testing::random_vector(rng, k);
    const ChartField xf = [cx](const Vector& s) { return Vector(cx * (1.0 + s.sum())); };
    const ChartField yf = [cy](const Vector& s) { return Vector(cy + 0.5 * s); };
    const PhaseField xb = m.lift_field(xf, t), yb = m.lift_field(yf, t);
    const PhasePoint p = m.point(t);
    const double h = 1e-5;

    const Vector tor = m.sigma_covderiv(xb, yb, p, h) - m.sigma_covderiv(yb, xb, p, h) - m.sigma_bracket(xb, yb, p, h);
    CHECK(tor.norm() <= 1e-7);

    // ∇_X(fY) = X(f)Y + f∇_X Y with f = 2 + trace(g)
    auto f = [](const PhasePoint& q) { return 2.0 + q.g.mat.trace(); };
    const PhaseField fy = [&](const PhasePoint& q) { return Vector(f(q) * yb(q)); };
    const Vector xp = xb(p);
    const double xf_deriv = (f(flow(a, p, xp, h)) - f(flow(a, p, xp, -h))) / (2 * h);
    const Vector lhs = m.sigma_covderiv(xb, fy, p, h);
    const Vector rhs = xf_deriv * yb(p) + f(p) * m.sigma_covderiv(xb, yb, p, h);
    CHECK((lhs - rhs).norm() <= 1e-7);

    // value at (g·h, μ) is the right-action transport of the value at (g, μ)
    for (const auto& fib : fiber_samples(m, rng, 2)) {
      const PhasePoint q = m.point(t, &fib);
      const Matrix tm = right_action_frame_map(a, fib);
      CHECK((m.sigma_covderiv(xb, yb, q, h) - tm * m.sigma_covderiv(xb, yb, p, h)).norm() <= 1e-8);
    }
  }
}

TEST_CASE("reduced connection: torsion, fiber independence, form") {
  std::mt19937_64 rng(54);
  for (const auto& c : testing::reduction_cases()) {
    CAPTURE(c.group);
    const auto m = model_for(c);
    const Vector t = testing::random_vector(rng, m.dim(), 0.3);
    CHECK(reduced_torsion_defect(m, t) <= 1e-6);
    CHECK(reduced_nabla_form_defect(m, t) <= 1e-6);
    CHECK(reduced_closedness_defect(m, t) <= 1e-6);
    CHECK(fiber_independence_defect(m, {t}, fiber_samples(m, rng, 2)) <= 1e-8);

    const auto kks = compare_with_kks(m, {Vector::Zero(m.dim()), t});
    CHECK(kks.sigma == -1.0);
    CHECK(kks.sign_consistent);
    CHECK(kks.max_relative_error <= 1e-8);

    const Vector v = testing::random_vector(rng, m.dim());
    CHECK(std::abs(m.form(t, v, v)) <= 1e-12);
    CHECK(linalg::rank(m.form_matrix(t)) == m.dim());
  }
}

TEST_CASE("flagship: reduced connection is the round-sphere Levi-Civita connection") {
  // For so(3) the orbit through e3* is the unit sphere, and ∇ʳ is the canonical
  // connection of SO(3)/SO(2), i.e. Levi-Civita for the induced Euclidean
  // metric: ∇ʳ_{∂a}∂_b is the tangential part of ∂_a∂_b ν.
  const auto m = flagship();
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 5; ++trial) {
    const Vector t = trial == 0 ? Vector::Zero(2) : testing::random_vector(rng, 2, 0.5);
    const Tensor3 g = m.christoffel(t);
    const Covector nu = m.chart().point(t);
    const double h = 1e-5;
    for (int a = 0; a < 2; ++a) {
      Vector e = Vector::Zero(2);
      e(a) = h;
      const Matrix dj = (m.chart().jacobian(t + e) - m.chart().jacobian(t - e)) / (2 * h);
      for (int b = 0; b < 2; ++b) {
        const Vector second = dj.col(b);
        const Vector tangential = second - nu * nu.dot(second);
        const Vector expected = m.chart().to_chart(t, tangential);
        for (int d = 0; d < 2; ++d) CHECK(std::abs(g(a, b, d) - expected(d)) <= 1e-8);
      }
    }
  }
}

TEST_CASE("autoparallel check and independence of S̃") {
  std::mt19937_64 rng(56);
  const auto heis = catalog::heis3();
  const auto hctx = build_context(heis, unit(3, 2));
  const auto hconn = symplectize(baseline_connection(heis), heis);
  const auto rep = autoparallel_check(heis, hctx, hconn, rng, {Vector::Zero(2), Vector::Constant(2, 0.3)});
  CHECK(rep.defect <= 1e-10);
  REQUIRE(rep.independence.has_value());
  CHECK(*rep.independence <= 1e-8);

  const auto so3 = catalog::so3();
  const auto sctx = build_context(so3, unit(3, 2));
  const auto srep = autoparallel_check(so3, sctx, symplectize(baseline_connection(so3), so3), rng, {Vector::Zero(2)});
  CHECK(srep.defect > 0.1);
  CHECK_FALSE(srep.independence.has_value());

  const auto ab = catalog::abelian(2);
  const auto arep = autoparallel_check(ab, build_context(ab, Covector::Ones(2)), baseline_connection(ab), rng, {});
  CHECK(arep.defect == 0.0);
  REQUIRE(arep.independence.has_value());
  CHECK(*arep.independence == 0.0);
}
