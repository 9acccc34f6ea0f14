#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "symred/catalog.hpp"
#include "symred/curvature.hpp"
#include "symred/errors.hpp"
#include "test_support.hpp"

using namespace symred;
using testing::unit;

namespace {

ReducedModel model_for(const std::string& group, const Covector& mu, bool symplectized = true) {
  const auto a = catalog::by_name(group);
  const auto conn = symplectized ? symplectize(baseline_connection(a), a) : baseline_connection(a);
  return ReducedModel(a, build_context(a, mu), conn);
}

}  // namespace

TEST_CASE("flagship curvature matches the unit round sphere") {
  // R(X,Y)Z = g(Y,Z)X − g(X,Z)Y for the induced metric g = JᵀJ
  for (const char* group : {"so3", "su2"}) {
    CAPTURE(group);
    const auto m = model_for(group, unit(3, 2));
    std::mt19937_64 rng(61);
    const Vector t = testing::random_vector(rng, 2, 0.4);
    const Matrix j = m.chart().jacobian(t);
    const Matrix g = j.transpose() * j;
    const auto f = curvature_tensor(m, t, CurvaturePath::Formula);
    const auto o = curvature_tensor(m, t, CurvaturePath::Oracle);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c)
          for (int d = 0; d < 2; ++d) {
            const double expected = g(b, c) * (a == d) - g(a, c) * (b == d);
            CHECK(std::abs(f(a, b, c, d) - expected) <= 1e-5);
            CHECK(std::abs(o(a, b, c, d) - expected) <= 1e-5);
          }
    CHECK(relative_discrepancy(f, o) <= 1e-4);
  }
}

TEST_CASE("formula and oracle agree on every catalog case") {
  std::mt19937_64 rng(62);
  for (const auto& c : testing::reduction_cases()) {
    if (c.group == "sl3r") continue;  // covered by the negative-control test below
    CAPTURE(c.group);
    const auto m = model_for(c.group, c.mu);
    const Vector t = testing::random_vector(rng, m.dim(), 0.3);
    const auto f = curvature_tensor(m, t, CurvaturePath::Formula);
    const auto o = curvature_tensor(m, t, CurvaturePath::Oracle);
    double diff = 0.0;
    for (std::size_t i = 0; i < f.data().size(); ++i) diff = std::max(diff, std::abs(f.data()[i] - o.data()[i]));
    CHECK(diff <= 1e-4 * std::max(1.0, o.max_abs()));
    const auto s = curvature_symmetry_report(f, m.form_matrix(t));
    CHECK(s.antisymmetry <= 1e-4);
    CHECK(s.symplectic <= 1e-4);
    CHECK(s.bianchi <= 1e-4);
  }
}

TEST_CASE("heis3 orbit is flat") {
  const auto m = model_for("heis3", unit(3, 2));
  const Vector t = Vector::Constant(2, 0.2);
  CHECK(curvature_tensor(m, t, CurvaturePath::Formula).max_abs() <= 1e-6);
  CHECK(curvature_tensor(m, t, CurvaturePath::Oracle).max_abs() <= 1e-6);
  const auto s = curvature_symmetry_report(curvature_tensor(m, t, CurvaturePath::Formula), m.form_matrix(t));
  CHECK(s.antisymmetry <= 1e-6);
  CHECK(s.symplectic <= 1e-6);
  CHECK(s.bianchi <= 1e-6);
}

TEST_CASE("curvature formula is tensorial and antisymmetric") {
  const auto m = model_for("so3", unit(3, 2));
  std::mt19937_64 rng(63);
  const Vector t = testing::random_vector(rng, 2, 0.3);
  const Vector cx = testing::random_vector(rng, 2), cy = testing::random_vector(rng, 2),
               cz = testing::random_vector(rng, 2);
  const ChartField x = constant_chart_field(cx), y = constant_chart_field(cy), z = constant_chart_field(cz);
  auto f = [](const Vector& s) { return 1.5 + s(0) - 0.7 * s(1) * s(1); };
  auto scaled = [&](const Vector& c) { return ChartField([c, f](const Vector& s) { return Vector(f(s) * c); }); };
  const Vector ref = reduced_curvature_formula(m, x, y, z, t);
  CHECK((reduced_curvature_formula(m, scaled(cx), y, z, t) - f(t) * ref).norm() <= 1e-6);
  CHECK((reduced_curvature_formula(m, x, scaled(cy), z, t) - f(t) * ref).norm() <= 1e-6);
  CHECK((reduced_curvature_formula(m, x, y, scaled(cz), t) - f(t) * ref).norm() <= 1e-6);
  CHECK((reduced_curvature_formula(m, y, x, z, t) + ref).norm() <= 1e-8);
  CHECK(reduced_curvature_formula(m, x, x, z, t).norm() <= 1e-8);
  CHECK(curvature_fd_oracle(m, x, x, z, t).norm() <= 1e-6);

  // the oracle with non-commuting fields exercises the bracket term
  const Vector oracle = curvature_fd_oracle(m, scaled(cx), y, z, t);
  CHECK((oracle - f(t) * ref).norm() <= 1e-5);

  // evaluation through another point of the fiber
  const GroupElement h = exp(m.algebra(), 0.8 * unit(3, 2));
  CHECK((reduced_curvature_formula(m, x, y, z, t, {}, &h) - ref).norm() <= 1e-6);
}

TEST_CASE("step halving shows second-order convergence") {
  const auto m = model_for("so3", unit(3, 2));
  const auto rep = curvature_convergence(m, Vector::Constant(2, 0.2), 2e-2, 3);
  REQUIRE(rep.factors.size() == 2);
  for (double f : rep.factors) {
    CHECK(f >= 3.0);
    CHECK(f <= 5.0);
  }
}

TEST_CASE("curvature is invariant under the coadjoint action") {
  const auto m = model_for("so3", unit(3, 2));
  std::mt19937_64 rng(64);
  const GroupElement g = exp(m.algebra(), testing::random_vector(rng, 3, 0.2));
  CHECK(curvature_invariance_defect(m, Vector::Constant(2, 0.1), g) <= 1e-6);
}

TEST_CASE("negative control: the unprojected connection is not symplectic after reduction") {
  Covector mu = Covector::Zero(8);
  mu(0) = 1.0;
  mu(1) = 2.0;
  const Vector t = Vector::Constant(6, 0.1);
  // R(∂0, ∂1) as a matrix, then the sp(ωʳ) defect of that single endomorphism
  auto sp_defect = [&](const ReducedModel& m) {
    const int k = m.dim();
    Matrix r(k, k);
    for (int c = 0; c < k; ++c)
      r.col(c) = reduced_curvature_formula(m, coordinate_field(k, 0), coordinate_field(k, 1), coordinate_field(k, c), t);
    const Matrix om = m.form_matrix(t);
    return linalg::max_abs(r.transpose() * om - (r.transpose() * om).transpose());
  };
  CHECK(sp_defect(model_for("sl3r", mu, true)) <= 1e-4);
  CHECK(sp_defect(model_for("sl3r", mu, false)) > 1e-2);
  CHECK(reduced_nabla_form_defect(model_for("sl3r", mu, false), t) > 1e-2);
}

TEST_CASE("symmetry report on synthetic tensors") {
  CurvatureTensor flat(2);
  const auto s = curvature_symmetry_report(flat, Matrix::Identity(2, 2));
  CHECK(s.antisymmetry == 0.0);
  CHECK(s.symplectic == 0.0);
  CHECK(s.bianchi == 0.0);
  CurvatureTensor bad(2);
  bad(0, 1, 0, 0) = 1.0;  // not antisymmetric in (X, Y)
  CHECK(curvature_symmetry_report(bad, Matrix::Identity(2, 2)).antisymmetry == 1.0);
}
