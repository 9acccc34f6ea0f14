#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "symred/catalog.hpp"
#include "symred/errors.hpp"
#include "symred/orbit.hpp"
#include "test_support.hpp"

using namespace symred;
using testing::unit;

namespace {

OrbitChart chart_for(const LieAlgebra& a, const Covector& mu) {
  return OrbitChart(a, mu, reductive_complement(a, stabilizer_algebra(a, mu)));
}

}  // namespace

TEST_CASE("chart basics") {
  std::mt19937_64 rng(31);
  for (const auto& c : testing::reduction_cases()) {
    CAPTURE(c.group);
    const auto a = catalog::by_name(c.group);
    const auto chart = chart_for(a, c.mu);
    CHECK(chart.dim() == a.dim() - stabilizer_algebra(a, c.mu).cols());
    const Vector zero = Vector::Zero(chart.dim());
    CHECK((chart.point(zero) - c.mu).norm() <= 1e-15);
    CHECK(linalg::rank(chart.jacobian(zero)) == chart.dim());

    for (int trial = 0; trial < 3; ++trial) {
      const Vector t = testing::random_vector(rng, chart.dim(), 0.5);
      const PhasePoint p = chart.section(t);
      CHECK((p.xi - c.mu).norm() == 0.0);
      CHECK((orbit_projection(a, p) - chart.point(t)).norm() <= 1e-14);

      // Jacobian against central differences of ν(t)
      const double h = 1e-6;
      Matrix fd(a.dim(), chart.dim());
      for (int i = 0; i < chart.dim(); ++i) {
        Vector e = Vector::Zero(chart.dim());
        e(i) = h;
        fd.col(i) = (chart.point(t + e) - chart.point(t - e)) / (2 * h);
      }
      CHECK(linalg::max_abs(fd - chart.jacobian(t)) <= 1e-8);

      // left velocities against g⁻¹ ∂g from differences of the realization
      const Matrix w = chart.left_velocities(t);
      const Matrix ginv = inverse(chart.group_element(t)).mat;
      for (int i = 0; i < chart.dim(); ++i) {
        Vector e = Vector::Zero(chart.dim());
        e(i) = h;
        const Matrix dg = (chart.group_element(t + e).mat - chart.group_element(t - e).mat) / (2 * h);
        CHECK((a.from_matrix(ginv * dg) - w.col(i)).norm() <= 1e-8);
      }

      // inversion round trip from a nearby anchor
      const Vector back = chart.invert(chart.point(t), t + testing::random_vector(rng, chart.dim(), 0.05));
      CHECK((back - t).norm() <= 1e-10);
    }
  }
}

TEST_CASE("so3 chart stays on the unit sphere") {
  std::mt19937_64 rng(32);
  const auto so3 = catalog::so3();
  const auto chart = chart_for(so3, unit(3, 2));
  for (int trial = 0; trial < 20; ++trial)
    CHECK(std::abs(chart.point(testing::random_vector(rng, 2, 1.0)).norm() - 1.0) <= 1e-10);
}

TEST_CASE("pushforward of group directions") {
  std::mt19937_64 rng(33);
  const auto so3 = catalog::so3();
  const PhasePoint p{exp(so3, testing::random_vector(rng, 3)), unit(3, 2)};
  const Vector x = testing::random_vector(rng, 3);
  const double h = 1e-6;
  const PhasePoint fwd{p.g * exp(so3, h * x), p.xi}, bwd{p.g * exp(so3, -h * x), p.xi};
  const Covector fd = (orbit_projection(so3, fwd) - orbit_projection(so3, bwd)) / (2 * h);
  CHECK((fd - orbit_pushforward(so3, p, x)).norm() <= 1e-9);
  // stabilizer directions project to zero
  CHECK(orbit_pushforward(so3, p, unit(3, 2)).norm() <= 1e-15);
}

TEST_CASE("abelian orbits are points") {
  const auto ab = catalog::abelian(3);
  const Covector mu = Covector::Ones(3);
  const auto chart = chart_for(ab, mu);
  CHECK(chart.dim() == 0);
  CHECK((chart.point(Vector::Zero(0)) - mu).norm() == 0.0);
  CHECK(orbit_tangent_frame(ab, mu).frame.cols() == 0);
}

TEST_CASE("chart needs a realization") {
  Tensor3 c(3);
  c(0, 1, 2) = 1;
  c(1, 0, 2) = -1;
  c(1, 2, 0) = 1;
  c(2, 1, 0) = -1;
  c(2, 0, 1) = 1;
  c(0, 2, 1) = -1;
  const LieAlgebra bare{c};
  try {
    OrbitChart(bare, unit(3, 2), reductive_complement(bare, stabilizer_algebra(bare, unit(3, 2))));
    FAIL("expected NoRealization");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoRealization);
  }
}

TEST_CASE("chart rank loss is reported") {
  // a complement direction that lies in 𝔤_μ makes the chart degenerate
  const auto so3 = catalog::so3();
  Matrix bad(3, 2);
  bad << 1, 0, 0, 0, 0, 1;
  try {
    OrbitChart(so3, unit(3, 2), bad);
    FAIL("expected RankLoss");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RankLoss);
  }
}

TEST_CASE("kks form") {
  const auto so3 = catalog::so3();
  const Covector nu = unit(3, 2);
  const Covector v = coad_star(so3, unit(3, 0), nu), w = coad_star(so3, unit(3, 1), nu);
  CHECK(kks_form(so3, nu, v, w) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(kks_form(so3, nu, v, v)) <= 1e-15);

  const auto heis = catalog::heis3();
  const Covector z = unit(3, 2);
  const auto frame = orbit_tangent_frame(heis, z);
  CHECK(frame.frame.cols() == 2);
  CHECK(kks_form(heis, z, coad_star(heis, unit(3, 0), z), coad_star(heis, unit(3, 1), z)) ==
        doctest::Approx(1.0).epsilon(1e-14));

  std::mt19937_64 rng(34);
  for (const auto& c : testing::reduction_cases()) {
    CAPTURE(c.group);
    const auto a = catalog::by_name(c.group);
    const auto chart = chart_for(a, c.mu);
    const Vector t = testing::random_vector(rng, chart.dim(), 0.4);
    const Covector nu2 = chart.point(t);
    const Vector x = testing::random_vector(rng, a.dim()), y = testing::random_vector(rng, a.dim());
    const Covector vx = coad_star(a, x, nu2), vy = coad_star(a, y, nu2);
    const double ref = nu2.dot(bracket(a, x, y));
    CHECK(std::abs(kks_form(a, nu2, vx, vy) - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
    // shifting the representative by the stabilizer of ν changes nothing
    const Matrix stab = stabilizer_algebra(a, nu2);
    const Vector shift = stab * testing::random_vector(rng, int(stab.cols()));
    CHECK(std::abs(nu2.dot(bracket(a, x + shift, y)) - ref) <= 1e-10);

    // nondegenerate on the tangent frame
    const auto f = orbit_tangent_frame(a, nu2);
    Matrix k(f.frame.cols(), f.frame.cols());
    for (int i = 0; i < k.rows(); ++i)
      for (int j = 0; j < k.cols(); ++j) k(i, j) = kks_form(a, nu2, f.frame.col(i), f.frame.col(j));
    CHECK(linalg::rank(k) == k.rows());
  }

  try {
    kks_form(so3, nu, unit(3, 2), v);
    FAIL("expected NotTangent");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotTangent);
  }
}
