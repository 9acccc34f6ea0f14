#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "symred/catalog.hpp"
#include "symred/errors.hpp"
#include "symred/phase_space.hpp"
#include "test_support.hpp"

using namespace symred;
using testing::unit;

namespace {

TrivTangent tv(const Vector& x, const Vector& eta) { return {x, eta}; }

TrivTangent random_tangent(std::mt19937_64& rng, int n) {
  return {testing::random_vector(rng, n), testing::random_vector(rng, n)};
}

}  // namespace

TEST_CASE("symplectic form values") {
  std::mt19937_64 rng(1);
  const auto ab = catalog::abelian(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = random_tangent(rng, 3), v = random_tangent(rng, 3);
    const Covector xi = testing::random_vector(rng, 3);
    CHECK(std::abs(symplectic_form(ab, xi, u, v) - (u.eta.dot(v.x) - v.eta.dot(u.x))) <= 1e-15);
  }

  const auto so3 = catalog::so3();
  const Vector z = Vector::Zero(3);
  CHECK(symplectic_form(so3, unit(3, 2), tv(unit(3, 0), z), tv(unit(3, 1), z)) == -1.0);

  for (const char* name : {"so3", "sl2r", "heis3", "se2", "sl3r"}) {
    const auto a = catalog::by_name(name);
    const int n = a.dim();
    for (int trial = 0; trial < 10; ++trial) {
      const auto u = random_tangent(rng, n), v = random_tangent(rng, n);
      const Covector xi = testing::random_vector(rng, n);
      CHECK(std::abs(symplectic_form(a, xi, u, u)) <= 1e-15);
      CHECK(std::abs(symplectic_form(a, xi, u, v) + symplectic_form(a, xi, v, u)) <= 1e-14);
      CHECK(std::abs(symplectic_form(a, xi, u, v) - u.stacked().dot(omega_gram(a, xi) * v.stacked())) <= 1e-14);
      CHECK(linalg::rank(omega_gram(a, xi)) == 2 * n);
    }
  }
  CHECK_THROWS_AS(symplectic_form(so3, Vector::Zero(2), tv(z, z), tv(z, z)), Error);
}

TEST_CASE("Liouville form") {
  std::mt19937_64 rng(2);
  CHECK(liouville_form(unit(3, 2), tv(unit(3, 2), testing::random_vector(rng, 3))) == 1.0);
  CHECK(liouville_form(testing::random_vector(rng, 3), tv(Vector::Zero(3), testing::random_vector(rng, 3))) == 0.0);
  CHECK(liouville_form(Vector::Zero(3), random_tangent(rng, 3)) == 0.0);
}

TEST_CASE("fundamental fields and momentum maps") {
  const auto so3 = catalog::so3();
  const PhasePoint p{identity(so3), unit(3, 2)};
  const auto xr = fundamental_field(so3, Side::Right, unit(3, 0), p);
  CHECK((xr.x - unit(3, 0)).norm() == 0.0);
  CHECK((xr.eta - unit(3, 1)).norm() == 0.0);

  const auto ab = catalog::abelian(2);
  const PhasePoint pa{exp(ab, Vector::Ones(2)), Vector::Ones(2)};
  const auto xa = fundamental_field(ab, Side::Right, unit(2, 1), pa);
  CHECK(xa.eta.norm() == 0.0);

  const auto xl = fundamental_field(so3, Side::Left, unit(3, 1), p);
  CHECK((xl.x + unit(3, 1)).norm() <= 1e-15);
  CHECK(xl.eta.norm() == 0.0);

  std::mt19937_64 rng(4);
  const PhasePoint q{exp(so3, testing::random_vector(rng, 3)), testing::random_vector(rng, 3)};
  CHECK((momentum_map(so3, Side::Right, q) - q.xi).norm() == 0.0);
  CHECK((momentum_map(ab, Side::Left, pa) - pa.xi).norm() <= 1e-15);

  const PhasePoint r{exp(so3, (std::numbers::pi / 2) * unit(3, 2)), unit(3, 0)};
  CHECK((momentum_map(so3, Side::Left, r) - unit(3, 1)).norm() <= 1e-12);

  // right generator independent of g
  const PhasePoint q2{exp(so3, testing::random_vector(rng, 3)), q.xi};
  CHECK((fundamental_field(so3, Side::Right, unit(3, 2), q).stacked() -
         fundamental_field(so3, Side::Right, unit(3, 2), q2).stacked())
            .norm() == 0.0);

  // X^r generates t ↦ R(exp(tX)), whose fiber part is Coad(exp(-tX))ξ
  const Vector x = testing::random_vector(rng, 3);
  const double h = 1e-6;
  const GroupElement gp = exp(so3, h * x), gm = exp(so3, -h * x);
  const Covector dxi = (Coad(so3, gm) * q.xi - Coad(so3, gp) * q.xi) / (2 * h);
  CHECK((dxi - fundamental_field(so3, Side::Right, x, q).eta).norm() <= 1e-8);
}

TEST_CASE("constraint split dimensions and lemma checks") {
  struct Case {
    const char* name;
    Covector mu;
    int k;
  };
  Covector sl3mu = Covector::Zero(8);
  sl3mu << 1.0, 2.0, 0, 0, 0, 0, 0, 0;
  const std::vector<Case> cases = {{"so3", unit(3, 2), 1},        {"su2", unit(3, 2), 1},
                                   {"sl2r", unit(3, 0), 1},       {"heis3", unit(3, 2), 1},
                                   {"se2", Covector::Ones(3), 1}, {"sl3r", sl3mu, 2},
                                   {"abelian(3)", Covector::Ones(3), 3}};
  for (const auto& c : cases) {
    CAPTURE(c.name);
    const auto a = catalog::by_name(c.name);
    const int n = a.dim();
    const auto s = constraint_split(a, c.mu);
    CHECK(s.tangent.cols() == n);
    CHECK(s.perp.cols() == n);
    CHECK(s.radical.cols() == c.k);
    CHECK(s.radical.cols() == stabilizer_algebra(a, c.mu).cols());
    CHECK(s.sum.cols() == 2 * n - c.k);

    // (TΣ)^⊥ computed as the ω-complement equals the span of right generators
    CHECK(linalg::subspace_distance(omega_complement(a, c.mu, s.tangent), s.perp) <= 1e-10);

    // ω vanishes on TΣ × Δ
    const Matrix om = omega_gram(a, c.mu);
    CHECK(linalg::max_abs(s.tangent.transpose() * om * s.radical) <= 1e-12);

    // radical of ω restricted to the sum is exactly Δ
    const Matrix restricted = s.sum.transpose() * om * s.sum;
    const Matrix rad = s.sum * linalg::null_space(restricted);
    CHECK(linalg::subspace_distance(rad, s.radical) <= 1e-10);
  }
  const auto ab = catalog::abelian(3);
  const auto s = constraint_split(ab, Covector::Ones(3));
  CHECK(linalg::subspace_distance(s.radical, s.tangent) <= 1e-12);
  CHECK(linalg::subspace_distance(s.perp, s.tangent) <= 1e-12);
  CHECK(s.sum.cols() == 3);
}

TEST_CASE("regularity report") {
  std::mt19937_64 rng(9);
  const auto so3 = catalog::so3();
  std::vector<PhasePoint> pts;
  for (int i = 0; i < 10; ++i) pts.push_back({exp(so3, testing::random_vector(rng, 3, 3.0)), unit(3, 2)});
  const auto rep = regularity_report(so3, unit(3, 2), pts);
  CHECK(rep.regular);
  for (double s : rep.momentum_min_singular) CHECK(s > 0.5);
  for (double s : rep.generator_min_singular) CHECK(s > 0.5);

  const auto ab = catalog::abelian(2);
  const std::vector<PhasePoint> pa = {{identity(ab), Vector::Ones(2)}};
  CHECK(regularity_report(ab, Vector::Ones(2), pa).regular);

  const std::vector<PhasePoint> off = {{identity(so3), unit(3, 1)}};
  try {
    regularity_report(so3, unit(3, 2), off);
    FAIL("expected PointOffConstraint");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PointOffConstraint);
  }
}

TEST_CASE("ω is closed on left-invariant extensions") {
  std::mt19937_64 rng(12);
  for (const char* name : {"so3", "sl2r", "heis3", "se2", "sl3r"}) {
    const auto a = catalog::by_name(name);
    const int n = a.dim();
    for (int trial = 0; trial < 20; ++trial) {
      const Covector xi = testing::random_vector(rng, n);
      CHECK(omega_closedness_defect(a, xi, random_tangent(rng, n), random_tangent(rng, n),
                                    random_tangent(rng, n)) <= 1e-10);
    }
  }
}
