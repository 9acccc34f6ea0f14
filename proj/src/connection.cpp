#include "symred/connection.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "symred/errors.hpp"

namespace symred {

FrameConnection::FrameConnection(int algebra_dim, CoefficientMap coeff, std::string label)
    : n_(algebra_dim), coeff_(std::move(coeff)), label_(std::move(label)) {}

Tensor3 FrameConnection::coefficients(const Covector& xi) const {
  if (xi.size() != n_) throw Error(ErrorKind::DimensionMismatch, "FrameConnection: ξ length");
  return coeff_(xi);
}

Vector FrameConnection::apply(const Covector& xi, const Vector& u, const Vector& v) const {
  if (u.size() != 2 * n_ || v.size() != 2 * n_)
    throw Error(ErrorKind::DimensionMismatch, "FrameConnection::apply: tangent length");
  return coefficients(xi).contract(u, v);
}

Tensor3 frame_brackets(const LieAlgebra& a) {
  const int n = a.dim();
  Tensor3 c(2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) c(i, j, k) = a.structure()(i, j, k);
  return c;
}

FrameConnection baseline_connection(const LieAlgebra& a) {
  const Tensor3 gamma = 0.5 * frame_brackets(a);
  return FrameConnection(a.dim(), [gamma](const Covector&) { return gamma; }, "baseline");
}

namespace {

// ∂Ω_{bc}/∂E_a: only fiber directions act, Ê_l Ω_{ij} = −c_ij^l.
Tensor3 omega_derivative(const LieAlgebra& a) {
  const int n = a.dim();
  Tensor3 d(2 * n);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d(n + l, i, j) = -a.structure()(i, j, l);
  return d;
}

}  // namespace

Tensor3 nabla_omega_tensor(const LieAlgebra& a, const FrameConnection& conn, const Covector& xi) {
  const int m = 2 * a.dim();
  const Matrix om = omega_gram(a, xi);
  const Tensor3 g = conn.coefficients(xi);
  Tensor3 out = omega_derivative(a);
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      for (int r = 0; r < m; ++r) {
        double s = 0.0;
        for (int d = 0; d < m; ++d) s += g(p, q, d) * om(d, r) + g(p, r, d) * om(q, d);
        out(p, q, r) -= s;
      }
  return out;
}

double nabla_omega(const LieAlgebra& a, const FrameConnection& conn, const Covector& xi, const TrivTangent& u,
                   const TrivTangent& v, const TrivTangent& w) {
  const Tensor3 nt = nabla_omega_tensor(a, conn, xi);
  const Vector uu = u.stacked(), vv = v.stacked(), ww = w.stacked();
  if (uu.size() != 2 * a.dim() || vv.size() != uu.size() || ww.size() != uu.size())
    throw Error(ErrorKind::DimensionMismatch, "nabla_omega: tangent length");
  return nt.contract(uu, vv).dot(ww);
}

double baseline_nabla_omega_closed_form(const LieAlgebra& a, const Covector& xi, const TrivTangent& u,
                                        const TrivTangent& v, const TrivTangent& w) {
  const Vector& x = u.x;
  const Vector& y = v.x;
  const Vector& yp = w.x;
  return -u.eta.dot(bracket(a, y, yp)) + 0.5 * w.eta.dot(bracket(a, x, y)) - 0.5 * v.eta.dot(bracket(a, x, yp)) +
         0.5 * xi.dot(bracket(a, x, bracket(a, y, yp)));
}

Tensor3 symplectic_correction(const LieAlgebra& a, const FrameConnection& conn, const Covector& xi) {
  const int m = 2 * a.dim();
  const Matrix om = omega_gram(a, xi);
  const Vector s = linalg::singular_values(om);
  if (s(m - 1) <= kRankTol * s(0)) throw Error(ErrorKind::SingularOmega, "ω-Gram matrix is numerically singular");
  const Eigen::PartialPivLU<Matrix> lu(om.transpose());

  const Tensor3 nt = nabla_omega_tensor(a, conn, xi);
  Tensor3 corr(m);
  Vector rhs(m);
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) {
      for (int d = 0; d < m; ++d) rhs(d) = (nt(p, q, d) + nt(q, p, d)) / 3.0;
      // Σ_c A[p][q][c] Ω(c, d) = rhs_d  ⇔  Ωᵀ A[p][q][·] = rhs
      const Vector col = lu.solve(rhs);
      for (int c = 0; c < m; ++c) corr(p, q, c) = col(c);
    }
  return corr;
}

FrameConnection symplectize(const FrameConnection& conn, const LieAlgebra& a) {
  auto base = std::make_shared<const FrameConnection>(conn);
  auto alg = std::make_shared<const LieAlgebra>(a);
  return FrameConnection(
      a.dim(),
      [base, alg](const Covector& xi) { return base->coefficients(xi) + symplectic_correction(*alg, *base, xi); },
      conn.label().empty() ? "symplectized" : conn.label() + "+symplectized");
}

TrivTangent torsion(const LieAlgebra& a, const FrameConnection& conn, const Covector& xi, const TrivTangent& u,
                    const TrivTangent& v) {
  const Vector uu = u.stacked(), vv = v.stacked();
  const Tensor3 g = conn.coefficients(xi);
  Vector t = g.contract(uu, vv) - g.contract(vv, uu);
  t.head(a.dim()) -= bracket(a, u.x, v.x);
  return TrivTangent::from_stacked(t);
}

double torsion_defect(const LieAlgebra& a, const FrameConnection& conn, const Covector& xi) {
  const int m = 2 * a.dim();
  const Tensor3 g = conn.coefficients(xi);
  const Tensor3 c = frame_brackets(a);
  double worst = 0.0;
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      for (int r = 0; r < m; ++r) worst = std::max(worst, std::abs(g(p, q, r) - g(q, p, r) - c(p, q, r)));
  return worst;
}

double nabla_omega_defect(const LieAlgebra& a, const FrameConnection& conn, const Covector& xi) {
  return nabla_omega_tensor(a, conn, xi).max_abs();
}

FrameConnection validated(const FrameConnection& conn, const LieAlgebra& a, const std::vector<Covector>& samples) {
  FrameConnection out = conn;
  out.is_torsion_free = true;
  out.is_symplectic = true;
  for (const auto& xi : samples) {
    if (torsion_defect(a, conn, xi) > 1e-10) out.is_torsion_free = false;
    if (nabla_omega_defect(a, conn, xi) > 1e-10) out.is_symplectic = false;
  }
  return out;
}

Matrix right_action_frame_map(const LieAlgebra& a, const GroupElement& h) {
  const int n = a.dim();
  const GroupElement hinv = inverse(h);
  Matrix t = Matrix::Zero(2 * n, 2 * n);
  t.topLeftCorner(n, n) = Ad(a, hinv);
  t.bottomRightCorner(n, n) = Coad(a, hinv);
  return t;
}

namespace {

// Γ'[a][b][c] = Σ T(d,a) T(e,b) Γ[d][e][f] T⁻¹(c,f)
Tensor3 transform_coefficients(const Tensor3& g, const Matrix& t, const Matrix& tinv) {
  const int m = g.dim0();
  std::vector<Matrix> slices(m, Matrix::Zero(m, m));
  for (int d = 0; d < m; ++d)
    for (int e = 0; e < m; ++e)
      for (int f = 0; f < m; ++f) slices[f](d, e) = g(d, e, f);
  Tensor3 out(m);
  for (int f = 0; f < m; ++f) {
    const Matrix mf = t.transpose() * slices[f] * t;
    for (int c = 0; c < m; ++c) {
      const double w = tinv(c, f);
      if (w == 0.0) continue;
      for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) out(p, q, c) += w * mf(p, q);
    }
  }
  return out;
}

}  // namespace

FrameConnection pullback(const LieAlgebra& a, const FrameConnection& conn, const GroupElement& h) {
  auto base = std::make_shared<const FrameConnection>(conn);
  const Matrix t = right_action_frame_map(a, h);
  const Matrix tinv = t.inverse();
  const Matrix coad_hinv = Coad(a, inverse(h));
  return FrameConnection(
      a.dim(),
      [base, t, tinv, coad_hinv](const Covector& xi) {
        return transform_coefficients(base->coefficients(coad_hinv * xi), t, tinv);
      },
      conn.label() + "+pullback");
}

QuadratureRule QuadratureRule::cyclic(const LieAlgebra& a, const Vector& generator, int order) {
  if (order <= 0) throw Error(ErrorKind::ConfigError, "cyclic quadrature order must be positive");
  QuadratureRule q;
  for (int j = 0; j < order; ++j) {
    q.nodes.push_back(exp(a, (2.0 * std::numbers::pi * j / order) * generator));
    q.weights.push_back(1.0 / order);
  }
  return q;
}

QuadratureRule QuadratureRule::torus_gauss_legendre(const LieAlgebra& a, const std::vector<Vector>& generators,
                                                    const std::vector<double>& periods, int points_per_axis) {
  if (generators.size() != periods.size() || generators.empty() || points_per_axis <= 0)
    throw Error(ErrorKind::ConfigError, "torus quadrature: need one period per generator and positive order");
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i + 1; j < generators.size(); ++j)
      if (bracket(a, generators[i], generators[j]).norm() > 1e-12)
        throw Error(ErrorKind::ConfigError, "torus quadrature: generators must commute");

  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
      gsl_integration_glfixed_table_alloc(points_per_axis), &gsl_integration_glfixed_table_free);
  std::vector<std::vector<std::pair<double, double>>> axes;
  for (double period : periods) {
    std::vector<std::pair<double, double>> axis;
    for (int i = 0; i < points_per_axis; ++i) {
      double x = 0.0, w = 0.0;
      gsl_integration_glfixed_point(0.0, period, i, &x, &w, table.get());
      axis.emplace_back(x, w / period);
    }
    axes.push_back(std::move(axis));
  }

  QuadratureRule q;
  const std::size_t dims = generators.size();
  std::vector<int> idx(dims, 0);
  while (true) {
    Vector x = Vector::Zero(a.dim());
    double w = 1.0;
    for (std::size_t d = 0; d < dims; ++d) {
      x += axes[d][idx[d]].first * generators[d];
      w *= axes[d][idx[d]].second;
    }
    q.nodes.push_back(exp(a, x));
    q.weights.push_back(w);
    std::size_t d = 0;
    while (d < dims && ++idx[d] == points_per_axis) idx[d++] = 0;
    if (d == dims) break;
  }
  return q;
}

double QuadratureRule::weight_defect() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return std::abs(s - 1.0);
}

FrameConnection average_connection(const LieAlgebra& a, const FrameConnection& conn, const QuadratureRule& q) {
  if (q.nodes.size() != q.weights.size() || q.nodes.empty())
    throw Error(ErrorKind::ConfigError, "quadrature rule must have matching nonempty nodes and weights");
  for (double w : q.weights)
    if (!(w > 0.0)) throw Error(ErrorKind::ConfigError, "quadrature weights must be positive");
  if (q.weight_defect() > 1e-12) throw Error(ErrorKind::ConfigError, "quadrature weights must sum to 1");
  if (!a.has_realization())
    throw Error(ErrorKind::NoRealization, "average_connection requires a matrix realization");

  std::vector<FrameConnection> pulled;
  for (const auto& g : q.nodes) pulled.push_back(pullback(a, conn, g));
  auto parts = std::make_shared<const std::vector<FrameConnection>>(std::move(pulled));
  auto weights = q.weights;
  const int m = 2 * a.dim();
  return FrameConnection(
      a.dim(),
      [parts, weights, m](const Covector& xi) {
        Tensor3 sum(m);
        for (std::size_t k = 0; k < parts->size(); ++k) sum += weights[k] * (*parts)[k].coefficients(xi);
        return sum;
      },
      conn.label() + "+averaged");
}

double node_invariance_defect(const LieAlgebra& a, const FrameConnection& conn, const QuadratureRule& q,
                              const std::vector<Covector>& samples) {
  double worst = 0.0;
  for (const auto& g : q.nodes) {
    const FrameConnection moved = pullback(a, conn, g);
    for (const auto& xi : samples)
      worst = std::max(worst, max_abs_diff(moved.coefficients(xi), conn.coefficients(xi)));
  }
  return worst;
}

}  // namespace symred
