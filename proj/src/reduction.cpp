#include "symred/reduction.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>

#include "symred/errors.hpp"

namespace symred {

namespace {

constexpr double kStabilityTol = 1e-10;

Matrix fiber_embed(const Matrix& lam) {
  Matrix f = Matrix::Zero(2 * lam.rows(), lam.cols());
  f.bottomRows(lam.rows()) = lam;
  return f;
}

}  // namespace

IsotropicCorrection isotropic_correction(const Matrix& omega, const Matrix& s_tilde, const Matrix& delta) {
  if (omega.rows() != omega.cols() || s_tilde.rows() != omega.rows() || delta.rows() != omega.rows())
    throw Error(ErrorKind::DimensionMismatch, "isotropic_correction: inconsistent row counts");
  if (s_tilde.cols() != delta.cols())
    throw Error(ErrorKind::DegeneratePairing, "isotropic_correction: dim S̃ differs from dim Δ");
  const auto k = s_tilde.cols();
  IsotropicCorrection out;
  if (k == 0) {
    out.S = s_tilde;
    out.L = Matrix::Zero(0, 0);
    return out;
  }
  const Matrix q = delta.transpose() * omega * s_tilde;  // Q(j, l) = ω(d_j, s_l)
  const Matrix os = s_tilde.transpose() * omega * s_tilde;
  const Vector sv = linalg::singular_values(q);
  const double scale = delta.norm() * s_tilde.norm() * std::max(1.0, omega.norm());
  if (sv(k - 1) <= kRankTol * std::max(sv(0), scale))
    throw Error(ErrorKind::DegeneratePairing, "ω does not pair S̃ and Δ nondegenerately");
  // ω(L s_l, s_m) = (Lᵀ Q)(l, m) = −½ Ωs(l, m), so Qᵀ L = −½ Ωsᵀ
  const Eigen::PartialPivLU<Matrix> lu(q.transpose());
  out.L = lu.solve(-0.5 * os.transpose());
  out.S = s_tilde + delta * out.L;
  return out;
}

IsotropicCorrection isotropic_correction(const LieAlgebra& a, const Covector& mu, const Matrix& s_tilde,
                                         const Matrix& delta) {
  return isotropic_correction(omega_gram(a, mu), s_tilde, delta);
}

Vector ReductionContext::vertical(const Vector& u) const {
  const auto n = mu.size();
  Vector v = Vector::Zero(2 * n);
  v.head(n) = alpha_vector(u);
  return v;
}

Matrix stabilizer_frame_action(const LieAlgebra& a, const Vector& y) {
  const int n = a.dim();
  const Matrix ad = a.ad(y);
  Matrix m = Matrix::Zero(2 * n, 2 * n);
  m.topLeftCorner(n, n) = -ad;
  m.bottomRightCorner(n, n) = ad.transpose();
  return m;
}

double stability_defect(const LieAlgebra& a, const Matrix& g_mu, const Matrix& basis) {
  double d = 0.0;
  if (basis.cols() == 0) return d;
  for (int i = 0; i < g_mu.cols(); ++i)
    d = std::max(d, linalg::containment_defect(basis, stabilizer_frame_action(a, g_mu.col(i)) * basis));
  return d;
}

ReductionContext build_context(const LieAlgebra& a, const Covector& mu, const ReductionOptions& options) {
  const int n = a.dim();
  if (mu.size() != n) throw Error(ErrorKind::DimensionMismatch, "μ has the wrong length");
  ReductionContext ctx;
  ctx.mu = mu;
  ctx.g_mu = stabilizer_algebra(a, mu);
  ctx.m = reductive_complement(a, ctx.g_mu);
  ctx.split = constraint_split(a, mu);
  const int k = ctx.k();

  Matrix delta_frame = Matrix::Zero(2 * n, k);
  delta_frame.topRows(n) = ctx.g_mu;

  if (options.s_tilde.size() == 0) {
    ctx.s_tilde = fiber_embed(linalg::null_space(ctx.m.transpose()));
  } else {
    const Matrix& st = options.s_tilde;
    if (st.rows() != 2 * n) throw Error(ErrorKind::DimensionMismatch, "S̃ columns must have 2n components");
    if (st.cols() != k || linalg::rank(st) != k)
      throw Error(ErrorKind::AssumptionTwoFailure, "S̃ must have dimension dim 𝔤_μ = " + std::to_string(k));
    if (linalg::rank(linalg::hstack(ctx.split.sum, st)) != 2 * n)
      throw Error(ErrorKind::AssumptionTwoFailure, "S̃ is not a complement of TΣ + (TΣ)^⊥");
    if (stability_defect(a, ctx.g_mu, st) > kStabilityTol * std::max(1.0, st.norm()))
      throw Error(ErrorKind::AssumptionTwoFailure, "S̃ is not stable under 𝔤_μ");
    ctx.s_tilde = st;
  }

  const Matrix omega = omega_gram(a, mu);
  const auto corr = isotropic_correction(omega, ctx.s_tilde, delta_frame);
  ctx.S = corr.S;
  ctx.L = corr.L;

  const Matrix sd_perp = omega_complement(a, mu, linalg::hstack(ctx.S, delta_frame));
  ctx.W1 = linalg::intersect(sd_perp, ctx.split.tangent);
  ctx.W2 = linalg::intersect(sd_perp, ctx.split.perp);
  if (ctx.W1.cols() != n - k || ctx.W2.cols() != n - k)
    throw Error(ErrorKind::AssumptionTwoFailure, "(S⊕Δ)^⊥ does not split along TΣ and (TΣ)^⊥");

  ctx.decomposition = linalg::hstack(linalg::hstack(delta_frame, ctx.W1), linalg::hstack(ctx.W2, ctx.S));
  if (linalg::rank(ctx.decomposition) != 2 * n)
    throw Error(ErrorKind::AssumptionTwoFailure, "Δ ⊕ W₁ ⊕ W₂ ⊕ S is not a direct sum");
  ctx.decomposition_condition = linalg::condition_number(ctx.decomposition);

  const Matrix dinv = ctx.decomposition.inverse();
  Vector keep = Vector::Zero(2 * n);
  keep.head(n).setOnes();
  ctx.P = ctx.decomposition * keep.asDiagonal() * dinv;
  ctx.alpha = dinv.topRows(k);
  return ctx;
}

ContextDefects context_defects(const LieAlgebra& a, const ReductionContext& ctx) {
  const int n = a.dim();
  const int k = ctx.k();
  const Matrix omega = omega_gram(a, ctx.mu);
  ContextDefects d;
  d.projector = linalg::max_abs(ctx.P * ctx.P - ctx.P);
  d.projector_range = linalg::subspace_distance(linalg::orth(ctx.P), ctx.split.tangent);
  d.isotropy = k ? linalg::max_abs(ctx.S.transpose() * omega * ctx.S) : 0.0;
  Matrix delta_frame = Matrix::Zero(2 * n, k);
  delta_frame.topRows(n) = ctx.g_mu;
  if (k) {
    d.alpha_normalization = linalg::max_abs(ctx.alpha * delta_frame - Matrix::Identity(k, k));
    d.radical_pairing = linalg::max_abs(delta_frame.transpose() * omega * ctx.split.tangent);
  }
  if (ctx.base_dim()) {
    if (k) d.alpha_on_w1 = linalg::max_abs(ctx.alpha * ctx.W1);
    d.w1_in_tangent = linalg::containment_defect(ctx.split.tangent, ctx.W1);
    d.w2_in_perp = linalg::containment_defect(ctx.split.perp, ctx.W2);
    d.w1_min_singular = linalg::min_singular_value(ctx.W1.transpose() * omega * ctx.W1);
  }
  return d;
}

Matrix random_stable_complement(const LieAlgebra& a, const ReductionContext& ctx, std::mt19937_64& rng,
                                 double scale) {
  const int k = ctx.k();
  const Matrix src = fiber_embed(linalg::null_space(ctx.m.transpose()));
  const Matrix& dst = ctx.split.sum;
  if (k == 0) return src;
  const auto ds = dst.cols();
  const Matrix src_pinv = src.completeOrthogonalDecomposition().pseudoInverse();

  // Φ N_Y = M_Y Φ for every Y in the 𝔤_μ basis, stacked as a Kronecker system.
  Matrix system(0, ds * k);
  for (int i = 0; i < k; ++i) {
    const Matrix act = stabilizer_frame_action(a, ctx.g_mu.col(i));
    const Matrix nmat = src_pinv * act * src;
    const Matrix mmat = dst.transpose() * act * dst;
    const Matrix block = Eigen::kroneckerProduct(nmat.transpose(), Matrix::Identity(ds, ds)).eval() -
                         Eigen::kroneckerProduct(Matrix::Identity(k, k), mmat).eval();
    Matrix grown(system.rows() + block.rows(), system.cols());
    grown << system, block;
    system = grown;
  }
  const Matrix null = linalg::null_space(system);
  if (null.cols() == 0) return src;
  std::normal_distribution<double> gauss;
  Vector c(null.cols());
  for (auto& x : c) x = gauss(rng);
  const Vector phi_vec = null * c.normalized();
  const Matrix phi = Eigen::Map<const Matrix>(phi_vec.data(), ds, k);
  return src + scale * dst * phi;
}

double correction_equivariance_defect(const LieAlgebra& a, const ReductionContext& ctx, const GroupElement& h) {
  const int n = a.dim();
  const int k = ctx.k();
  if (k == 0) return 0.0;
  const Matrix t = right_action_frame_map(a, h);
  Matrix delta_frame = Matrix::Zero(2 * n, k);
  delta_frame.topRows(n) = ctx.g_mu;
  const auto moved = isotropic_correction(omega_gram(a, ctx.mu), t * ctx.s_tilde, t * delta_frame);
  double d = linalg::subspace_distance(t * ctx.s_tilde, ctx.s_tilde);
  d = std::max(d, linalg::subspace_distance(moved.S, t * ctx.S));
  d = std::max(d, linalg::max_abs(moved.L - ctx.L));
  return d;
}

double totally_geodesic_defect(const LieAlgebra& a, const ReductionContext& ctx, const FrameConnection& conn) {
  const int n = a.dim();
  const Matrix omega = omega_gram(a, ctx.mu);
  double d = 0.0;
  // X*, Y* restrict to the constant frame fields (X, 0), (Y, 0) on Σ_μ.
  for (int i = 0; i < ctx.k(); ++i)
    for (int j = 0; j < ctx.k(); ++j) {
      Vector u = Vector::Zero(2 * n), v = Vector::Zero(2 * n);
      u.head(n) = ctx.g_mu.col(i);
      v.head(n) = ctx.g_mu.col(j);
      const Vector w = ctx.P * conn.apply(ctx.mu, u, v);
      d = std::max(d, (w.transpose() * omega * ctx.P).cwiseAbs().maxCoeff());
    }
  return d;
}

double autoparallel_defect(const LieAlgebra& a, const ReductionContext& ctx, const FrameConnection& conn) {
  const int n = a.dim();
  const Tensor3 gamma = conn.coefficients(ctx.mu);
  double d = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int c = n; c < 2 * n; ++c) d = std::max(d, std::abs(gamma(i, j, c)));
  return d;
}

}  // namespace symred
