#pragma once

#include <optional>
#include <random>

#include "symred/connection.hpp"
#include "symred/lie_algebra.hpp"
#include "symred/phase_space.hpp"

namespace symred {

struct IsotropicCorrection {
  Matrix S;  // columns s_l + L s_l
  Matrix L;  // L s_l = Σ_j L(j, l) d_j
};

/// Replaces a complement S̃ of the radical Δ by the graph of L: S̃ → Δ with
/// ω(Lu, v) = −½ ω(u, v) on S̃×S̃, which makes the result isotropic while
/// keeping S ⊕ Δ = S̃ ⊕ Δ. Δ must be isotropic. Throws DegeneratePairing when
/// ω does not pair S̃ and Δ nondegenerately.
IsotropicCorrection isotropic_correction(const Matrix& omega, const Matrix& s_tilde, const Matrix& delta);
IsotropicCorrection isotropic_correction(const LieAlgebra& a, const Covector& mu, const Matrix& s_tilde,
                                         const Matrix& delta);

struct ReductionOptions {
  /// Columns in stacked (X, η) components; empty selects {(0, λ): λ ∈ ann(m)}.
  Matrix s_tilde;
};

/// Splitting data on Σ_μ in the left frame. All subspaces are constant along
/// Σ_μ because the frame is left-invariant and they are Ad(G_μ)-stable.
struct ReductionContext {
  Covector mu;
  Matrix g_mu;  // n×k
  Matrix m;     // n×(n−k)
  ConstraintSplit split;
  Matrix s_tilde;
  Matrix S;
  Matrix L;
  Matrix W1;
  Matrix W2;
  Matrix P;      // projector onto TΣ along W2 ⊕ S
  Matrix alpha;  // k×2n: 𝔤_μ-coordinates of the Δ-component, zero on W1 ⊕ W2 ⊕ S
  Matrix decomposition;  // [Δ | W1 | W2 | S]
  double decomposition_condition = 0.0;

  int k() const { return int(g_mu.cols()); }
  int base_dim() const { return int(W1.cols()); }
  /// α(u) as an element of 𝔤.
  Vector alpha_vector(const Vector& u) const { return g_mu * (alpha * u); }
  /// Frame components of the vertical vector α(u)* = (α(u), 0) on Σ_μ.
  Vector vertical(const Vector& u) const;
};

/// Throws NonReductiveStabilizer, or AssumptionTwoFailure for a supplied S̃
/// that is not a 𝔤_μ-stable complement of TΣ + (TΣ)^⊥.
ReductionContext build_context(const LieAlgebra& a, const Covector& mu, const ReductionOptions& options = {});

/// Largest violation of the ReductionContext invariants (projector,
/// isotropy, α normalization, W₁/W₂ placement).
struct ContextDefects {
  double projector = 0.0;
  double projector_range = 0.0;
  double isotropy = 0.0;
  double alpha_normalization = 0.0;
  double alpha_on_w1 = 0.0;
  double w1_in_tangent = 0.0;
  double w2_in_perp = 0.0;
  double radical_pairing = 0.0;
  double w1_min_singular = 0.0;  // σ_min of ω restricted to W₁
};
ContextDefects context_defects(const LieAlgebra& a, const ReductionContext& ctx);

/// 𝔤_μ acts on frame components through blockdiag(−ad Y, (ad Y)ᵀ).
Matrix stabilizer_frame_action(const LieAlgebra& a, const Vector& y);

/// Largest violation of [𝔤_μ]-stability of span(basis).
double stability_defect(const LieAlgebra& a, const Matrix& g_mu, const Matrix& basis);

/// A random 𝔤_μ-stable complement: the graph of a random equivariant map
/// ann(m) → 𝔤 ⊕ ann(𝔤_μ), scaled by `scale`.
Matrix random_stable_complement(const LieAlgebra& a, const ReductionContext& ctx, std::mt19937_64& rng,
                                double scale = 0.5);

/// For h ∈ G_μ: distance between S and its transport by the right action,
/// and the change of L under conjugation.
double correction_equivariance_defect(const LieAlgebra& a, const ReductionContext& ctx, const GroupElement& h);

/// sup |ω(P∇_{X*}Y*, PZ)| over X, Y in the 𝔤_μ basis and frame vectors Z.
double totally_geodesic_defect(const LieAlgebra& a, const ReductionContext& ctx, const FrameConnection& conn);

/// Largest fiber component of ∇_{E_i}E_j over group-direction frame pairs:
/// zero iff Σ_μ is autoparallel.
double autoparallel_defect(const LieAlgebra& a, const ReductionContext& ctx, const FrameConnection& conn);

}  // namespace symred
