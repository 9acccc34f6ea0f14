#pragma once

#include "symred/lie_algebra.hpp"
#include "symred/phase_space.hpp"

namespace symred {

/// Coordinates t ∈ ℝ^k on the coadjoint orbit through μ:
/// ν(t) = Coad(exp(Σ t_a E_a))μ, with E_a a basis of a complement m of 𝔤_μ.
/// The section t ↦ (exp(Σ t_a E_a), μ) lands on the level set Σ_μ.
class OrbitChart {
 public:
  /// Throws NoRealization when the algebra has no matrix realization and
  /// RankLoss when the differential at t = 0 is not injective.
  OrbitChart(const LieAlgebra& a, Covector mu, Matrix m_basis);

  int dim() const { return int(m_.cols()); }
  const Covector& mu() const { return mu_; }
  const Matrix& m_basis() const { return m_; }
  const LieAlgebra& algebra() const { return a_; }

  GroupElement group_element(const Vector& t) const;
  PhasePoint section(const Vector& t) const;
  Covector point(const Vector& t) const;

  /// Columns W_a = g⁻¹ ∂g/∂t_a, the left-trivialized velocity of the section.
  Matrix left_velocities(const Vector& t) const;

  /// n×k matrix of ∂ν/∂t_a.
  Matrix jacobian(const Vector& t) const;

  /// Jacobian at t, throwing RankLoss if its rank is below k.
  Matrix checked_jacobian(const Vector& t) const;

  /// Chart coordinates of an orbit point near ν(anchor), by Newton iteration.
  /// Throws RankLoss if the iteration fails to reach ν.
  Vector invert(const Covector& nu, const Vector& anchor) const;

  /// Orbit tangent (𝔤*-components) → chart components at t.
  Vector to_chart(const Vector& t, const Covector& v) const;

 private:
  LieAlgebra a_;
  Covector mu_;
  Matrix m_;
};

/// Projection π(g, μ) = Coad(g)μ and its differential on TΣ:
/// π_*(X, 0) = −Coad(g)(μ∘ad X).
Covector orbit_projection(const LieAlgebra& a, const PhasePoint& p);
Covector orbit_pushforward(const LieAlgebra& a, const PhasePoint& p, const Vector& x);

struct OrbitTangentFrame {
  Covector nu;
  Matrix frame;  // n×k, columns span T_ν(orbit)
};

/// Orthonormal frame of the tangent space {ν∘ad X} of the orbit through ν.
OrbitTangentFrame orbit_tangent_frame(const LieAlgebra& a, const Covector& nu);

/// Some X with ν∘ad(X) = v; throws NotTangent when the residual exceeds 1e-8.
Vector tangent_representative(const LieAlgebra& a, const Covector& nu, const Covector& v);

/// ⟨ν, [X, Y]⟩ for v = ν∘ad X, w = ν∘ad Y.
double kks_form(const LieAlgebra& a, const Covector& nu, const Covector& v, const Covector& w);

}  // namespace symred
