#pragma once

#include <span>
#include <vector>

#include "symred/lie_algebra.hpp"

namespace symred {

/// A point (g, ξ) of G×𝔤*.
struct PhasePoint {
  GroupElement g;
  Covector xi;
};

/// Left-trivialized tangent vector L_{g*}X + η, stored as the pair (X, η).
/// Frame-component vectors of length 2n stack X over η.
struct TrivTangent {
  Vector x;
  Covector eta;

  Vector stacked() const;
  static TrivTangent from_stacked(const Vector& u);
};

/// ω((X,η),(X',η')) = ⟨η,X'⟩ − ⟨η',X⟩ − ⟨ξ,[X,X']⟩.
double symplectic_form(const LieAlgebra& a, const Covector& xi, const TrivTangent& u, const TrivTangent& v);

/// Gram matrix Ω(ξ) in the frame, ω(u, v) = uᵀ Ω v on stacked components.
Matrix omega_gram(const LieAlgebra& a, const Covector& xi);

/// θ(L_{g*}X + η) = ⟨ξ, X⟩.
double liouville_form(const Covector& xi, const TrivTangent& u);

enum class Side { Left, Right };

/// Infinitesimal generator of the left or right action, read in the left frame:
/// X^l(g,ξ) = (−Ad(g⁻¹)X, 0) and X^r(g,ξ) = (X, ξ∘ad(X)).
TrivTangent fundamental_field(const LieAlgebra& a, Side side, const Vector& x, const PhasePoint& p);

/// J^l(g,ξ) = Coad(g)ξ, J^r(g,ξ) = ξ.
Covector momentum_map(const LieAlgebra& a, Side side, const PhasePoint& p);

/// Point reached after time s along the flow of the constant-component
/// field u: (g·exp(sX), ξ + sη). Requires a realization when X ≠ 0.
PhasePoint flow(const LieAlgebra& a, const PhasePoint& p, const Vector& u, double s);

/// Subspaces of 𝔤⊕𝔤* attached to Σ_μ = {(g, μ)}, as orthonormal column bases.
struct ConstraintSplit {
  Matrix tangent;  // TΣ
  Matrix perp;     // (TΣ)^⊥
  Matrix radical;  // Δ = TΣ ∩ (TΣ)^⊥
  Matrix sum;      // TΣ + (TΣ)^⊥
};

ConstraintSplit constraint_split(const LieAlgebra& a, const Covector& mu);

/// ω-orthogonal complement of span(basis) at ξ.
Matrix omega_complement(const LieAlgebra& a, const Covector& xi, const Matrix& basis);

struct RegularityReport {
  std::vector<double> momentum_min_singular;   // σ_min(J^r_*) per sample
  std::vector<double> generator_min_singular;  // σ_min(X ↦ X^r) per sample
  bool regular = false;
};

/// Checks that the right momentum map is a submersion at each sample on Σ_μ
/// (and hence the action is locally free there). The differential is taken
/// by central differences along the frame flows. Throws PointOffConstraint.
RegularityReport regularity_report(const LieAlgebra& a, const Covector& mu, std::span<const PhasePoint> samples,
                                   double step = 1e-6);

/// Cyclic sum 𝔖[u ω(v,w) − ω([u,v],w)] for the constant-component fields
/// u, v, w at ξ; vanishes because ω is closed.
double omega_closedness_defect(const LieAlgebra& a, const Covector& xi, const TrivTangent& u,
                               const TrivTangent& v, const TrivTangent& w);

}  // namespace symred
