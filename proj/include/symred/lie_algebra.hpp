#pragma once

#include <string>
#include <vector>

#include "symred/linalg.hpp"
#include "symred/tensor3.hpp"

namespace symred {

/// Components in the dual basis e^i.
using Covector = Vector;

/// A finite-dimensional real Lie algebra given by structure constants, with
/// an optional faithful matrix realization used for group-level operations.
class LieAlgebra {
 public:
  /// Validates antisymmetry (exact), the Jacobi identity and, when present,
  /// that matrix commutators reproduce the structure constants.
  /// Throws Error(InvalidAlgebra) on violation.
  LieAlgebra(Tensor3 structure, std::string name = {}, std::vector<Matrix> realization = {},
             std::string group_tag = {});

  int dim() const { return dim_; }
  const Tensor3& structure() const { return c_; }
  const std::string& name() const { return name_; }
  const std::string& group_tag() const { return group_tag_; }

  bool has_realization() const { return !realization_.empty(); }
  const std::vector<Matrix>& realization() const { return realization_; }
  int rep_dim() const { return has_realization() ? int(realization_.front().rows()) : 0; }

  /// ad(X) as an n×n matrix: ad(X) Y = [X, Y].
  Matrix ad(const Vector& x) const;

  /// B(ξ)_{ij} = ⟨ξ, [e_i, e_j]⟩.
  Matrix bracket_pairing(const Covector& xi) const;

  /// Σ_i X_i R_i in the matrix realization.
  Matrix to_matrix(const Vector& x) const;
  /// Basis coordinates of a matrix lying in the span of the realization.
  Vector from_matrix(const Matrix& m) const;

  double jacobi_defect() const;
  double realization_defect() const;

 private:
  void require_realization(const char* what) const;

  int dim_ = 0;
  Tensor3 c_;
  std::string name_;
  std::string group_tag_;
  std::vector<Matrix> realization_;
  Matrix vec_basis_pinv_;
};

/// [X, Y] from the structure constants.
Vector bracket(const LieAlgebra& a, const Vector& x, const Vector& y);

/// The covector ξ∘ad(X): Y ↦ ⟨ξ, [X, Y]⟩.
Covector coad_star(const LieAlgebra& a, const Vector& x, const Covector& xi);

/// The n×n matrix M with M Y = ξ∘ad(Y).
Matrix coad_star_matrix(const LieAlgebra& a, const Covector& xi);

/// Orthonormal basis (columns) of 𝔤_μ = { Y : μ∘ad(Y) = 0 }.
Matrix stabilizer_algebra(const LieAlgebra& a, const Covector& mu);

/// Largest |[Y, Z]| coefficient outside span(basis) for Y, Z in span(basis).
double subalgebra_defect(const LieAlgebra& a, const Matrix& basis);

/// An ad(𝔤_μ)-stable complement m with 𝔤 = 𝔤_μ ⊕ m, returned as an
/// orthonormal basis. The Euclidean-orthogonal complement is preferred when
/// it is stable; otherwise m is the kernel of the minimum-norm equivariant
/// projection onto 𝔤_μ. Throws NonReductiveStabilizer if no such projection
/// exists and NotSubalgebra if g_mu is not closed under the bracket.
Matrix reductive_complement(const LieAlgebra& a, const Matrix& g_mu);

/// Largest violation of [g_mu, m] ⊆ m.
double complement_stability_defect(const LieAlgebra& a, const Matrix& g_mu, const Matrix& m);

struct GroupElement {
  Matrix mat;
  std::string group;
};

GroupElement identity(const LieAlgebra& a);
GroupElement exp(const LieAlgebra& a, const Vector& x);
GroupElement inverse(const GroupElement& g);
GroupElement operator*(const GroupElement& g, const GroupElement& h);

/// Ad(g) on basis coordinates: Ad(g) X = g X g⁻¹.
Matrix Ad(const LieAlgebra& a, const GroupElement& g);

/// Coad(g) := Ad(g⁻¹)ᵀ on dual components, so ⟨Coad(g)ξ, X⟩ = ⟨ξ, Ad(g⁻¹)X⟩.
Matrix Coad(const LieAlgebra& a, const GroupElement& g);

/// Violation of the defining constraints of the tagged group (determinant,
/// orthogonality, unipotence); zero for untagged elements.
double group_defect(const GroupElement& g);

}  // namespace symred
