#pragma once

#include <functional>
#include <string>
#include <vector>

#include "symred/lie_algebra.hpp"
#include "symred/phase_space.hpp"
#include "symred/tensor3.hpp"

namespace symred {

/// A linear connection on G×𝔤* expressed over the frame
/// {Ẽ_1..Ẽ_n (left-invariant group directions), Ê_1..Ê_n (constant fiber directions)}:
/// ∇_{E_a} E_b = Σ_c Γ(ξ)[a][b][c] E_c. Coefficients depend on ξ only, so every
/// FrameConnection is invariant under left translations.
class FrameConnection {
 public:
  using CoefficientMap = std::function<Tensor3(const Covector&)>;

  FrameConnection(int algebra_dim, CoefficientMap coeff, std::string label = {});

  int algebra_dim() const { return n_; }
  int frame_dim() const { return 2 * n_; }
  const std::string& label() const { return label_; }

  Tensor3 coefficients(const Covector& xi) const;

  /// ∇_u v for constant-component u, v at ξ (the Γ term alone).
  Vector apply(const Covector& xi, const Vector& u, const Vector& v) const;

  // Set only by validated(); never assumed.
  bool is_torsion_free = false;
  bool is_symplectic = false;

 private:
  int n_;
  CoefficientMap coeff_;
  std::string label_;
};

/// Frame structure functions: [Ẽ_i, Ẽ_j] = c_ij^k Ẽ_k, all brackets with Ê vanish.
Tensor3 frame_brackets(const LieAlgebra& a);

/// ∇°_{X̃+η}(X̃'+η') = ½[X,X']~, constant in ξ.
FrameConnection baseline_connection(const LieAlgebra& a);

/// N[a][b][c] = (∇_{E_a} ω)(E_b, E_c) at ξ.
Tensor3 nabla_omega_tensor(const LieAlgebra& a, const FrameConnection& conn, const Covector& xi);

/// (∇_u ω)(v, w) at ξ for tangent vectors u, v, w.
double nabla_omega(const LieAlgebra& a, const FrameConnection& conn, const Covector& xi, const TrivTangent& u,
                   const TrivTangent& v, const TrivTangent& w);

/// Closed-form (∇°_{X+η} ω)(Y+ζ, Y'+ζ') =
///   −⟨η,[Y,Y']⟩ + ½⟨ζ',[X,Y]⟩ − ½⟨ζ,[X,Y']⟩ + ½⟨ξ,[X,[Y,Y']]⟩.
double baseline_nabla_omega_closed_form(const LieAlgebra& a, const Covector& xi, const TrivTangent& u,
                                        const TrivTangent& v, const TrivTangent& w);

/// The torsion-free correction A with ω(A(U)V, W) = ⅓[(∇_Uω)(V,W) + (∇_Vω)(U,W)].
/// Throws SingularOmega when Ω(ξ) is numerically singular.
Tensor3 symplectic_correction(const LieAlgebra& a, const FrameConnection& conn, const Covector& xi);

/// ∇ + A: the projection of a torsion-free connection onto symplectic connections.
FrameConnection symplectize(const FrameConnection& conn, const LieAlgebra& a);

/// T(u, v) = ∇_u v − ∇_v u − [u, v] in the frame.
TrivTangent torsion(const LieAlgebra& a, const FrameConnection& conn, const Covector& xi, const TrivTangent& u,
                    const TrivTangent& v);

double torsion_defect(const LieAlgebra& a, const FrameConnection& conn, const Covector& xi);
double nabla_omega_defect(const LieAlgebra& a, const FrameConnection& conn, const Covector& xi);

/// Copy with is_torsion_free / is_symplectic set from measured defects
/// (≤ 1e-10) at every sample ξ.
FrameConnection validated(const FrameConnection& conn, const LieAlgebra& a, const std::vector<Covector>& samples);

/// Tangent map of the right action R(h): (g,ξ) ↦ (gh, Coad(h⁻¹)ξ) in the frame:
/// blockdiag(Ad(h⁻¹), Coad(h⁻¹)).
Matrix right_action_frame_map(const LieAlgebra& a, const GroupElement& h);

/// Pullback R(h)*∇ under the right action.
FrameConnection pullback(const LieAlgebra& a, const FrameConnection& conn, const GroupElement& h);

/// Discretized normalized Haar measure.
struct QuadratureRule {
  std::vector<GroupElement> nodes;
  std::vector<double> weights;

  /// Equal-weight cyclic subgroup {exp(2πj/N · X)}, j = 0..N−1. X must
  /// generate a circle of period 2π.
  static QuadratureRule cyclic(const LieAlgebra& a, const Vector& generator, int order);

  /// Tensor-product Gauss–Legendre rule on the torus exp(Σ θ_i X_i),
  /// θ_i ∈ [0, period_i), with commuting generators.
  static QuadratureRule torus_gauss_legendre(const LieAlgebra& a, const std::vector<Vector>& generators,
                                             const std::vector<double>& periods, int points_per_axis);

  double weight_defect() const;
};

/// ∇ = Σ_k w_k R(g_k)*∇.
FrameConnection average_connection(const LieAlgebra& a, const FrameConnection& conn, const QuadratureRule& q);

/// Largest coefficient change under pullback by each node, over sample ξ.
double node_invariance_defect(const LieAlgebra& a, const FrameConnection& conn, const QuadratureRule& q,
                              const std::vector<Covector>& samples);

}  // namespace symred
