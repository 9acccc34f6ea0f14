#pragma once

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "symred/connection.hpp"
#include "symred/fields.hpp"
#include "symred/orbit.hpp"
#include "symred/reduction.hpp"

namespace symred {

/// A vector field on the orbit chart, as chart components at t.
using ChartField = std::function<Vector(const Vector& t)>;

ChartField coordinate_field(int k, int index);
ChartField constant_chart_field(const Vector& c);

inline constexpr double kDefaultFdStep = 1e-5;
inline constexpr double kDefaultFdStep2 = 1e-4;

/// The reduced connection ∇ʳ and form ωʳ on the coadjoint orbit through μ,
/// computed through horizontal lifts to Σ_μ:
///   (∇ʳ_X Y)‾ = ∇_X̄ Ȳ − α(∇_X̄ Ȳ)*,   ∇_U V = P(∇°_U V),
///   ωʳ(v, w) = ω(v̄, w̄).
/// Evaluation is pure; nothing is cached between calls.
class ReducedModel {
 public:
  /// Throws ZeroDimensionalBase when the orbit is a point.
  ReducedModel(const LieAlgebra& a, ReductionContext ctx, FrameConnection conn);

  const LieAlgebra& algebra() const { return chart_.algebra(); }
  const ReductionContext& context() const { return ctx_; }
  const FrameConnection& connection() const { return conn_; }
  const OrbitChart& chart() const { return chart_; }
  int dim() const { return chart_.dim(); }

  /// Section point over chart coordinate t, optionally moved along its fiber
  /// by the right action of h ∈ G_μ.
  PhasePoint point(const Vector& t, const GroupElement* fiber = nullptr) const;

  Vector chart_coords(const PhasePoint& p, const Vector& anchor) const;

  /// The unique vector of W₁ at p pushed by π_* to the orbit tangent v.
  /// Throws SingularProjection if π_*|W₁ is not invertible or v is not reached.
  Vector lift(const PhasePoint& p, const Covector& v) const;

  /// Horizontal lift of a chart field, locating points through chart
  /// inversion started at `anchor`.
  PhaseField lift_field(const ChartField& x, const Vector& anchor) const;

  /// Chart components at t of π_*(u) for u ∈ T_pΣ.
  Vector push_down(const PhasePoint& p, const Vector& u, const Vector& t) const;

  /// ∇_U V = P(D_U V + Γ(U, V)) on Σ_μ. Throws PointOffConstraint.
  Vector sigma_covderiv(const PhaseField& u, const PhaseField& v, const PhasePoint& p, double h) const;
  PhaseField sigma_covderiv_field(PhaseField u, PhaseField v, double h) const;
  /// [U, V] for fields tangent to Σ_μ.
  Vector sigma_bracket(const PhaseField& u, const PhaseField& v, const PhasePoint& p, double h) const;
  PhaseField sigma_bracket_field(PhaseField u, PhaseField v, double h) const;
  /// p ↦ α(V(p))*.
  PhaseField vertical_field(PhaseField v) const;

  /// Chart components of ∇ʳ_X Y at t, evaluated through the fiber point
  /// selected by `fiber`.
  Vector covderiv(const ChartField& x, const ChartField& y, const Vector& t, double h = kDefaultFdStep,
                  const GroupElement* fiber = nullptr) const;

  double form(const Vector& t, const Vector& v, const Vector& w, const GroupElement* fiber = nullptr) const;
  Matrix form_matrix(const Vector& t) const;

  /// Γʳ(a, b, c): ∂_c-component of ∇ʳ_{∂a} ∂_b.
  Tensor3 christoffel(const Vector& t, double h = kDefaultFdStep) const;

 private:
  Vector tangent_part(const Vector& u) const;

  ReductionContext ctx_;
  FrameConnection conn_;
  OrbitChart chart_;
  Matrix omega_;
};

/// Torsion Γʳ(a,b,·) − Γʳ(b,a,·) of the reduced connection at t.
double reduced_torsion_defect(const ReducedModel& model, const Vector& t, double h = kDefaultFdStep);

/// max |∂_a ω_bc − ω(∇_a ∂_b, ∂_c) − ω(∂_b, ∇_a ∂_c)| at t; derivatives by
/// central differences with step h.
double reduced_nabla_form_defect(const ReducedModel& model, const Vector& t, double h = kDefaultFdStep);

/// max |∂_a ω_bc + ∂_b ω_ca + ∂_c ω_ab| at t.
double reduced_closedness_defect(const ReducedModel& model, const Vector& t, double h = kDefaultFdStep);

struct KksComparison {
  double sigma = 0.0;           // +1 or −1, fitted at the first point
  double max_relative_error = 0.0;
  bool sign_consistent = true;
};

/// Compares ωʳ with the KKS form on all pairs of coordinate directions.
KksComparison compare_with_kks(const ReducedModel& model, const std::vector<Vector>& points);

/// max over samples of the change in ∇ʳ on coordinate fields when the
/// evaluation moves to another point of the same fiber.
double fiber_independence_defect(const ReducedModel& model, const std::vector<Vector>& points,
                                 const std::vector<GroupElement>& fiber_elements, double h = kDefaultFdStep);

struct AutoparallelReport {
  double defect = 0.0;
  std::optional<double> independence;  // present only when Σ_μ is autoparallel
};

/// Autoparallel test, followed (when it passes) by a comparison of ∇ʳ against
/// a second reduction built from a random 𝔤_μ-stable complement S̃.
AutoparallelReport autoparallel_check(const LieAlgebra& a, const ReductionContext& ctx,
                                      const FrameConnection& conn, std::mt19937_64& rng,
                                      const std::vector<Vector>& points, double h = kDefaultFdStep);

}  // namespace symred
