#pragma once

#include <functional>

#include "symred/connection.hpp"
#include "symred/phase_space.hpp"

namespace symred {

/// A vector field on G×𝔤* given by its stacked frame components at each point.
using PhaseField = std::function<Vector(const PhasePoint&)>;

PhaseField constant_field(const Vector& u);

/// D_u V at p: central difference of the components of V along the flow of u.
Vector directional_derivative(const LieAlgebra& a, const PhaseField& v, const PhasePoint& p, const Vector& u,
                              double h);

/// (∇_U V)(p) = D_{U(p)} V + Γ(ξ)(U(p), V(p)).
Vector covariant_derivative(const LieAlgebra& a, const FrameConnection& conn, const PhaseField& u,
                            const PhaseField& v, const PhasePoint& p, double h);

/// [U, V](p) = D_U V − D_V U + C(U, V) with C the frame structure functions.
Vector lie_bracket(const LieAlgebra& a, const PhaseField& u, const PhaseField& v, const PhasePoint& p, double h);

/// (∇_U ω)(V, W) = U(ω(V,W)) − ω(∇_U V, W) − ω(V, ∇_U W), every derivative by
/// central differences. Used to test tensoriality of the frame evaluator.
double field_nabla_omega(const LieAlgebra& a, const FrameConnection& conn, const PhaseField& u,
                         const PhaseField& v, const PhaseField& w, const PhasePoint& p, double h);

}  // namespace symred
