#pragma once

#include <string>
#include <vector>

#include "symred/lie_algebra.hpp"

namespace symred::catalog {

// Basis conventions:
//   so3, su2: [e1,e2]=e3 and cyclic; su2 realized as 4×4 real matrices.
//   sl2r:     (H, E, F) with [H,E]=2E, [H,F]=-2F, [E,F]=H.
//   sl3r:     (H1, H2, E12, E13, E23, E21, E31, E32), H1=diag(1,-1,0), H2=diag(0,1,-1).
//   heis3:    (X, Y, Z) with [X,Y]=Z.
//   se2:      (J, P1, P2) with [J,P1]=P2, [J,P2]=-P1.
//   abelian(n): diagonal realization.
LieAlgebra so3();
LieAlgebra su2();
LieAlgebra sl2r();
LieAlgebra sl3r();
LieAlgebra heis3();
LieAlgebra se2();
LieAlgebra abelian(int n);

/// Accepts "so3", "su2", "sl2r", "sl3r", "heis3", "se2", "abelian(n)".
/// Throws Error(ConfigError) for unknown names.
LieAlgebra by_name(const std::string& name);

std::vector<std::string> names();

/// Structure constants computed from matrix commutators, antisymmetric by
/// construction and with roundoff snapped to the nearest multiple of 1/2.
Tensor3 structure_from_realization(const std::vector<Matrix>& basis);

}  // namespace symred::catalog
