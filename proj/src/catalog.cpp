#include "symred/catalog.hpp"

#include <cmath>
#include <complex>
#include <regex>

#include "symred/errors.hpp"

namespace symred::catalog {

namespace {

Matrix unit(int r, int i, int j) {
  Matrix m = Matrix::Zero(r, r);
  m(i, j) = 1.0;
  return m;
}

LieAlgebra from_basis(std::vector<Matrix> basis, std::string name, std::string tag) {
  Tensor3 c = structure_from_realization(basis);
  return LieAlgebra(std::move(c), std::move(name), std::move(basis), std::move(tag));
}

}  // namespace

Tensor3 structure_from_realization(const std::vector<Matrix>& basis) {
  const int n = int(basis.size());
  const auto r = basis.front().rows();
  Matrix vb(r * r, n);
  for (int i = 0; i < n; ++i) vb.col(i) = Eigen::Map<const Vector>(basis[i].data(), r * r);
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(vb);
  Tensor3 c(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Matrix comm = basis[i] * basis[j] - basis[j] * basis[i];
      const Vector coeff = cod.solve(Eigen::Map<const Vector>(comm.data(), r * r));
      for (int k = 0; k < n; ++k) {
        double v = coeff(k);
        const double snapped = std::round(2.0 * v) / 2.0;
        if (std::abs(v - snapped) < 1e-12) v = snapped;
        c(i, j, k) = v;
        c(j, i, k) = -v;
      }
    }
  return c;
}

LieAlgebra so3() {
  std::vector<Matrix> b;
  for (int i = 0; i < 3; ++i) {
    Matrix l = Matrix::Zero(3, 3);
    // (L_i)_{jk} = -ε_{ijk}
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    l(j, k) = -1.0;
    l(k, j) = 1.0;
    b.push_back(l);
  }
  return from_basis(std::move(b), "so3", "so3");
}

LieAlgebra su2() {
  // e_k = -(i/2) σ_k realified with a + ib ↦ [[a, -b], [b, a]].
  using C = std::complex<double>;
  const C i1(0.0, 1.0);
  Eigen::Matrix2cd s1, s2, s3;
  s1 << 0, 1, 1, 0;
  s2 << 0, -i1, i1, 0;
  s3 << 1, 0, 0, -1;
  std::vector<Matrix> b;
  for (const auto& s : {s1, s2, s3}) {
    const Eigen::Matrix2cd e = -0.5 * i1 * s;
    Matrix r(4, 4);
    r.topLeftCorner(2, 2) = e.real();
    r.topRightCorner(2, 2) = -e.imag();
    r.bottomLeftCorner(2, 2) = e.imag();
    r.bottomRightCorner(2, 2) = e.real();
    b.push_back(r);
  }
  return from_basis(std::move(b), "su2", "su2");
}

LieAlgebra sl2r() {
  Matrix h = Matrix::Zero(2, 2);
  h(0, 0) = 1.0;
  h(1, 1) = -1.0;
  return from_basis({h, unit(2, 0, 1), unit(2, 1, 0)}, "sl2r", "sl2r");
}

LieAlgebra sl3r() {
  Matrix h1 = Matrix::Zero(3, 3), h2 = Matrix::Zero(3, 3);
  h1(0, 0) = 1.0;
  h1(1, 1) = -1.0;
  h2(1, 1) = 1.0;
  h2(2, 2) = -1.0;
  return from_basis({h1, h2, unit(3, 0, 1), unit(3, 0, 2), unit(3, 1, 2), unit(3, 1, 0), unit(3, 2, 0),
                     unit(3, 2, 1)},
                    "sl3r", "sl3r");
}

LieAlgebra heis3() { return from_basis({unit(3, 0, 1), unit(3, 1, 2), unit(3, 0, 2)}, "heis3", "heis3"); }

LieAlgebra se2() {
  Matrix j = Matrix::Zero(3, 3);
  j(0, 1) = -1.0;
  j(1, 0) = 1.0;
  return from_basis({j, unit(3, 0, 2), unit(3, 1, 2)}, "se2", "se2");
}

LieAlgebra abelian(int n) {
  if (n <= 0) throw Error(ErrorKind::ConfigError, "abelian(n) requires n > 0");
  std::vector<Matrix> b;
  for (int i = 0; i < n; ++i) b.push_back(unit(n, i, i));
  return LieAlgebra(Tensor3(n), "abelian(" + std::to_string(n) + ")", std::move(b), "abelian");
}

LieAlgebra by_name(const std::string& name) {
  if (name == "so3") return so3();
  if (name == "su2") return su2();
  if (name == "sl2r") return sl2r();
  if (name == "sl3r") return sl3r();
  if (name == "heis3") return heis3();
  if (name == "se2") return se2();
  static const std::regex abelian_re(R"(abelian\((\d+)\))");
  std::smatch m;
  if (std::regex_match(name, m, abelian_re)) return abelian(std::stoi(m[1].str()));
  throw Error(ErrorKind::ConfigError, "unknown group '" + name + "'");
}

std::vector<std::string> names() { return {"so3", "su2", "sl2r", "sl3r", "heis3", "se2", "abelian(n)"}; }

}  // namespace symred::catalog
