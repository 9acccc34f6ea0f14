#include "symred/lie_algebra.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

#include "symred/errors.hpp"

namespace symred {

namespace {

void require_size(const Vector& v, int n, const char* what) {
  if (v.size() != n)
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": expected length " + std::to_string(n) + ", got " +
                    std::to_string(v.size()));
}

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

}  // namespace

LieAlgebra::LieAlgebra(Tensor3 structure, std::string name, std::vector<Matrix> realization,
                       std::string group_tag)
    : dim_(structure.dim0()),
      c_(std::move(structure)),
      name_(std::move(name)),
      group_tag_(std::move(group_tag)),
      realization_(std::move(realization)) {
  if (dim_ <= 0 || c_.dim1() != dim_ || c_.dim2() != dim_)
    throw Error(ErrorKind::InvalidAlgebra, "structure constants must be an n×n×n array with n > 0");

  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        if (c_(i, j, k) != -c_(j, i, k))
          throw Error(ErrorKind::InvalidAlgebra, "structure constants are not antisymmetric");

  const double scale = std::max(1.0, c_.max_abs() * c_.max_abs());
  if (jacobi_defect() > 1e-12 * scale)
    throw Error(ErrorKind::InvalidAlgebra, "Jacobi identity violated");

  if (!realization_.empty()) {
    if (int(realization_.size()) != dim_)
      throw Error(ErrorKind::InvalidAlgebra, "realization must provide one matrix per basis element");
    const auto r = realization_.front().rows();
    Matrix vb(r * r, dim_);
    for (int i = 0; i < dim_; ++i) {
      if (realization_[i].rows() != r || realization_[i].cols() != r)
        throw Error(ErrorKind::InvalidAlgebra, "realization matrices must be square and equal-sized");
      vb.col(i) = vec(realization_[i]);
    }
    if (linalg::rank(vb) != dim_)
      throw Error(ErrorKind::InvalidAlgebra, "realization matrices are linearly dependent");
    vec_basis_pinv_ = vb.completeOrthogonalDecomposition().pseudoInverse();
    if (realization_defect() > 1e-12 * scale)
      throw Error(ErrorKind::InvalidAlgebra, "matrix commutators do not reproduce the structure constants");
  }
}

Matrix LieAlgebra::ad(const Vector& x) const {
  require_size(x, dim_, "ad");
  return c_.contract_first(x);
}

Matrix LieAlgebra::bracket_pairing(const Covector& xi) const {
  require_size(xi, dim_, "bracket_pairing");
  Matrix b = Matrix::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) b(i, j) += c_(i, j, k) * xi(k);
  return b;
}

void LieAlgebra::require_realization(const char* what) const {
  if (!has_realization())
    throw Error(ErrorKind::NoRealization,
                std::string(what) + " requires a matrix realization of '" + name_ + "'");
}

Matrix LieAlgebra::to_matrix(const Vector& x) const {
  require_realization("to_matrix");
  require_size(x, dim_, "to_matrix");
  Matrix m = Matrix::Zero(rep_dim(), rep_dim());
  for (int i = 0; i < dim_; ++i) m += x(i) * realization_[i];
  return m;
}

Vector LieAlgebra::from_matrix(const Matrix& m) const {
  require_realization("from_matrix");
  return vec_basis_pinv_ * vec(m);
}

double LieAlgebra::jacobi_defect() const {
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        for (int m = 0; m < dim_; ++m) {
          // [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j], e_m-component
          double s = 0.0;
          for (int l = 0; l < dim_; ++l)
            s += c_(i, j, l) * c_(l, k, m) + c_(j, k, l) * c_(l, i, m) + c_(k, i, l) * c_(l, j, m);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

double LieAlgebra::realization_defect() const {
  if (!has_realization()) return 0.0;
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      Matrix comm = realization_[i] * realization_[j] - realization_[j] * realization_[i];
      for (int k = 0; k < dim_; ++k) comm -= c_(i, j, k) * realization_[k];
      worst = std::max(worst, linalg::max_abs(comm));
    }
  return worst;
}

Vector bracket(const LieAlgebra& a, const Vector& x, const Vector& y) {
  require_size(x, a.dim(), "bracket");
  require_size(y, a.dim(), "bracket");
  return a.structure().contract(x, y);
}

Covector coad_star(const LieAlgebra& a, const Vector& x, const Covector& xi) {
  require_size(x, a.dim(), "coad_star");
  require_size(xi, a.dim(), "coad_star");
  // ⟨ξ, [X, e_j]⟩ = Σ_ik X_i c[i][j][k] ξ_k
  return a.ad(x).transpose() * xi;
}

Matrix coad_star_matrix(const LieAlgebra& a, const Covector& xi) {
  // column i is ξ∘ad(e_i), i.e. row j holds ⟨ξ, [e_i, e_j]⟩ = B(ξ)_{ij}
  return a.bracket_pairing(xi).transpose();
}

Matrix stabilizer_algebra(const LieAlgebra& a, const Covector& mu) {
  return linalg::null_space(coad_star_matrix(a, mu));
}

double subalgebra_defect(const LieAlgebra& a, const Matrix& basis) {
  if (basis.cols() == 0) return 0.0;
  Matrix brackets(a.dim(), basis.cols() * basis.cols());
  for (Eigen::Index i = 0; i < basis.cols(); ++i)
    for (Eigen::Index j = 0; j < basis.cols(); ++j)
      brackets.col(i * basis.cols() + j) = bracket(a, basis.col(i), basis.col(j));
  return linalg::containment_defect(basis, brackets);
}

double complement_stability_defect(const LieAlgebra& a, const Matrix& g_mu, const Matrix& m) {
  if (g_mu.cols() == 0 || m.cols() == 0) return 0.0;
  Matrix images(a.dim(), g_mu.cols() * m.cols());
  for (Eigen::Index i = 0; i < g_mu.cols(); ++i)
    images.middleCols(i * m.cols(), m.cols()) = a.ad(g_mu.col(i)) * m;
  return linalg::containment_defect(m, images);
}

Matrix reductive_complement(const LieAlgebra& a, const Matrix& g_mu) {
  const int n = a.dim();
  const int k = int(g_mu.cols());
  if (g_mu.rows() != n) throw Error(ErrorKind::DimensionMismatch, "reductive_complement: basis rows != dim");
  const double tol = 1e-10;
  if (subalgebra_defect(a, g_mu) > tol)
    throw Error(ErrorKind::NotSubalgebra, "reductive_complement: basis does not span a subalgebra");
  if (k == 0) return Matrix::Identity(n, n);
  if (k == n) return Matrix(n, 0);

  const Matrix q = linalg::orth(g_mu);
  Matrix m = linalg::null_space(q.transpose());
  if (complement_stability_defect(a, q, m) <= tol) return m;

  // Solve for Φ (k×n) with Φ q = I and Φ ad(Y) = ρ(Y) Φ for Y in the basis,
  // where ad(Y) q = q ρ(Y). Column-major vec: vec(Φ A) = (Aᵀ ⊗ I_k) vec Φ.
  const Matrix ik = Matrix::Identity(k, k);
  const Matrix in = Matrix::Identity(n, n);
  const Eigen::Index rows = Eigen::Index(k) * k + Eigen::Index(k) * k * n;
  Matrix sys = Matrix::Zero(rows, Eigen::Index(k) * n);
  Vector rhs = Vector::Zero(rows);
  sys.topRows(k * k) = Eigen::kroneckerProduct(q.transpose(), ik);
  rhs.head(k * k) = vec(ik);
  for (int y = 0; y < k; ++y) {
    const Matrix ady = a.ad(q.col(y));
    const Matrix rho = q.transpose() * ady * q;
    sys.middleRows(k * k + Eigen::Index(y) * k * n, Eigen::Index(k) * n) =
        Eigen::kroneckerProduct(ady.transpose(), ik) - Eigen::kroneckerProduct(in, rho);
  }
  const Vector phi_vec = linalg::lstsq(sys, rhs);
  const double residual = linalg::max_abs(sys * phi_vec - rhs);
  if (residual > tol)
    throw Error(ErrorKind::NonReductiveStabilizer,
                "no ad(g_mu)-equivariant projection exists (residual " + std::to_string(residual) + ")");
  const Matrix phi = Eigen::Map<const Matrix>(phi_vec.data(), k, n);
  m = linalg::null_space(phi);
  if (m.cols() != n - k || complement_stability_defect(a, q, m) > tol)
    throw Error(ErrorKind::NonReductiveStabilizer, "equivariant projection kernel is not a stable complement");
  return m;
}

GroupElement identity(const LieAlgebra& a) {
  if (!a.has_realization())
    throw Error(ErrorKind::NoRealization, "identity requires a matrix realization of '" + a.name() + "'");
  return {Matrix::Identity(a.rep_dim(), a.rep_dim()), a.group_tag()};
}

GroupElement exp(const LieAlgebra& a, const Vector& x) {
  const Matrix m = a.to_matrix(x);
  return {m.exp(), a.group_tag()};
}

GroupElement inverse(const GroupElement& g) { return {g.mat.inverse(), g.group}; }

GroupElement operator*(const GroupElement& g, const GroupElement& h) { return {g.mat * h.mat, g.group}; }

Matrix Ad(const LieAlgebra& a, const GroupElement& g) {
  if (!a.has_realization())
    throw Error(ErrorKind::NoRealization, "Ad requires a matrix realization of '" + a.name() + "'");
  const Matrix ginv = g.mat.inverse();
  Matrix out(a.dim(), a.dim());
  for (int i = 0; i < a.dim(); ++i) out.col(i) = a.from_matrix(g.mat * a.realization()[i] * ginv);
  return out;
}

Matrix Coad(const LieAlgebra& a, const GroupElement& g) { return Ad(a, inverse(g)).transpose(); }

double group_defect(const GroupElement& g) {
  const Matrix& m = g.mat;
  const auto r = m.rows();
  const Matrix id = Matrix::Identity(r, r);
  const double det_defect = std::abs(m.determinant() - 1.0);
  if (g.group == "so3" || g.group == "su2")
    return std::max(det_defect, linalg::max_abs(m.transpose() * m - id));
  if (g.group == "sl2r" || g.group == "sl3r") return det_defect;
  if (g.group == "heis3") {
    double d = 0.0;
    for (Eigen::Index i = 0; i < r; ++i) {
      d = std::max(d, std::abs(m(i, i) - 1.0));
      for (Eigen::Index j = 0; j < i; ++j) d = std::max(d, std::abs(m(i, j)));
    }
    return d;
  }
  if (g.group == "se2") {
    const Matrix rot = m.topLeftCorner(2, 2);
    double d = linalg::max_abs(rot.transpose() * rot - Matrix::Identity(2, 2));
    d = std::max(d, std::abs(rot.determinant() - 1.0));
    d = std::max(d, std::abs(m(2, 0)) + std::abs(m(2, 1)) + std::abs(m(2, 2) - 1.0));
    return d;
  }
  return 0.0;
}

}  // namespace symred
