#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "symred/linalg.hpp"

namespace symred {

/// Dense rank-3 array indexed (a, b, c), stored row-major in c.
///
/// Used for structure constants c[i][j][k] (e_k-coefficient of [e_i, e_j])
/// and for frame connection coefficients Γ[a][b][c] (E_c-coefficient of
/// ∇_{E_a} E_b).
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(int d0, int d1, int d2) : d0_(d0), d1_(d1), d2_(d2), data_(std::size_t(d0) * d1 * d2, 0.0) {}
  explicit Tensor3(int d) : Tensor3(d, d, d) {}

  int dim0() const { return d0_; }
  int dim1() const { return d1_; }
  int dim2() const { return d2_; }

  double& operator()(int a, int b, int c) { return data_[index(a, b, c)]; }
  double operator()(int a, int b, int c) const { return data_[index(a, b, c)]; }

  /// out_c = Σ_ab u_a v_b T(a, b, c)
  Vector contract(const Vector& u, const Vector& v) const {
    Vector out = Vector::Zero(d2_);
    for (int a = 0; a < d0_; ++a) {
      if (u(a) == 0.0) continue;
      for (int b = 0; b < d1_; ++b) {
        const double w = u(a) * v(b);
        if (w == 0.0) continue;
        const double* row = &data_[index(a, b, 0)];
        for (int c = 0; c < d2_; ++c) out(c) += w * row[c];
      }
    }
    return out;
  }

  /// Matrix M(c, b) = Σ_a u_a T(a, b, c); i.e. the linear map v ↦ contract(u, v).
  Matrix contract_first(const Vector& u) const {
    Matrix out = Matrix::Zero(d2_, d1_);
    for (int a = 0; a < d0_; ++a) {
      if (u(a) == 0.0) continue;
      for (int b = 0; b < d1_; ++b)
        for (int c = 0; c < d2_; ++c) out(c, b) += u(a) * (*this)(a, b, c);
    }
    return out;
  }

  Tensor3& operator+=(const Tensor3& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Tensor3& operator-=(const Tensor3& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Tensor3& operator*=(double s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  friend Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
  friend Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
  friend Tensor3 operator*(double s, Tensor3 a) { return a *= s; }

  double max_abs() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
  }

  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t index(int a, int b, int c) const {
    return (std::size_t(a) * d1_ + b) * d2_ + c;
  }

  int d0_ = 0, d1_ = 0, d2_ = 0;
  std::vector<double> data_;
};

inline double max_abs_diff(const Tensor3& a, const Tensor3& b) { return (a - b).max_abs(); }

}  // namespace symred
