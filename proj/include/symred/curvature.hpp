#pragma once

#include <vector>

#include "symred/reduced.hpp"

namespace symred {

/// h1: inner (first-derivative) step; h2: outer step for nested derivatives.
struct CurvatureSteps {
  double h1 = kDefaultFdStep;
  double h2 = kDefaultFdStep2;
};

/// Rʳ(X,Y)Z from the lifted expression
///   H[ R(X̄,Ȳ)Z̄ − ∇_X̄ α(∇_Ȳ Z̄)* + ∇_Ȳ α(∇_X̄ Z̄)* + ∇_{α([X̄,Ȳ])*} Z̄ ],
/// H = 1 − α(·)*, with R the curvature of ∇ on Σ_μ. Chart components at t.
Vector reduced_curvature_formula(const ReducedModel& model, const ChartField& x, const ChartField& y,
                                 const ChartField& z, const Vector& t, const CurvatureSteps& steps = {},
                                 const GroupElement* fiber = nullptr);

/// (∇ʳ_X∇ʳ_Y − ∇ʳ_Y∇ʳ_X − ∇ʳ_{[X,Y]})Z using only ∇ʳ and chart finite differences.
Vector curvature_fd_oracle(const ReducedModel& model, const ChartField& x, const ChartField& y,
                           const ChartField& z, const Vector& t, const CurvatureSteps& steps = {});

/// R(a, b, c, d): ∂_d-component of Rʳ(∂_a, ∂_b)∂_c over all ordered index triples.
class CurvatureTensor {
 public:
  explicit CurvatureTensor(int k = 0) : k_(k), data_(std::size_t(k) * k * k * k, 0.0) {}
  int dim() const { return k_; }
  double& operator()(int a, int b, int c, int d) { return data_[((std::size_t(a) * k_ + b) * k_ + c) * k_ + d]; }
  double operator()(int a, int b, int c, int d) const {
    return data_[((std::size_t(a) * k_ + b) * k_ + c) * k_ + d];
  }
  const std::vector<double>& data() const { return data_; }
  double max_abs() const;

 private:
  int k_;
  std::vector<double> data_;
};

enum class CurvaturePath { Formula, Oracle };

CurvatureTensor curvature_tensor(const ReducedModel& model, const Vector& t, CurvaturePath path,
                                 const CurvatureSteps& steps = {});

/// max|a − b| / max(max|b|, 1e-12).
double relative_discrepancy(const CurvatureTensor& a, const CurvatureTensor& b);

struct CurvatureSymmetry {
  double antisymmetry = 0.0;  // R(X,Y) + R(Y,X)
  double symplectic = 0.0;    // ωʳ(R(X,Y)Z, W) − ωʳ(R(X,Y)W, Z)
  double bianchi = 0.0;       // cyclic sum over (X,Y,Z)
  void merge(const CurvatureSymmetry& o);
};

/// Symmetry defects of a curvature tensor given the form matrix at the same point.
CurvatureSymmetry curvature_symmetry_report(const CurvatureTensor& r, const Matrix& form);

/// Change of Rʳ when the point and inputs are transported by ν ↦ Coad(g)ν.
double curvature_invariance_defect(const ReducedModel& model, const Vector& t, const GroupElement& g,
                                   const CurvatureSteps& steps = {});

struct ConvergenceReport {
  std::vector<double> steps;          // outer steps h2, each half the previous
  std::vector<double> discrepancies;  // formula vs oracle, absolute max
  std::vector<double> factors;        // discrepancy ratios for successive halvings
};

ConvergenceReport curvature_convergence(const ReducedModel& model, const Vector& t, double h2_start, int levels,
                                        double h1 = kDefaultFdStep);

}  // namespace symred
