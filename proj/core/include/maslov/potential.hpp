#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "maslov/errors.hpp"

namespace maslov {

using Eigen::MatrixXd;

/// Symmetric, bounded matrix potential V on [a, b].
/// Presets: constant matrix, diagonal cosines V_ii = amp_i * cos(freq_i x),
/// or sampled values on a grid with cubic-spline interpolation.
class Potential {
public:
  static Potential constant(const MatrixXd& v, double a, double b);
  /// V = diag(off_i + amp_i cos(freq_i x)); offsets default to zero.
  static Potential diagonal_cosine(const std::vector<double>& amplitudes,
                                   const std::vector<double>& frequencies,
                                   double a, double b,
                                   const std::vector<double>& offsets = {});
  /// Samples at ascending points x_k; columns of `values` are the matrices
  /// row-major per sample.  Natural cubic spline per entry.
  static Potential grid(const std::vector<double>& x,
                        const std::vector<MatrixXd>& values,
                        bool differentiable = false);

  int n() const { return n_; }
  double a() const { return a_; }
  double b() const { return b_; }
  bool differentiable() const { return differentiable_; }
  /// sup-grid bound on the spectral norm of V.
  double v_max() const { return v_max_; }

  MatrixXd operator()(double x) const;
  MatrixXd derivative(double x) const;

  /// interval symmetric around 0 (required by the rescaling theory).
  bool symmetric_interval(double tol = 1e-12) const;

private:
  enum class Kind { constant, diagonal_cosine, grid };
  Potential() = default;
  void finish_init();

  Kind kind_ = Kind::constant;
  int n_ = 1;
  double a_ = 0, b_ = 1;
  bool differentiable_ = true;
  double v_max_ = 0;

  MatrixXd constant_matrix_;
  std::vector<double> amplitudes_, frequencies_, offsets_;

  // grid data: per matrix entry (i <= j), spline knots and second derivatives
  std::vector<double> grid_x_;
  std::vector<std::vector<double>> grid_y_;    // entry-major, per (i,j) i<=j
  std::vector<std::vector<double>> grid_y2_;   // spline curvatures
};

}  // namespace maslov
