#include "maslov/potential.hpp"

#include <algorithm>
#include <cmath>

namespace maslov {

namespace {

// Natural cubic spline second derivatives (tridiagonal solve).
std::vector<double> spline_curvatures(const std::vector<double>& x,
                                      const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  std::vector<double> y2(n, 0.0), u(n, 0.0);
  for (int i = 1; i < n - 1; ++i) {
    double sig = (x[i] - x[i - 1]) / (x[i + 1] - x[i - 1]);
    double p = sig * y2[i - 1] + 2.0;
    y2[i] = (sig - 1.0) / p;
    u[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]) - (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
    u[i] = (6.0 * u[i] / (x[i + 1] - x[i - 1]) - sig * u[i - 1]) / p;
  }
  for (int k = n - 2; k >= 0; --k) y2[k] = y2[k] * y2[k + 1] + u[k];
  return y2;
}

double spline_eval(const std::vector<double>& x, const std::vector<double>& y,
                   const std::vector<double>& y2, double xq, bool want_derivative) {
  const int n = static_cast<int>(x.size());
  int lo = 0, hi = n - 1;
  while (hi - lo > 1) {
    int mid = (hi + lo) / 2;
    if (x[mid] > xq) hi = mid; else lo = mid;
  }
  double h = x[hi] - x[lo];
  double a = (x[hi] - xq) / h, b = (xq - x[lo]) / h;
  if (!want_derivative)
    return a * y[lo] + b * y[hi] +
           ((a * a * a - a) * y2[lo] + (b * b * b - b) * y2[hi]) * h * h / 6.0;
  return (y[hi] - y[lo]) / h -
         (3.0 * a * a - 1.0) / 6.0 * h * y2[lo] + (3.0 * b * b - 1.0) / 6.0 * h * y2[hi];
}

}  // namespace

Potential Potential::constant(const MatrixXd& v, double a, double b) {
  if (a >= b) throw Error("Potential: interval must satisfy a < b");
  if (v.rows() != v.cols()) throw Error("Potential: matrix must be square");
  if ((v - v.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw Error("Potential: matrix must be symmetric");
  Potential p;
  p.kind_ = Kind::constant;
  p.n_ = static_cast<int>(v.rows());
  p.a_ = a; p.b_ = b;
  p.constant_matrix_ = 0.5 * (v + v.transpose());
  p.differentiable_ = true;
  p.finish_init();
  return p;
}

Potential Potential::diagonal_cosine(const std::vector<double>& amplitudes,
                                     const std::vector<double>& frequencies,
                                     double a, double b,
                                     const std::vector<double>& offsets) {
  if (a >= b) throw Error("Potential: interval must satisfy a < b");
  if (amplitudes.empty() || amplitudes.size() != frequencies.size())
    throw Error("Potential: amplitudes/frequencies size mismatch");
  if (!offsets.empty() && offsets.size() != amplitudes.size())
    throw Error("Potential: offsets size mismatch");
  Potential p;
  p.kind_ = Kind::diagonal_cosine;
  p.n_ = static_cast<int>(amplitudes.size());
  p.a_ = a; p.b_ = b;
  p.amplitudes_ = amplitudes;
  p.frequencies_ = frequencies;
  p.offsets_ = offsets.empty() ? std::vector<double>(amplitudes.size(), 0.0) : offsets;
  p.differentiable_ = true;
  p.finish_init();
  return p;
}

Potential Potential::grid(const std::vector<double>& x, const std::vector<MatrixXd>& values,
                          bool differentiable) {
  if (x.size() < 4 || x.size() != values.size())
    throw Error("Potential: need >= 4 grid samples matching x");
  if (!std::is_sorted(x.begin(), x.end()))
    throw Error("Potential: grid abscissae must be ascending");
  const int n = static_cast<int>(values.front().rows());
  Potential p;
  p.kind_ = Kind::grid;
  p.n_ = n;
  p.a_ = x.front(); p.b_ = x.back();
  p.grid_x_ = x;
  p.differentiable_ = differentiable;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      std::vector<double> y(x.size());
      for (size_t k = 0; k < x.size(); ++k) {
        const MatrixXd& v = values[k];
        if (v.rows() != n || v.cols() != n)
          throw Error("Potential: inconsistent sample dimensions");
        if (std::abs(v(i, j) - v(j, i)) > 1e-12)
          throw Error("Potential: grid samples must be symmetric matrices");
        y[k] = 0.5 * (v(i, j) + v(j, i));
      }
      p.grid_y_.push_back(y);
      p.grid_y2_.push_back(spline_curvatures(x, y));
    }
  }
  p.finish_init();
  return p;
}

void Potential::finish_init() {
  const int samples = 512;
  double vmax = 0;
  for (int k = 0; k <= samples; ++k) {
    double x = a_ + (b_ - a_) * k / samples;
    MatrixXd v = (*this)(x);
    if (!v.allFinite()) throw Error("Potential: non-finite sample");
    vmax = std::max(vmax, v.operatorNorm());
  }
  v_max_ = vmax;
}

MatrixXd Potential::operator()(double x) const {
  switch (kind_) {
    case Kind::constant:
      return constant_matrix_;
    case Kind::diagonal_cosine: {
      MatrixXd v = MatrixXd::Zero(n_, n_);
      for (int i = 0; i < n_; ++i)
        v(i, i) = offsets_[i] + amplitudes_[i] * std::cos(frequencies_[i] * x);
      return v;
    }
    case Kind::grid: {
      double xq = std::clamp(x, a_, b_);
      MatrixXd v(n_, n_);
      int idx = 0;
      for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j, ++idx) {
          double val = spline_eval(grid_x_, grid_y_[idx], grid_y2_[idx], xq, false);
          v(i, j) = v(j, i) = val;
        }
      return v;
    }
  }
  throw Error("Potential: unreachable");
}

MatrixXd Potential::derivative(double x) const {
  if (!differentiable_) throw Error("Potential: derivative unavailable (not C^1)");
  switch (kind_) {
    case Kind::constant:
      return MatrixXd::Zero(n_, n_);
    case Kind::diagonal_cosine: {
      MatrixXd v = MatrixXd::Zero(n_, n_);
      for (int i = 0; i < n_; ++i)
        v(i, i) = -amplitudes_[i] * frequencies_[i] * std::sin(frequencies_[i] * x);
      return v;
    }
    case Kind::grid: {
      double xq = std::clamp(x, a_, b_);
      MatrixXd v(n_, n_);
      int idx = 0;
      for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j, ++idx) {
          double val = spline_eval(grid_x_, grid_y_[idx], grid_y2_[idx], xq, true);
          v(i, j) = v(j, i) = val;
        }
      return v;
    }
  }
  throw Error("Potential: unreachable");
}

bool Potential::symmetric_interval(double tol) const {
  return std::abs(a_ + b_) <= tol * std::max(1.0, std::abs(b_));
}

}  // namespace maslov
