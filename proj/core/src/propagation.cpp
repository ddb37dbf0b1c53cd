#include "maslov/propagation.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <complex>

namespace maslov {

namespace {

MatrixXd kron_with_i2(const MatrixXd& v) {
  const int n = static_cast<int>(v.rows());
  MatrixXd out = MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      out(2 * i, 2 * j) = v(i, j);
      out(2 * i + 1, 2 * j + 1) = v(i, j);
    }
  return out;
}

using Rhs = std::function<void(double, const MatrixXd&, MatrixXd&)>;

// Dormand-Prince 5(4), matrix-valued state, QR renormalization with an
// accumulated triangular factor to survive dichotomy growth.
MatrixXd integrate_adaptive(const Rhs& rhs, MatrixXd z, double x0, double x1, double tol) {
  if (!(tol > 1e-14 && tol < 1e-2))
    throw Error("integrate: tolerance out of range (1e-14, 1e-2)");
  const double span = x1 - x0;
  const int cols = static_cast<int>(z.cols());
  MatrixXd acc = MatrixXd::Identity(cols, cols);

  MatrixXd k1(z.rows(), cols), k2 = k1, k3 = k1, k4 = k1, k5 = k1, k6 = k1, k7 = k1;
  MatrixXd ztmp = z, znew = z;

  double x = x0;
  double h = span / 100.0;
  const double hmin = span * 1e-14;
  int accepted_since_qr = 0;

  while (x < x1 - 1e-14 * span) {
    if (h < hmin) throw Error("integrate: step size underflow");
    if (x + h > x1) h = x1 - x;

    rhs(x, z, k1);
    ztmp = z + h * (1.0 / 5) * k1;
    rhs(x + h / 5, ztmp, k2);
    ztmp = z + h * ((3.0 / 40) * k1 + (9.0 / 40) * k2);
    rhs(x + 3 * h / 10, ztmp, k3);
    ztmp = z + h * ((44.0 / 45) * k1 - (56.0 / 15) * k2 + (32.0 / 9) * k3);
    rhs(x + 4 * h / 5, ztmp, k4);
    ztmp = z + h * ((19372.0 / 6561) * k1 - (25360.0 / 2187) * k2 +
                    (64448.0 / 6561) * k3 - (212.0 / 729) * k4);
    rhs(x + 8 * h / 9, ztmp, k5);
    ztmp = z + h * ((9017.0 / 3168) * k1 - (355.0 / 33) * k2 + (46732.0 / 5247) * k3 +
                    (49.0 / 176) * k4 - (5103.0 / 18656) * k5);
    rhs(x + h, ztmp, k6);
    znew = z + h * ((35.0 / 384) * k1 + (500.0 / 1113) * k3 + (125.0 / 192) * k4 -
                    (2187.0 / 6784) * k5 + (11.0 / 84) * k6);
    rhs(x + h, znew, k7);

    MatrixXd err_mat = h * ((35.0 / 384 - 5179.0 / 57600) * k1 +
                            (500.0 / 1113 - 7571.0 / 16695) * k3 +
                            (125.0 / 192 - 393.0 / 640) * k4 +
                            (-2187.0 / 6784 + 92097.0 / 339200) * k5 +
                            (11.0 / 84 - 187.0 / 2100) * k6 - (1.0 / 40) * k7);
    double scale = tol * std::max(1.0, std::max(z.cwiseAbs().maxCoeff(),
                                                znew.cwiseAbs().maxCoeff()));
    double err = err_mat.cwiseAbs().maxCoeff() / scale;
    if (!std::isfinite(err)) throw Error("integrate: non-finite state");

    if (err <= 1.0) {
      x += h;
      z.swap(znew);
      if (++accepted_since_qr >= 50 || z.cwiseAbs().maxCoeff() > 1e8) {
        Eigen::HouseholderQR<MatrixXd> qr(z);
        MatrixXd r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
        acc = r * acc;
        z = qr.householderQ() * MatrixXd::Identity(z.rows(), cols);
        accepted_since_qr = 0;
      }
    }
    double factor = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
    h *= std::clamp(factor, 0.2, 5.0);
  }
  return z * acc;
}

}  // namespace

MatrixXd RealifiedSystem::coefficient_block(double x) const {
  const int two_n = 2 * n();
  double t2 = t * t;
  MatrixXd block = t2 * kron_with_i2(potential(t * x));
  block.diagonal().array() -= t2 * lambda;
  (void)two_n;
  return block;
}

RealifiedSystem rescaled_system(const Potential& pot, double lambda, double t) {
  if (!(t > 0.0 && t <= 1.0)) throw Error("rescaled_system: t must lie in (0, 1]");
  if (t != 1.0 && !pot.symmetric_interval())
    throw Error("rescaled_system: scaling requires a symmetric interval [-L, L]");
  return RealifiedSystem{pot, lambda, t};
}

MatrixXd propagate_fundamental(const RealifiedSystem& sys, double tol) {
  const int two_n = 2 * sys.n();
  const RealifiedSystem& s = sys;
  Rhs rhs = [&s, two_n](double x, const MatrixXd& z, MatrixXd& out) {
    out.topRows(two_n) = z.bottomRows(two_n);
    out.bottomRows(two_n) = s.coefficient_block(x) * z.topRows(two_n);
  };
  return integrate_adaptive(rhs, MatrixXd::Identity(2 * two_n, 2 * two_n),
                            sys.a(), sys.b(), tol);
}

LagrangianFrame boundary_plane(double theta, int n) {
  if (n < 1) throw Error("boundary_plane: n must be >= 1");
  const int two_n = 2 * n;
  Eigen::Matrix2d m_theta;
  m_theta << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  MatrixXd rot = MatrixXd::Zero(two_n, two_n);
  for (int i = 0; i < n; ++i) rot.block<2, 2>(2 * i, 2 * i) = m_theta;

  MatrixXd cols = MatrixXd::Zero(4 * two_n, 2 * two_n);
  // p columns: (p, M p, 0, 0); q columns: (0, 0, -q, M q).
  cols.block(0, 0, two_n, two_n) = MatrixXd::Identity(two_n, two_n);
  cols.block(two_n, 0, two_n, two_n) = rot;
  cols.block(2 * two_n, two_n, two_n, two_n) = -MatrixXd::Identity(two_n, two_n);
  cols.block(3 * two_n, two_n, two_n, two_n) = rot;
  return LagrangianFrame(make_standard_space(2 * two_n), cols, 1e-10);
}

LagrangianFrame trace_plane(const RealifiedSystem& sys, double tol) {
  const int two_n = 2 * sys.n();
  MatrixXd phi = propagate_fundamental(sys, tol);
  MatrixXd cols = MatrixXd::Zero(4 * two_n, 2 * two_n);
  // initial data e_j = (y(a), y'(a)); trace = (y(a), y(b), -y'(a), y'(b)).
  cols.block(0, 0, two_n, two_n) = MatrixXd::Identity(two_n, two_n);
  cols.block(two_n, 0, two_n, 2 * two_n) = phi.topRows(two_n);
  cols.block(2 * two_n, two_n, two_n, two_n) = -MatrixXd::Identity(two_n, two_n);
  cols.block(3 * two_n, 0, two_n, 2 * two_n) = phi.bottomRows(two_n);
  return LagrangianFrame(make_standard_space(2 * two_n), cols, 1e-7);
}

Monodromy monodromy(const Potential& pot, double lambda, double t, double tol) {
  if (!(t > 0.0 && t <= 1.0)) throw Error("monodromy: t must lie in (0, 1]");
  if (t != 1.0 && !pot.symmetric_interval())
    throw Error("monodromy: scaling requires a symmetric interval");
  const int n = pot.n();
  double t2 = t * t;
  Rhs rhs = [&pot, lambda, t, t2, n](double x, const MatrixXd& z, MatrixXd& out) {
    out.topRows(n) = z.bottomRows(n);
    MatrixXd b = t2 * pot(t * x);
    b.diagonal().array() -= t2 * lambda;
    out.bottomRows(n) = b * z.topRows(n);
  };
  // Real coefficients: the complex propagator is the real one.
  MatrixXd t_real = integrate_adaptive(rhs, MatrixXd::Identity(2 * n, 2 * n),
                                       pot.a(), pot.b(), tol);
  Monodromy mono{lambda, t_real.cast<std::complex<double>>()};
  // det(T) = 1 by Liouville, but under exponential dichotomy the achievable
  // absolute accuracy of a determinant degrades like ||T||^{2n}; scale the
  // sanity check accordingly or it rejects every deeply hyperbolic lambda.
  double det_defect = std::abs(t_real.determinant() - 1.0);
  double det_scale = std::pow(std::max(1.0, t_real.norm()), 2 * n);
  if (det_defect > std::max(1e-6, 1e-9 * det_scale))
    throw Error("monodromy: determinant drifted from 1 (Liouville violated)");
  return mono;
}

MatrixXcd floquet_shift(const Monodromy& mono, double theta) {
  MatrixXcd shifted = mono.matrix;
  shifted.diagonal().array() -= std::exp(std::complex<double>(0, theta));
  for (Eigen::Index i = 0; i < shifted.rows(); ++i) {
    double r = shifted.row(i).norm();
    if (r > 1.0) shifted.row(i) /= r;
  }
  return shifted;
}

int floquet_kernel_dim(const Monodromy& mono, double theta, double tol) {
  const int dim = static_cast<int>(mono.matrix.rows());
  if (mono.matrix.norm() < 1e4) {
    MatrixXcd shifted = mono.matrix;
    shifted.diagonal().array() -= std::exp(std::complex<double>(0, theta));
    Eigen::JacobiSVD<MatrixXcd> svd(shifted);
    double sigma_max = std::max(svd.singularValues()(0), 1.0);
    int count = 0;
    for (int i = 0; i < dim; ++i)
      if (svd.singularValues()(i) < tol * sigma_max) ++count;
    return count;
  }
  // Stiff monodromy: hyperbolic growth e^{kappa ell} swamps the SVD of
  // T - e^{i theta} I, so count Floquet multipliers near e^{i theta} instead.
  // The unit-circle eigenvalues of T stay accurate to ~eps * |T| even when
  // the kernel directions are unresolvable.
  Eigen::ComplexEigenSolver<MatrixXcd> es(mono.matrix, false);
  std::complex<double> target = std::exp(std::complex<double>(0, theta));
  int count = 0;
  for (int i = 0; i < dim; ++i)
    if (std::abs(es.eigenvalues()(i) - target) < 1e-6) ++count;
  return count;
}

MatrixXd solution_quadrature(const RealifiedSystem& sys, const MatrixXd& init,
                             const std::function<MatrixXd(double)>& weight, int steps) {
  const int two_n = 2 * sys.n();
  if (init.rows() != 2 * two_n) throw Error("solution_quadrature: bad initial data size");
  const int k = static_cast<int>(init.cols());
  if (steps % 2 != 0) ++steps;
  const double h = (sys.b() - sys.a()) / steps;

  MatrixXd z = init, gram = MatrixXd::Zero(k, k);
  MatrixXd k1(z.rows(), k), k2 = k1, k3 = k1, k4 = k1;
  auto rhs = [&](double x, const MatrixXd& zz, MatrixXd& out) {
    out.topRows(two_n) = zz.bottomRows(two_n);
    out.bottomRows(two_n) = sys.coefficient_block(x) * zz.topRows(two_n);
  };
  auto accumulate = [&](double x, const MatrixXd& zz, double w) {
    const auto y = zz.topRows(two_n);
    if (weight)
      gram += (w * h / 3.0) * (y.transpose() * weight(x) * y);
    else
      gram += (w * h / 3.0) * (y.transpose() * y);
  };

  for (int i = 0; i <= steps; ++i) {
    double x = sys.a() + i * h;
    double w = (i == 0 || i == steps) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    accumulate(x, z, w);
    if (i == steps) break;
    rhs(x, z, k1);
    rhs(x + h / 2, z + (h / 2) * k1, k2);
    rhs(x + h / 2, z + (h / 2) * k2, k3);
    rhs(x + h, z + h * k3, k4);
    z += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return 0.5 * (gram + gram.transpose());
}

double complex_solution_l2_norm(const Potential& pot, double lambda, double t,
                                const VectorXcd& init, int steps) {
  const int n = pot.n();
  if (init.size() != 2 * n) throw Error("complex_solution_l2_norm: bad initial data");
  // Realify via y_{2k-1} = Re u_k, y_{2k} = Im u_k; then |y|^2 = |u|^2.
  Eigen::VectorXd y0(4 * n);
  for (int i = 0; i < n; ++i) {
    y0(2 * i) = init(i).real();
    y0(2 * i + 1) = init(i).imag();
    y0(2 * n + 2 * i) = init(n + i).real();
    y0(2 * n + 2 * i + 1) = init(n + i).imag();
  }
  RealifiedSystem sys = rescaled_system(pot, lambda, t);
  MatrixXd gram = solution_quadrature(sys, y0, {}, steps);
  return std::sqrt(gram(0, 0));
}

}  // namespace maslov
