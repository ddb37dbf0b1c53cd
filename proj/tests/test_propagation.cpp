#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <maslov/propagation.hpp>

#include <cmath>
#include <complex>

using namespace maslov;
using Eigen::MatrixXd;

TEST_CASE("free propagator at lambda = 0 is the shear [[I, I], [0, I]]") {
  Potential pot = Potential::constant(MatrixXd::Zero(1, 1), 0.0, 1.0);
  RealifiedSystem sys = rescaled_system(pot, 0.0, 1.0);
  MatrixXd phi = propagate_fundamental(sys);
  MatrixXd expect(4, 4);
  expect << 1, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1;
  CHECK((phi - expect).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("free propagator at lambda = 1 over a full period is the identity") {
  Potential pot = Potential::constant(MatrixXd::Zero(1, 1), 0.0, 2 * M_PI);
  RealifiedSystem sys = rescaled_system(pot, 1.0, 1.0);
  MatrixXd phi = propagate_fundamental(sys);
  CHECK((phi - MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("propagator preserves the symplectic form to integrator accuracy") {
  MatrixXd v(2, 2);
  v << -1.2, 0.4, 0.4, 2.3;
  Potential pot = Potential::constant(v, 0.0, 2 * M_PI);
  const double tol = 1e-11;
  RealifiedSystem sys = rescaled_system(pot, 0.7, 1.0);
  MatrixXd phi = propagate_fundamental(sys, tol);
  const int m = 2 * pot.n();
  MatrixXd j = MatrixXd::Zero(2 * m, 2 * m);
  j.topRightCorner(m, m).setIdentity();
  j.bottomLeftCorner(m, m) = -MatrixXd::Identity(m, m);
  double drift = (phi.transpose() * j * phi - j).cwiseAbs().maxCoeff();
  CHECK(drift < 10 * tol * phi.norm() * phi.norm());
}

TEST_CASE("free monodromy eigenvalues are e^{+-2 pi i sqrt(lambda)}") {
  Potential pot = Potential::constant(MatrixXd::Zero(1, 1), 0.0, 2 * M_PI);
  double lambda = 0.37;
  Monodromy mono = monodromy(pot, lambda);
  double mu = std::sqrt(lambda) * 2 * M_PI;
  Eigen::ComplexEigenSolver<MatrixXcd> es(mono.matrix, false);
  for (int i = 0; i < 2; ++i) {
    double d1 = std::abs(es.eigenvalues()(i) - std::exp(std::complex<double>(0, mu)));
    double d2 = std::abs(es.eigenvalues()(i) - std::exp(std::complex<double>(0, -mu)));
    CHECK(std::min(d1, d2) < 1e-9);
  }
}

TEST_CASE("boundary and trace planes intersect exactly at an eigenvalue") {
  Potential pot = Potential::constant(MatrixXd::Zero(1, 1), 0.0, 2 * M_PI);
  double theta = M_PI / 2;
  double lambda = 1.0 / 16.0;  // (theta / 2 pi)^2
  RealifiedSystem sys = rescaled_system(pot, lambda, 1.0);
  IntersectionBasis basis = intersect(boundary_plane(theta, 1), trace_plane(sys));
  CHECK(basis.dim_real == 2);
  IntersectionBasis off = intersect(boundary_plane(theta, 1),
                                    trace_plane(rescaled_system(pot, 0.2, 1.0)));
  CHECK(off.dim_real == 0);
}

TEST_CASE("floquet kernel dimension at free eigenvalues") {
  Potential pot = Potential::constant(MatrixXd::Zero(1, 1), 0.0, 2 * M_PI);
  CHECK(floquet_kernel_dim(monodromy(pot, 1.0 / 16.0), M_PI / 2) == 1);
  CHECK(floquet_kernel_dim(monodromy(pot, 1.0), 0.0) == 2);  // k = +-1 collide
  CHECK(floquet_kernel_dim(monodromy(pot, 0.5), M_PI / 2) == 0);
}

TEST_CASE("rescaled system requires a symmetric interval for t != 1") {
  Potential pot = Potential::constant(MatrixXd::Zero(1, 1), 0.0, 2 * M_PI);
  CHECK_THROWS_AS(rescaled_system(pot, 0.0, 0.5), Error);
  Potential sym = Potential::constant(MatrixXd::Zero(1, 1), -M_PI, M_PI);
  CHECK_NOTHROW(rescaled_system(sym, 0.0, 0.5));
}
