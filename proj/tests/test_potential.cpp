#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <maslov/potential.hpp>

#include <cmath>

using namespace maslov;
using Eigen::MatrixXd;

TEST_CASE("constant preset") {
  MatrixXd v(2, 2);
  v << 1.0, -0.5, -0.5, 2.0;
  Potential pot = Potential::constant(v, 0.0, 2 * M_PI);
  CHECK(pot.n() == 2);
  CHECK(pot.differentiable());
  CHECK((pot(1.3) - v).norm() == doctest::Approx(0.0));
  CHECK(pot.derivative(1.3).norm() == doctest::Approx(0.0));
  // spectral norm of [[1,-0.5],[-0.5,2]]: (3 + sqrt(2)) / 2
  CHECK(pot.v_max() == doctest::Approx((3.0 + std::sqrt(2.0)) / 2.0).epsilon(1e-6));
  CHECK_THROWS_AS(Potential::constant(MatrixXd::Ones(2, 3), 0.0, 1.0), Error);
}

TEST_CASE("diagonal cosine preset") {
  Potential pot = Potential::diagonal_cosine({2.0, -1.0}, {1.0, 2.0}, 0.0, 2 * M_PI);
  double x = 0.7;
  MatrixXd v = pot(x);
  CHECK(v(0, 0) == doctest::Approx(2.0 * std::cos(x)));
  CHECK(v(1, 1) == doctest::Approx(-1.0 * std::cos(2 * x)));
  CHECK(v(0, 1) == doctest::Approx(0.0));
  MatrixXd dv = pot.derivative(x);
  CHECK(dv(0, 0) == doctest::Approx(-2.0 * std::sin(x)));
  CHECK(dv(1, 1) == doctest::Approx(2.0 * std::sin(2 * x)));
  CHECK(pot.v_max() >= 2.0 - 1e-12);
}

TEST_CASE("diagonal cosine offsets") {
  Potential pot =
      Potential::diagonal_cosine({1.0}, {2.0}, -M_PI, M_PI, {0.5});
  CHECK(pot(0.0)(0, 0) == doctest::Approx(1.5));
  CHECK(pot.symmetric_interval());
}

TEST_CASE("grid preset interpolates smooth samples") {
  std::vector<double> xs;
  std::vector<MatrixXd> vals;
  const int k = 201;
  for (int i = 0; i < k; ++i) {
    double x = 2 * M_PI * i / (k - 1);
    xs.push_back(x);
    MatrixXd v(1, 1);
    v << std::sin(x);
    vals.push_back(v);
  }
  Potential pot = Potential::grid(xs, vals, true);
  CHECK(pot.differentiable());
  for (double x : {0.31, 1.7, 4.2, 6.0}) {
    CHECK(pot(x)(0, 0) == doctest::Approx(std::sin(x)).epsilon(1e-6));
    CHECK(pot.derivative(x)(0, 0) == doctest::Approx(std::cos(x)).epsilon(1e-3));
  }
  Potential rough = Potential::grid(xs, vals, false);
  CHECK_FALSE(rough.differentiable());
}

TEST_CASE("interval symmetry detection") {
  MatrixXd v = MatrixXd::Zero(1, 1);
  CHECK(Potential::constant(v, -1.5, 1.5).symmetric_interval());
  CHECK_FALSE(Potential::constant(v, 0.0, 3.0).symmetric_interval());
}
