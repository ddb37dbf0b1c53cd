#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <maslov/spectral.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace maslov;
using Eigen::MatrixXd;

namespace {

Potential free_potential() {
  return Potential::constant(MatrixXd::Zero(1, 1), 0.0, 2 * M_PI);
}

// Free eigenvalues (k + theta / 2 pi)^2 over k in Z, ascending.
std::vector<double> free_eigenvalues(double theta, int count) {
  std::vector<double> vals;
  for (int k = -count - 1; k <= count + 1; ++k)
    vals.push_back(std::pow(k + theta / (2 * M_PI), 2.0));
  std::sort(vals.begin(), vals.end());
  vals.resize(count);
  return vals;
}

}  // namespace

TEST_CASE("free spectrum matches the closed form to 1e-9") {
  Potential pot = free_potential();
  for (double theta : {M_PI / 4, M_PI / 2, 3 * M_PI / 4}) {
    std::vector<double> expect = free_eigenvalues(theta, 6);
    SpectrumResult spec =
        floquet_spectrum(pot, theta, 1.0, -0.5, expect.back() + 1e-6);
    std::vector<double> got;
    for (const auto& [lam, mult] : spec.eigenvalues)
      for (int i = 0; i < mult; ++i) got.push_back(lam);
    REQUIRE(got.size() >= expect.size());
    for (size_t i = 0; i < expect.size(); ++i)
      CHECK(std::fabs(got[i] - expect[i]) < 1e-9);
  }
}

TEST_CASE("finite-difference oracle agrees with the free closed form") {
  Potential pot = free_potential();
  double theta = M_PI / 2;
  std::vector<double> expect = free_eigenvalues(theta, 6);
  SpectrumResult fd = fd_spectrum(pot, theta, 1.0, 2000, expect.back() + 0.1);
  REQUIRE(fd.eigenvalues.size() >= expect.size());
  for (size_t i = 0; i < expect.size(); ++i) {
    double rel = std::fabs(fd.eigenvalues[i].first - expect[i]) /
                 std::max(1e-3, std::fabs(expect[i]));
    CHECK(rel < 1e-4);
  }
}

TEST_CASE("periodic free spectrum has double eigenvalues") {
  Potential pot = free_potential();
  SpectrumResult spec = floquet_spectrum(pot, 0.0, 1.0, -0.5, 1.5);
  // lambda = 0 simple, lambda = 1 double (k = +-1)
  REQUIRE(spec.eigenvalues.size() == 2);
  CHECK(spec.eigenvalues[0].first == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(spec.eigenvalues[0].second == 1);
  CHECK(spec.eigenvalues[1].first == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(spec.eigenvalues[1].second == 2);
}

TEST_CASE("counting guard rejects a cutoff on an eigenvalue") {
  Potential pot = free_potential();
  double eig = 1.0 / 16.0;
  CHECK_THROWS_AS(count(pot, M_PI / 2, 1.0, eig + 1e-9), CutoffOnEigenvalueError);
  CHECK(count(pot, M_PI / 2, 1.0, eig + 1e-3) == 1);
  CHECK(count(pot, M_PI / 2, 1.0, eig - 1e-3) == 0);
}

TEST_CASE("count_interval and morse are consistent") {
  Potential pot = free_potential();
  CHECK(count_interval(pot, M_PI / 2, 1.0, 0.0, 1.0) == 2);  // 1/16, 9/16
  Potential shifted = Potential::constant(-0.2 * MatrixXd::Ones(1, 1), 0.0, 2 * M_PI);
  CHECK(morse(shifted, M_PI / 2, 1.0) == 1);  // 1/16 - 0.2 < 0
}

TEST_CASE("free eigencurve is the parabola (theta / 2 pi)^2") {
  Potential pot = free_potential();
  std::vector<EigencurvePoint> branch =
      eigencurve(pot, 0, M_PI / 4, 3 * M_PI / 4, M_PI / 16);
  REQUIRE(branch.size() >= 5);
  for (const EigencurvePoint& p : branch) {
    CHECK(p.simple);
    CHECK(p.lambda ==
          doctest::Approx(std::pow(p.theta / (2 * M_PI), 2.0)).epsilon(1e-8));
  }
}

TEST_CASE("free branch slope matches theta / (2 pi^2)") {
  Potential pot = free_potential();
  EigencurvePoint p = eigencurve_point(pot, M_PI / 2, 1.0 / 16.0);
  SlopeEvaluations slopes = dlambda_dtheta(pot, p);
  double expect = 1.0 / (4 * M_PI);
  CHECK(std::fabs(slopes.boundary_formula - expect) < 1e-8);
  CHECK(std::fabs(slopes.crossing_form - expect) < 1e-6);
  CHECK(std::fabs(slopes.finite_difference - expect) < 1e-6);
  CHECK(wronskian_check(pot, p) > 1e-10);
}

TEST_CASE("free bands touch; the Mathieu potential opens a gap") {
  Potential pot = free_potential();
  std::vector<std::pair<double, double>> free_bands = bands(pot, 3);
  REQUIRE(free_bands.size() >= 2);
  for (size_t i = 0; i + 1 < free_bands.size(); ++i)
    CHECK(free_bands[i + 1].first - free_bands[i].second ==
          doctest::Approx(0.0).epsilon(1e-7));

  Potential mathieu =
      Potential::diagonal_cosine({2.0}, {1.0}, 0.0, 2 * M_PI);
  std::vector<std::pair<double, double>> mb = bands(mathieu, 2);
  REQUIRE(mb.size() >= 2);
  CHECK(mb[1].first - mb[0].second > 0.1);  // first spectral gap is open
}

TEST_CASE("conjugation symmetry: spectra at theta and 2 pi - theta coincide") {
  Potential pot = Potential::diagonal_cosine({1.3}, {1.0}, 0.0, 2 * M_PI);
  double theta = 1.1;
  SpectrumResult a = floquet_spectrum(pot, theta, 1.0, -2.5, 2.0);
  SpectrumResult b = floquet_spectrum(pot, 2 * M_PI - theta, 1.0, -2.5, 2.0);
  REQUIRE(a.eigenvalues.size() == b.eigenvalues.size());
  for (size_t i = 0; i < a.eigenvalues.size(); ++i) {
    CHECK(a.eigenvalues[i].first ==
          doctest::Approx(b.eigenvalues[i].first).epsilon(1e-8));
    CHECK(a.eigenvalues[i].second == b.eigenvalues[i].second);
  }
}
