#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <maslov/symplectic.hpp>

#include <complex>
#include <random>

using namespace maslov;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;

namespace {

// Haar-ish random unitary from the QR factorization of a complex Gaussian.
MatrixXcd random_unitary(int m, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  MatrixXcd g(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g(i, j) = std::complex<double>(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<MatrixXcd> qr(g);
  MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(m, m);
  MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < m; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
  return q;
}

// Orthosymplectic rotation [Re Q, -Im Q; Im Q, Re Q]: orthogonal, commutes
// with Omega, maps Lagrangian planes to Lagrangian planes.
MatrixXd orthosymplectic(const MatrixXcd& q) {
  const int m = static_cast<int>(q.rows());
  MatrixXd r(2 * m, 2 * m);
  r.topLeftCorner(m, m) = q.real();
  r.topRightCorner(m, m) = -q.imag();
  r.bottomLeftCorner(m, m) = q.imag();
  r.bottomRightCorner(m, m) = q.real();
  return r;
}

}  // namespace

TEST_CASE("standard space structure") {
  for (int m : {1, 2, 4}) {
    SymplecticSpace s = make_standard_space(m);
    CHECK(s.dim() == 2 * m);
    MatrixXd id = MatrixXd::Identity(2 * m, 2 * m);
    CHECK((s.omega * s.omega + id).norm() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK((s.omega + s.omega.transpose()).norm() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK((s.omega.transpose() * s.omega - id).norm() ==
          doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("doubled space and diagonal plane") {
  SymplecticSpace s = make_standard_space(2);
  SymplecticSpace d = double_space(s);
  CHECK(d.half_dim == 4);
  CHECK_THROWS_AS(double_space(d), Error);
  LagrangianFrame diag = diagonal_plane(d);
  CHECK(diag.isotropy_defect() < 1e-12);
}

TEST_CASE("frame construction orthonormalizes and validates") {
  SymplecticSpace s = make_standard_space(2);
  MatrixXd cols(4, 2);
  cols << 2, 0, 0, 3, 0, 0, 0, 0;  // span{e1, e2}: the position plane
  LagrangianFrame f(s, cols);
  CHECK((f.columns().transpose() * f.columns() - MatrixXd::Identity(2, 2)).norm() <
        1e-13);
  CHECK(f.isotropy_defect() < 1e-13);

  MatrixXd bad_rank(4, 2);
  bad_rank << 1, 2, 0, 0, 0, 0, 0, 0;
  CHECK_THROWS_AS(LagrangianFrame(s, bad_rank), Error);

  MatrixXd not_isotropic(4, 2);
  not_isotropic << 1, 0, 0, 0, 0, 1, 0, 0;  // span{e1, f1}: omega(e1,f1) = 1
  CHECK_THROWS_AS(LagrangianFrame(s, not_isotropic), Error);
}

TEST_CASE("intersection of standard planes") {
  SymplecticSpace s = make_standard_space(3);
  MatrixXd pos = MatrixXd::Zero(6, 3), mom = MatrixXd::Zero(6, 3);
  pos.topRows(3).setIdentity();
  mom.bottomRows(3).setIdentity();
  LagrangianFrame x(s, pos), y(s, mom);
  CHECK(intersect(x, x).dim_real == 3);
  CHECK(intersect(x, y).dim_real == 0);

  MatrixXd mixed = MatrixXd::Zero(6, 3);  // shares span{e1} with the position plane
  mixed(0, 0) = 1;
  mixed(4, 1) = 1;
  mixed(5, 2) = 1;
  LagrangianFrame z(s, mixed);
  IntersectionBasis basis = intersect(x, z);
  CHECK(basis.dim_real == 1);
  CHECK(basis.vectors.size() == 1);
  CHECK(std::fabs(std::fabs(basis.vectors[0](0)) - 1.0) < 1e-12);
}

TEST_CASE("souriau map of a plane with itself is -identity") {
  SymplecticSpace s = make_standard_space(3);
  MatrixXd pos = MatrixXd::Zero(6, 3);
  pos.topRows(3).setIdentity();
  LagrangianFrame x(s, pos);
  MatrixXcd u = souriau_map(x, x);
  CHECK((u + MatrixXcd::Identity(3, 3)).norm() < 1e-12);
  CHECK(minus_one_multiplicity(u) == 3);
}

TEST_CASE("souriau -1 multiplicity equals intersection dimension") {
  std::mt19937_64 rng(777);
  for (int m : {2, 4, 8}) {
    for (int k = 0; k <= m; ++k) {
      for (int rep = 0; rep < 4; ++rep) {
        SymplecticSpace s = make_standard_space(m);
        MatrixXd a = MatrixXd::Zero(2 * m, m), b = MatrixXd::Zero(2 * m, m);
        a.topRows(m).setIdentity();
        for (int j = 0; j < k; ++j) b(j, j) = 1;            // shared directions
        for (int j = k; j < m; ++j) b(m + j, j) = 1;        // momentum directions
        MatrixXd r = orthosymplectic(random_unitary(m, rng));
        LagrangianFrame x(s, r * a), y(s, r * b);
        CHECK(intersect(x, y).dim_real == k);
        CHECK(minus_one_multiplicity(souriau_map(x, y)) == k);
      }
    }
  }
}

TEST_CASE("souriau map rejects mismatched spaces") {
  SymplecticSpace s2 = make_standard_space(2), s3 = make_standard_space(3);
  MatrixXd a = MatrixXd::Zero(4, 2), b = MatrixXd::Zero(6, 3);
  a.topRows(2).setIdentity();
  b.topRows(3).setIdentity();
  CHECK_THROWS_AS(souriau_map(LagrangianFrame(s2, a), LagrangianFrame(s3, b)), Error);
}
