#include "maslov/symplectic.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace maslov {

SymplecticSpace make_standard_space(int m) {
  if (m < 1) throw Error("make_standard_space: m must be >= 1");
  SymplecticSpace s;
  s.half_dim = m;
  s.kind = SymplecticSpace::Kind::standard;
  s.omega = MatrixXd::Zero(2 * m, 2 * m);
  s.omega.topRightCorner(m, m) = MatrixXd::Identity(m, m);
  s.omega.bottomLeftCorner(m, m) = -MatrixXd::Identity(m, m);
  return s;
}

SymplecticSpace double_space(const SymplecticSpace& s) {
  if (s.kind != SymplecticSpace::Kind::standard)
    throw Error("double_space: space is already doubled");
  SymplecticSpace d;
  d.half_dim = 2 * s.half_dim;
  d.kind = SymplecticSpace::Kind::doubled;
  const int n = s.dim();
  d.omega = MatrixXd::Zero(2 * n, 2 * n);
  d.omega.topLeftCorner(n, n) = s.omega;
  d.omega.bottomRightCorner(n, n) = -s.omega;
  return d;
}

LagrangianFrame::LagrangianFrame(SymplecticSpace space, const MatrixXd& spanning_columns,
                                 double isotropy_tol)
    : space_(std::move(space)) {
  const int two_m = space_.dim();
  const int m = space_.half_dim;
  if (spanning_columns.rows() != two_m || spanning_columns.cols() != m)
    throw Error("LagrangianFrame: expected a 2m x m spanning matrix");

  Eigen::ColPivHouseholderQR<MatrixXd> qr(spanning_columns);
  qr.setThreshold(1e-12);
  if (qr.rank() < m)
    throw Error("LagrangianFrame: spanning columns are rank deficient");
  columns_ = qr.householderQ() * MatrixXd::Identity(two_m, m);

  if (isotropy_defect() > isotropy_tol)
    throw Error("LagrangianFrame: frame is not isotropic to tolerance");
}

double LagrangianFrame::isotropy_defect() const {
  return (columns_.transpose() * space_.omega * columns_).cwiseAbs().maxCoeff();
}

LagrangianFrame diagonal_plane(const SymplecticSpace& s_doubled) {
  if (s_doubled.kind != SymplecticSpace::Kind::doubled)
    throw Error("diagonal_plane: requires a doubled space");
  const int n = s_doubled.half_dim;  // = 2m of the base space
  MatrixXd cols = MatrixXd::Zero(2 * n, n);
  cols.topRows(n) = MatrixXd::Identity(n, n);
  cols.bottomRows(n) = MatrixXd::Identity(n, n);
  return LagrangianFrame(s_doubled, cols, 1e-12);
}

namespace {

IntersectionBasis intersect_impl(const LagrangianFrame& a, const LagrangianFrame& b,
                                 double tol, bool check_borderline) {
  if (a.space().dim() != b.space().dim())
    throw Error("intersect: frames live in different spaces");
  const int m = a.space().half_dim;
  const int two_m = a.space().dim();

  MatrixXd stacked(two_m, 2 * m);
  stacked.leftCols(m) = a.columns();
  stacked.rightCols(m) = -b.columns();

  Eigen::JacobiSVD<MatrixXd> svd(stacked, Eigen::ComputeFullV);
  const VectorXd& sigma = svd.singularValues();
  const double sigma_max = sigma(0);
  const double threshold = tol * sigma_max;

  if (check_borderline) {
    for (int i = 0; i < sigma.size(); ++i) {
      if (sigma(i) > threshold / 10.0 && sigma(i) < threshold * 10.0)
        throw BorderlineRankError("intersect: singular value within a factor 10 of the rank threshold",
                                  sigma(i), threshold);
    }
  }

  IntersectionBasis basis;
  for (int i = 0; i < sigma.size(); ++i)
    if (sigma(i) <= threshold) ++basis.dim_real;

  if (basis.dim_real > 0) {
    // Null vectors (alpha; beta) give common vectors A alpha = B beta.
    MatrixXd raw(two_m, basis.dim_real);
    for (int k = 0; k < basis.dim_real; ++k) {
      VectorXd null_vec = svd.matrixV().col(2 * m - 1 - k);
      raw.col(k) = a.columns() * null_vec.head(m);
    }
    Eigen::HouseholderQR<MatrixXd> qr(raw);
    MatrixXd q = qr.householderQ() * MatrixXd::Identity(two_m, basis.dim_real);
    for (int k = 0; k < basis.dim_real; ++k) basis.vectors.push_back(q.col(k));
  }
  return basis;
}

}  // namespace

IntersectionBasis intersect(const LagrangianFrame& a, const LagrangianFrame& b, double tol) {
  return intersect_impl(a, b, tol, true);
}

IntersectionBasis intersect_no_borderline(const LagrangianFrame& a, const LagrangianFrame& b,
                                          double tol) {
  return intersect_impl(a, b, tol, false);
}

MatrixXcd souriau_map(const LagrangianFrame& x, const LagrangianFrame& y) {
  if (x.space().dim() != y.space().dim())
    throw Error("souriau_map: frames live in different spaces");
  const int m = x.space().half_dim;
  const int two_m = x.space().dim();
  const MatrixXd& omega = x.space().omega;

  MatrixXd s_real = (MatrixXd::Identity(two_m, two_m) - 2.0 * y.projection()) *
                    (2.0 * x.projection() - MatrixXd::Identity(two_m, two_m));

  // Complexify relative to the orthonormal basis {x_j} of X with i = Omega:
  // S x_k = sum_j a_jk x_j + b_jk (Omega x_j)  ->  U_jk = a_jk + i b_jk.
  const MatrixXd& basis = x.columns();
  MatrixXd image = s_real * basis;
  MatrixXd a = basis.transpose() * image;
  MatrixXd b = (omega * basis).transpose() * image;
  MatrixXcd u = a.cast<std::complex<double>>() +
                std::complex<double>(0, 1) * b.cast<std::complex<double>>();

  // Frames propagated through stiff systems are Lagrangian only up to their
  // isotropy defect, so the unitarity budget has to scale with that defect.
  double unitarity = (u.adjoint() * u - MatrixXcd::Identity(m, m)).cwiseAbs().maxCoeff();
  double budget = std::max(1e-8, 200.0 * (x.isotropy_defect() + y.isotropy_defect()));
  if (unitarity > budget)
    throw Error("souriau_map: result is not unitary; inputs are not Lagrangian");
  return u;
}

int minus_one_multiplicity(const MatrixXcd& unitary, double angle_tol) {
  Eigen::ComplexEigenSolver<MatrixXcd> es(unitary, false);
  int count = 0;
  for (int i = 0; i < unitary.rows(); ++i) {
    double phase = std::arg(es.eigenvalues()(i));
    if (std::abs(std::abs(phase) - M_PI) < angle_tol) ++count;
  }
  return count;
}

}  // namespace maslov
