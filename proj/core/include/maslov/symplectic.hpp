#pragma once

#include <Eigen/Dense>
#include <vector>

#include "maslov/errors.hpp"

namespace maslov {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Real symplectic space (R^{2m}, omega) with omega(p,q) = (p, Omega q).
/// Omega is orthogonal, skew, and squares to -I, so it doubles as the
/// complex structure used by the Souriau map.
struct SymplecticSpace {
  enum class Kind { standard, doubled };

  int half_dim = 0;     // m
  MatrixXd omega;       // 2m x 2m
  Kind kind = Kind::standard;

  int dim() const { return 2 * half_dim; }
};

/// Omega = J (x) I_m in the (position, momentum) block layout,
/// i.e. [[0, I_m], [-I_m, 0]].
SymplecticSpace make_standard_space(int m);

/// (omega (+) (-omega)) on R^{4m}; rejects doubling a doubled space.
SymplecticSpace double_space(const SymplecticSpace& s);

/// A Lagrangian plane stored as an orthonormal 2m x m frame.
/// Construction orthonormalizes the given spanning columns and checks
/// full rank and isotropy.
class LagrangianFrame {
public:
  LagrangianFrame(SymplecticSpace space, const MatrixXd& spanning_columns,
                  double isotropy_tol = 1e-8);

  const SymplecticSpace& space() const { return space_; }
  const MatrixXd& columns() const { return columns_; }
  int plane_dim() const { return space_.half_dim; }

  /// Orthogonal projection onto the plane (columns are orthonormal).
  MatrixXd projection() const { return columns_ * columns_.transpose(); }

  /// max |A^T Omega A| entry, after orthonormalization.
  double isotropy_defect() const;

private:
  SymplecticSpace space_;
  MatrixXd columns_;
};

/// The diagonal {(p,p)} in a doubled space; Lagrangian for omega (+) (-omega).
LagrangianFrame diagonal_plane(const SymplecticSpace& s_doubled);

/// Orthonormal basis of span(a) ^ span(b).
struct IntersectionBasis {
  std::vector<VectorXd> vectors;
  int dim_real = 0;
};

/// Intersection via the nullity of [A | -B].  Singular values below
/// tol * sigma_max count as zero; values within a factor of 10 of the
/// threshold raise BorderlineRankError.
IntersectionBasis intersect(const LagrangianFrame& a, const LagrangianFrame& b,
                            double tol = 1e-9);

/// Same as intersect() but never raises BorderlineRankError; used where the
/// caller has already localized a crossing and owns the tolerance decision.
IntersectionBasis intersect_no_borderline(const LagrangianFrame& a,
                                          const LagrangianFrame& b, double tol);

/// Souriau map S_X(Y) = (I - 2 P_Y)(2 P_X - I) expressed as an m x m
/// unitary in the complex structure i = Omega, relative to the orthonormal
/// basis given by the columns of x.  The multiplicity of eigenvalue -1
/// equals dim_R(span x ^ span y).
MatrixXcd souriau_map(const LagrangianFrame& x, const LagrangianFrame& y);

/// Multiplicity of the eigenvalue -1 of a unitary matrix: eigenvalues whose
/// phase lies within angle_tol of pi.
int minus_one_multiplicity(const MatrixXcd& unitary, double angle_tol = 1e-6);

}  // namespace maslov
