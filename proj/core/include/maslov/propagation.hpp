#pragma once

#include <Eigen/Dense>
#include <functional>

#include "maslov/potential.hpp"
#include "maslov/symplectic.hpp"

namespace maslov {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

/// First-order realification z' = A(x) z of -y'' + t^2 (V(tx) (x) I_2) y = t^2 lambda y
/// on z = (y, y') in R^{4n}.  t = 1 gives the unscaled equation on [a, b];
/// t != 1 requires a symmetric interval [-L, L].
struct RealifiedSystem {
  Potential potential;
  double lambda = 0;
  double t = 1.0;

  int n() const { return potential.n(); }
  double a() const { return potential.a(); }
  double b() const { return potential.b(); }

  /// Lower-left block t^2 (V(tx) (x) I_2) - t^2 lambda I_{2n}.
  MatrixXd coefficient_block(double x) const;
};

RealifiedSystem rescaled_system(const Potential& pot, double lambda, double t);

/// Propagator of z' = A(x) z from a to b, adaptive embedded RK with
/// periodic QR renormalization against dichotomy growth.
MatrixXd propagate_fundamental(const RealifiedSystem& sys, double tol = 1e-11);

/// Boundary-condition plane {(p, (I_n (x) M_theta) p, -q, (I_n (x) M_theta) q)}
/// in the standard space of half-dim 4n.
LagrangianFrame boundary_plane(double theta, int n);

/// Plane of solution traces (y(a), y(b), -y'(a), y'(b)) spanned by the
/// fundamental solutions of the (possibly rescaled) equation.
LagrangianFrame trace_plane(const RealifiedSystem& sys, double tol = 1e-11);

/// Complex 2n x 2n propagator of (u, u') for -u'' + t^2 V(tx) u = t^2 lambda u;
/// lambda is an eigenvalue of H_theta(t) iff e^{i theta} is an eigenvalue of T.
struct Monodromy {
  double lambda = 0;
  MatrixXcd matrix;
};

Monodromy monodromy(const Potential& pot, double lambda, double t = 1.0,
                    double tol = 1e-11);

/// T - e^{i theta} I with rows scaled to norm <= 1.  Hyperbolic channels blow
/// a few rows up by e^{kappa ell}, which drags sigma_min / sigma_max down
/// everywhere and drowns genuine Floquet kernels in integration noise; row
/// scaling preserves the null space and restores an O(1) background.
MatrixXcd floquet_shift(const Monodromy& mono, double theta);

/// dim_C ker(T - e^{i theta}): singular values of the equilibrated shift
/// below tol * sigma_max.
int floquet_kernel_dim(const Monodromy& mono, double theta, double tol = 1e-6);

/// Simpson quadratures G_ij = int_a^b (y_i(x), W(x) y_j(x)) dx over the
/// position components of solutions with initial data (y(a), y'(a)) given by
/// the columns of init.  W = identity when weight is empty.
MatrixXd solution_quadrature(const RealifiedSystem& sys, const MatrixXd& init,
                             const std::function<MatrixXd(double)>& weight = {},
                             int steps = 4000);

/// L2([a,b]) norm of the complex solution u with initial data (u(a), u'(a)).
double complex_solution_l2_norm(const Potential& pot, double lambda, double t,
                                const VectorXcd& init, int steps = 4000);

}  // namespace maslov
