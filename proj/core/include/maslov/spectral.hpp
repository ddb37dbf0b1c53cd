#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "maslov/propagation.hpp"

namespace maslov {

/// Eigenvalues of H_theta(t) below a cutoff, with complex multiplicities.
struct SpectrumResult {
  enum class Method { finite_difference, monodromy_roots };
  double theta = 0;
  double t = 1.0;
  std::vector<std::pair<double, int>> eigenvalues;  // ascending (lambda, mult)
  double cutoff = 0;
  Method method = Method::monodromy_roots;

  int count_below(double r) const;
};

/// Uniform lower bound for the spectrum over all theta and t in (0,1]:
/// the twisted Laplacian is nonnegative and V >= -v_max.
double spectral_floor(const Potential& pot);

/// Finite-difference oracle: theta-twisted three-point Laplacian plus V on a
/// uniform K-point grid; second-order accurate.  t scales per the rescaled
/// operator.  Multiplicities are not merged (each discrete eigenvalue counts 1).
SpectrumResult fd_spectrum(const Potential& pot, double theta, double t, int grid_size,
                           double cutoff);

/// Floquet route: roots of lambda -> det(T(lambda) - e^{i theta} I) located by
/// scan over the smallest singular value and Newton polish; multiplicity from
/// the kernel dimension of T - e^{i theta}.
SpectrumResult floquet_spectrum(const Potential& pot, double theta, double t,
                                double window_lo, double window_hi,
                                double tol = 1e-11, int scan_points = 0);

struct CountOptions {
  double tol = 1e-11;
  double guard = 1e-7;       // reject cutoffs this close to an eigenvalue
  int fd_check_grid = 0;     // 0 disables the finite-difference cross-check
};

/// N(r, theta): eigenvalues strictly below r, complex multiplicity.
int count(const Potential& pot, double theta, double t, double r,
          const CountOptions& opts = {});
/// N([r1, r2), theta).
int count_interval(const Potential& pot, double theta, double t, double r1, double r2,
                   const CountOptions& opts = {});
/// Number of negative eigenvalues with multiplicity.
int morse(const Potential& pot, double theta, double t, const CountOptions& opts = {});

/// One point of a simple eigenvalue branch theta -> lambda_k(theta), with
/// L2-normalized eigenfunction boundary data (u(a), u'(a)).
struct EigencurvePoint {
  double theta = 0;
  double lambda = 0;
  VectorXcd boundary_data;  // (u(a), u'(a)) in C^{2n}, ||u||_{L2} = 1
  bool simple = true;
};

/// Continuation of branch k (ascending order at theta_start) over
/// [theta_start, theta_end] in steps of `step`.  Throws BranchCollisionError
/// if simplicity is lost.
std::vector<EigencurvePoint> eigencurve(const Potential& pot, int branch,
                                        double theta_start, double theta_end,
                                        double step, double tol = 1e-11);

/// Polish a single eigenvalue near lambda_hint at the given theta.
EigencurvePoint eigencurve_point(const Potential& pot, double theta, double lambda_hint,
                                 double tol = 1e-11);

/// d lambda / d theta by three routes; all should agree for simple branches.
struct SlopeEvaluations {
  double boundary_formula = 0;   // 2 Im(u'(a), u(a)), normalized eigenfunction
  double crossing_form = 0;      // via the theta crossing form on the trace
  double finite_difference = 0;  // centered difference of the branch
};
SlopeEvaluations dlambda_dtheta(const Potential& pot, const EigencurvePoint& point,
                                double fd_step = 5e-4, double tol = 1e-11);

/// |W(u, conj u)(a)| for scalar potentials; nonzero away from theta in {0, pi}.
double wronskian_check(const Potential& pot, const EigencurvePoint& point);

/// Spectral bands [alpha_k, beta_k]: merged-sorted periodic/antiperiodic
/// eigenvalues paired consecutively.
std::vector<std::pair<double, double>> bands(const Potential& pot, int k_max,
                                             double tol = 1e-11);

}  // namespace maslov
