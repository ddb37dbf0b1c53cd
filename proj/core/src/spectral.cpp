#include "maslov/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <list>

#include "maslov/maslov_index.hpp"

namespace maslov {

namespace {

constexpr double kPi = 3.14159265358979323846;
using Complex = std::complex<double>;

Complex shifted_determinant(const Monodromy& mono, double theta) {
  MatrixXcd shifted = mono.matrix;
  shifted.diagonal().array() -= std::exp(Complex(0, theta));
  return shifted.determinant();
}

double smallest_singular(const Potential& pot, double lambda, double t, double theta,
                         double tol) {
  Monodromy mono = monodromy(pot, lambda, t, tol);
  Eigen::JacobiSVD<MatrixXcd> svd(floquet_shift(mono, theta));
  double smax = std::max(svd.singularValues()(0), 1.0);
  return svd.singularValues()(svd.singularValues().size() - 1) / smax;
}

// Newton iteration on lambda -> det(T(lambda) - e^{i theta} I) with a
// finite-difference derivative; handles double roots by step halving.
bool polish_root(const Potential& pot, double theta, double t, double tol,
                 double& lambda) {
  for (int it = 0; it < 60; ++it) {
    Complex d = shifted_determinant(monodromy(pot, lambda, t, tol), theta);
    double delta = std::max(1e-7, 1e-7 * std::fabs(lambda));
    Complex dp = (shifted_determinant(monodromy(pot, lambda + delta, t, tol), theta) -
                  shifted_determinant(monodromy(pot, lambda - delta, t, tol), theta)) /
                 (2 * delta);
    if (std::abs(dp) == 0) return false;
    double step = (d / dp).real();
    lambda -= step;
    if (std::fabs(step) < 1e-12 * std::max(1.0, std::fabs(lambda))) return true;
  }
  return true;  // slow (multiple-root) convergence still lands on the root
}

// Floquet multipliers mapped into the open unit disk (mu -> mu / (1 + |mu|));
// the map is continuous, angle-preserving, and bounded, so the Hausdorff
// distance between consecutive multiplier sets measures spectral motion even
// when hyperbolic multipliers are exponentially large.
std::vector<Complex> disk_multipliers(const Monodromy& mono) {
  Eigen::ComplexEigenSolver<MatrixXcd> es(mono.matrix);
  std::vector<Complex> out;
  out.reserve(mono.matrix.rows());
  for (int i = 0; i < mono.matrix.rows(); ++i) {
    Complex mu = es.eigenvalues()(i);
    out.push_back(mu / (1.0 + std::abs(mu)));
  }
  return out;
}

double multiplier_motion(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double h = 0;
  for (const auto* from : {&a, &b}) {
    const auto* to = (from == &a) ? &b : &a;
    for (Complex x : *from) {
      double best = 1e300;
      for (Complex y : *to) best = std::min(best, std::abs(x - y));
      h = std::max(h, best);
    }
  }
  return h;
}

// Number of multiplier tracks passing through e^{i theta} between two
// neighbouring scan points (disk-mapped multipliers matched by proximity).
// Unimodular multipliers sit at radius 1/2 in the disk map; only tracks near
// that radius can carry an eigenvalue.
int target_crossings(const std::vector<Complex>& left, const std::vector<Complex>& right,
                     double theta) {
  auto wrap = [](double x) {
    x = std::fmod(x, 2 * kPi);
    if (x > kPi) x -= 2 * kPi;
    if (x <= -kPi) x += 2 * kPi;
    return x;
  };
  int k = 0;
  std::vector<bool> used(right.size(), false);
  for (Complex a : left) {
    size_t best = 0;
    double best_d = 1e300;
    for (size_t j = 0; j < right.size(); ++j) {
      if (used[j]) continue;
      double d = std::abs(a - right[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best_d > 0.4) continue;  // unresolved; grid refinement handles it
    Complex b = right[best];
    used[best] = true;
    if (std::fabs(std::abs(a) - 0.5) > 0.2 || std::fabs(std::abs(b) - 0.5) > 0.2)
      continue;
    double ea = wrap(std::arg(a) - theta), eb = wrap(std::arg(b) - theta);
    if (std::fabs(ea) > kPi / 2 || std::fabs(eb) > kPi / 2) continue;
    if ((ea < 0 && eb >= 0) || (ea > 0 && eb <= 0)) ++k;
  }
  return k;
}

// Golden-section minimization of sigma_min; rescues roots where Newton on the
// determinant stalls (double roots hit the determinant noise floor while
// sigma_min still identifies the crossing sharply).
double refine_singular_minimum(const Potential& pot, double theta, double t, double tol,
                               double lo, double hi) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  double fc = smallest_singular(pot, c, t, theta, tol);
  double fd = smallest_singular(pot, d, t, theta, tol);
  for (int it = 0; it < 60 && hi - lo > 1e-13 * std::max(1.0, std::fabs(lo)); ++it) {
    if (fc < fd) {
      hi = d; d = c; fd = fc;
      c = hi - gr * (hi - lo);
      fc = smallest_singular(pot, c, t, theta, tol);
    } else {
      lo = c; c = d; fc = fd;
      d = lo + gr * (hi - lo);
      fd = smallest_singular(pot, d, t, theta, tol);
    }
  }
  return 0.5 * (lo + hi);
}

// Free eigenvalue predictions ((+-theta + 2 pi k) / ell)^2 used to set the
// scan density; the potential shifts them by at most v_max.
std::vector<double> free_predictions(double theta, double ell, double lo, double hi) {
  std::vector<double> out;
  for (double sgn : {1.0, -1.0}) {
    for (int k = 0;; ++k) {
      double mu = (sgn * theta + 2 * kPi * k) / ell;
      double lam = mu * mu;
      if (lam > hi) break;
      if (lam >= lo) out.push_back(lam);
      if (k > 100000) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

int SpectrumResult::count_below(double r) const {
  int c = 0;
  for (const auto& [lam, mult] : eigenvalues)
    if (lam < r) c += mult;
  return c;
}

double spectral_floor(const Potential& pot) { return -pot.v_max(); }

SpectrumResult fd_spectrum(const Potential& pot, double theta, double t, int grid_size,
                           double cutoff) {
  if (grid_size < 16) throw Error("fd_spectrum: grid too small");
  if (!(t > 0.0 && t <= 1.0)) throw Error("fd_spectrum: t must lie in (0, 1]");
  if (t != 1.0 && !pot.symmetric_interval())
    throw Error("fd_spectrum: scaling requires a symmetric interval");
  const int n = pot.n();
  const int kk = grid_size;
  const double h = (pot.b() - pot.a()) / kk;
  const double t2 = t * t;
  // Resolution guard: cutoff <= (K/10)^2 (pi/(b-a))^2 keeps the requested
  // eigenvalues far from the top of the discrete Laplacian range.
  if (t2 * cutoff > std::pow(kk / 10.0 * kPi / (pot.b() - pot.a()), 2))
    throw Error("fd_spectrum: grid too coarse for the requested cutoff");

  const int dim = n * kk;
  // The discretized operator is block tridiagonal with corner blocks from the
  // twisted boundary condition -- a sparse Hermitian matrix.  Eigenvalues in
  // the window come from spectrum slicing: by Sylvester's law of inertia the
  // number of negative pivots of an LDL^H factorization of A - sigma*I counts
  // the eigenvalues below sigma, and each slice costs O(K) instead of the
  // O(K^3) of a dense eigensolver.
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(static_cast<size_t>(dim) * (n + 2));
  const Complex twist = std::exp(Complex(0, theta));
  const double inv_h2 = 1.0 / (h * h);
  for (int j = 0; j < kk; ++j) {
    MatrixXd v = t2 * pot(t * (pot.a() + j * h));
    int jm = (j + kk - 1) % kk, jp = (j + 1) % kk;
    Complex wm = (j == 0) ? std::conj(twist) : Complex(1, 0);
    Complex wp = (j == kk - 1) ? twist : Complex(1, 0);
    for (int i = 0; i < n; ++i) {
      trips.emplace_back(j * n + i, j * n + i, Complex(2.0 * inv_h2, 0));
      trips.emplace_back(j * n + i, jm * n + i, -inv_h2 * wm);
      trips.emplace_back(j * n + i, jp * n + i, -inv_h2 * wp);
      for (int i2 = 0; i2 < n; ++i2)
        trips.emplace_back(j * n + i, j * n + i2, Complex(v(i, i2), 0));
    }
  }
  Eigen::SparseMatrix<Complex> a0(dim, dim);
  a0.setFromTriplets(trips.begin(), trips.end());
  Eigen::SparseMatrix<Complex> id(dim, dim);
  id.setIdentity();

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<Complex>, Eigen::Lower> ldlt;
  ldlt.analyzePattern(a0);
  // Unpivoted LDL^H can hit a (near-)zero pivot when a leading submatrix is
  // singular even though sigma itself is not an eigenvalue; a tiny shift of
  // the slice point restores a well-defined inertia.
  auto count_below = [&](double sigma) {
    for (int attempt = 0; attempt < 8; ++attempt) {
      Eigen::SparseMatrix<Complex> shifted = a0 - Complex(sigma, 0) * id;
      ldlt.factorize(shifted);
      if (ldlt.info() == Eigen::Success) {
        int neg = 0;
        bool clean = true;
        const auto& d = ldlt.vectorD();
        for (Eigen::Index i = 0; i < d.size() && clean; ++i) {
          double di = std::real(d(i));
          if (!std::isfinite(di) || std::fabs(di) < 1e-300) clean = false;
          if (di < 0) ++neg;
        }
        if (clean) return neg;
      }
      sigma += static_cast<double>(1 << attempt) * 1e-13 *
               std::max(1.0, std::fabs(sigma));
    }
    throw Error("fd_spectrum: inertia factorization broke down");
  };

  SpectrumResult res;
  res.theta = theta;
  res.t = t;
  res.cutoff = cutoff;
  res.method = SpectrumResult::Method::finite_difference;

  // The discrete Laplacian part is positive semidefinite, so the matrix
  // spectrum is bounded below by -t^2 v_max.
  const double mu_lo = -t2 * pot.v_max() - 1.0;
  const double mu_hi = t2 * cutoff;
  if (mu_hi <= mu_lo) return res;

  std::function<void(double, double, int, int)> slice = [&](double lo, double hi,
                                                            int clo, int chi) {
    if (chi <= clo) return;
    double scale = std::max({1.0, std::fabs(lo), std::fabs(hi)});
    if (hi - lo < 1e-10 * scale) {
      res.eigenvalues.emplace_back(0.5 * (lo + hi) / t2, chi - clo);
      return;
    }
    double mid = 0.5 * (lo + hi);
    int cm = count_below(mid);
    slice(lo, mid, clo, cm);
    slice(mid, hi, cm, chi);
  };
  slice(mu_lo, mu_hi, count_below(mu_lo), count_below(mu_hi));
  return res;
}

SpectrumResult floquet_spectrum(const Potential& pot, double theta, double t,
                                double window_lo, double window_hi, double tol,
                                int scan_points) {
  if (window_hi <= window_lo) throw Error("floquet_spectrum: empty window");
  const double ell = pot.b() - pot.a();
  const double width = window_hi - window_lo;

  if (scan_points <= 0) {
    // Density from the free predictions smeared by the potential bound.
    std::vector<double> pred = free_predictions(theta, ell, window_lo - pot.v_max() - 1,
                                                window_hi + pot.v_max() + 1);
    double gap = width;
    for (size_t i = 0; i + 1 < pred.size(); ++i)
      if (pred[i + 1] - pred[i] > 1e-9) gap = std::min(gap, pred[i + 1] - pred[i]);
    double step = std::min(gap / 3.0, width / 64.0);
    scan_points = static_cast<int>(std::clamp(std::ceil(width / step), 64.0, 6000.0));
  }

  const double pad = width / scan_points;
  const double lo = window_lo - pad, hi = window_hi + pad;
  const int cells = scan_points + 2;

  // Scan points carry sigma_min and the disk-mapped Floquet multipliers.
  // Narrow bands compress the entire multiplier sweep into a lambda interval
  // far below any fixed grid step, so cells are bisected until the multiplier
  // motion between neighbours is resolved; only then is the sigma_min dip
  // visible as a local minimum.
  struct ScanPoint {
    double lambda;
    double smin;
    std::vector<Complex> mult;
  };
  auto make_point = [&](double lambda) {
    Monodromy mono = monodromy(pot, lambda, t, tol);
    MatrixXcd shifted = mono.matrix;
    shifted.diagonal().array() -= std::exp(Complex(0, theta));
    Eigen::JacobiSVD<MatrixXcd> svd(shifted);
    double smax = std::max(svd.singularValues()(0), 1.0);
    return ScanPoint{lambda,
                     svd.singularValues()(svd.singularValues().size() - 1) / smax,
                     disk_multipliers(mono)};
  };
  // Distance from the nearest disk multiplier to the disk image of e^{i theta};
  // zero exactly at a Floquet eigenvalue.
  auto target_distance = [&](const std::vector<Complex>& mult) {
    Complex target = 0.5 * std::exp(Complex(0, theta));
    double best = std::numeric_limits<double>::infinity();
    for (const Complex& c : mult) best = std::min(best, std::abs(c - target));
    return best;
  };
  std::list<ScanPoint> pts;
  for (int i = 0; i <= cells; ++i) pts.push_back(make_point(lo + (hi - lo) * i / cells));
  const size_t point_budget = 20000;
  for (auto it = pts.begin(); std::next(it) != pts.end();) {
    auto nx = std::next(it);
    double span = nx->lambda - it->lambda;
    double scale = std::max(1.0, std::fabs(it->lambda));
    // Split while the multiplier motion is unresolved, or while a crossing
    // could hide inside the cell: a multiplier this close to the target can
    // dip through it and return between the endpoints ("out-and-back" pairs),
    // so the grid is graded geometrically around every near approach.
    bool unresolved = multiplier_motion(it->mult, nx->mult) > 0.15 && span > 1e-9 * scale;
    bool near_target =
        std::min(target_distance(it->mult), target_distance(nx->mult)) < 8.0 * span &&
        span > 1e-7 * scale;
    if ((unresolved || near_target) && pts.size() < point_budget) {
      pts.insert(nx, make_point(it->lambda + 0.5 * span));
      continue;
    }
    ++it;
  }
  std::vector<ScanPoint> grid(pts.begin(), pts.end());

  std::vector<std::pair<double, int>> roots;
  auto try_accept = [&](double lambda) {
    if (smallest_singular(pot, lambda, t, theta, tol) > 1e-7) return;
    int mult = floquet_kernel_dim(monodromy(pot, lambda, t, tol), theta);
    if (mult == 0) return;
    roots.emplace_back(lambda, mult);
  };

  // Primary detector: multiplier tracks passing through e^{i theta},
  // localized by bisection on the angular sign change.  Cells hosting several
  // tracks split until the roots separate or the width floor merges them into
  // one root whose multiplicity the kernel dimension then reports.
  std::function<void(const ScanPoint&, const ScanPoint&, int)> locate =
      [&](const ScanPoint& a, const ScanPoint& b, int depth) {
        int k = target_crossings(a.mult, b.mult, theta);
        if (k == 0) return;
        double width_floor = 1e-12 * std::max(1.0, std::fabs(a.lambda));
        if (b.lambda - a.lambda < width_floor || depth > 60) {
          double lambda = 0.5 * (a.lambda + b.lambda);
          polish_root(pot, theta, t, tol, lambda);
          if (lambda < a.lambda - 1.0 || lambda > b.lambda + 1.0)
            lambda = 0.5 * (a.lambda + b.lambda);  // Newton wandered off
          try_accept(lambda);
          return;
        }
        ScanPoint mid = make_point(0.5 * (a.lambda + b.lambda));
        locate(a, mid, depth + 1);
        locate(mid, b, depth + 1);
      };
  for (size_t i = 0; i + 1 < grid.size(); ++i) locate(grid[i], grid[i + 1], 0);

  // Backup detector for tangential touches: sigma_min local minima polished
  // by Newton with a golden-section fallback for stalled double roots.
  for (size_t i = 1; i + 1 < grid.size(); ++i) {
    if (!(grid[i].smin <= grid[i - 1].smin && grid[i].smin <= grid[i + 1].smin)) continue;
    double lambda = grid[i].lambda;
    if (!polish_root(pot, theta, t, tol, lambda)) continue;
    if (smallest_singular(pot, lambda, t, theta, tol) > 1e-9)
      lambda = refine_singular_minimum(pot, theta, t, tol, grid[i - 1].lambda,
                                       grid[i + 1].lambda);
    try_accept(lambda);
  }
  std::sort(roots.begin(), roots.end());

  SpectrumResult res;
  res.theta = theta;
  res.t = t;
  res.cutoff = window_hi;
  res.method = SpectrumResult::Method::monodromy_roots;
  for (const auto& [lam, mult] : roots) {
    if (lam < window_lo || lam > window_hi) continue;
    if (!res.eigenvalues.empty() &&
        std::fabs(lam - res.eigenvalues.back().first) <
            1e-8 * std::max(1.0, std::fabs(lam))) {
      // Either a duplicate detection of one root or an unresolvably close
      // pair; the kernel dimension at the common location tells them apart.
      auto& [prev, prev_mult] = res.eigenvalues.back();
      double common = 0.5 * (prev + lam);
      int kdim = floquet_kernel_dim(monodromy(pot, common, t, tol), theta);
      prev_mult = std::max({prev_mult, mult, kdim});
      continue;
    }
    res.eigenvalues.emplace_back(lam, mult);
  }
  return res;
}

int count(const Potential& pot, double theta, double t, double r,
          const CountOptions& opts) {
  double floor = spectral_floor(pot) - 0.5;
  if (r <= floor) return 0;
  SpectrumResult spec =
      floquet_spectrum(pot, theta, t, floor, r + 10 * opts.guard, opts.tol);
  for (const auto& [lam, mult] : spec.eigenvalues)
    if (std::fabs(lam - r) < opts.guard)
      throw CutoffOnEigenvalueError("count: cutoff inside the eigenvalue guard band",
                                    r, lam);
  int c = spec.count_below(r);
  if (opts.fd_check_grid > 0) {
    SpectrumResult fd = fd_spectrum(pot, theta, t, opts.fd_check_grid, r);
    if (fd.count_below(r) != c)
      throw Error("count: finite-difference cross-check disagrees with the Floquet count");
  }
  return c;
}

int count_interval(const Potential& pot, double theta, double t, double r1, double r2,
                   const CountOptions& opts) {
  if (r2 < r1) throw Error("count_interval: r2 must be >= r1");
  return count(pot, theta, t, r2, opts) - count(pot, theta, t, r1, opts);
}

int morse(const Potential& pot, double theta, double t, const CountOptions& opts) {
  return count(pot, theta, t, 0.0, opts);
}

EigencurvePoint eigencurve_point(const Potential& pot, double theta, double lambda_hint,
                                 double tol) {
  double lambda = lambda_hint;
  polish_root(pot, theta, 1.0, tol, lambda);
  Monodromy mono = monodromy(pot, lambda, 1.0, tol);
  if (smallest_singular(pot, lambda, 1.0, theta, tol) > 1e-7)
    throw LocalizationError("eigencurve_point: no eigenvalue near the hint");

  MatrixXcd shifted = floquet_shift(mono, theta);
  Eigen::JacobiSVD<MatrixXcd> svd(shifted, Eigen::ComputeFullV);
  const int dim = static_cast<int>(shifted.rows());
  int mult = floquet_kernel_dim(mono, theta);

  EigencurvePoint point;
  point.theta = theta;
  point.lambda = lambda;
  point.simple = (mult == 1);
  VectorXcd v = svd.matrixV().col(dim - 1);
  double nrm = complex_solution_l2_norm(pot, lambda, 1.0, v);
  if (nrm <= 0) throw Error("eigencurve_point: eigenfunction has zero norm");
  point.boundary_data = v / nrm;
  return point;
}

std::vector<EigencurvePoint> eigencurve(const Potential& pot, int branch,
                                        double theta_start, double theta_end,
                                        double step, double tol) {
  if (branch < 0) throw Error("eigencurve: branch must be >= 0");
  if (step <= 0) throw Error("eigencurve: step must be positive");
  double floor = spectral_floor(pot) - 0.5;
  double ell = pot.b() - pot.a();
  double hi = std::pow((2 * kPi * (branch + 2)) / ell, 2) + pot.v_max() + 1;
  SpectrumResult spec;
  for (int attempt = 0; attempt < 6; ++attempt) {
    spec = floquet_spectrum(pot, theta_start, 1.0, floor, hi, tol);
    int total = 0;
    for (const auto& [lam, mult] : spec.eigenvalues) total += mult;
    if (total > branch) break;
    hi = 1.5 * hi + 10;
  }
  double lambda0 = 0;
  {
    int seen = 0;
    bool found = false;
    for (const auto& [lam, mult] : spec.eigenvalues) {
      if (branch < seen + mult) {
        if (mult > 1)
          throw BranchCollisionError("eigencurve: branch is not simple at the start");
        lambda0 = lam;
        found = true;
        break;
      }
      seen += mult;
    }
    if (!found) throw LocalizationError("eigencurve: branch not found in the window");
  }

  std::vector<EigencurvePoint> curve;
  curve.push_back(eigencurve_point(pot, theta_start, lambda0, tol));
  double dir = theta_end >= theta_start ? 1.0 : -1.0;
  int steps = static_cast<int>(std::ceil(std::fabs(theta_end - theta_start) / step));
  for (int i = 1; i <= steps; ++i) {
    const EigencurvePoint& prev = curve.back();
    double theta = (i == steps) ? theta_end : theta_start + dir * i * step;
    const int n = pot.n();
    VectorXcd u = prev.boundary_data.head(n), up = prev.boundary_data.tail(n);
    double slope = 2.0 * std::imag(u.dot(up));
    EigencurvePoint next =
        eigencurve_point(pot, theta, prev.lambda + slope * (theta - prev.theta), tol);
    if (!next.simple)
      throw BranchCollisionError("eigencurve: branch lost simplicity during continuation");
    curve.push_back(std::move(next));
  }
  return curve;
}

SlopeEvaluations dlambda_dtheta(const Potential& pot, const EigencurvePoint& point,
                                double fd_step, double tol) {
  if (!point.simple) throw BranchCollisionError("dlambda_dtheta: branch is not simple");
  const int n = pot.n();
  VectorXcd u = point.boundary_data.head(n), up = point.boundary_data.tail(n);

  SlopeEvaluations out;
  out.boundary_formula = 2.0 * std::imag(u.dot(up));

  // Crossing-form route: slope = -Q_theta(h) / ||y||^2 on the realified trace,
  // Q_theta(h) = 2 p^T (I (x) J2) q with p = y(a), q = y'(a); ||y|| = 1 here.
  VectorXd p(2 * n), q(2 * n);
  for (int i = 0; i < n; ++i) {
    p(2 * i) = u(i).real();
    p(2 * i + 1) = u(i).imag();
    q(2 * i) = up(i).real();
    q(2 * i + 1) = up(i).imag();
  }
  double q_theta = 0;
  for (int i = 0; i < n; ++i)
    q_theta += 2.0 * (-p(2 * i) * q(2 * i + 1) + p(2 * i + 1) * q(2 * i));
  out.crossing_form = -q_theta;

  EigencurvePoint plus = eigencurve_point(
      pot, point.theta + fd_step, point.lambda + out.boundary_formula * fd_step, tol);
  EigencurvePoint minus = eigencurve_point(
      pot, point.theta - fd_step, point.lambda - out.boundary_formula * fd_step, tol);
  out.finite_difference = (plus.lambda - minus.lambda) / (2 * fd_step);
  return out;
}

double wronskian_check(const Potential& pot, const EigencurvePoint& point) {
  if (pot.n() != 1) throw Error("wronskian_check: scalar potentials only");
  Complex u = point.boundary_data(0), up = point.boundary_data(1);
  return 2.0 * std::fabs(std::imag(u * std::conj(up)));
}

std::vector<std::pair<double, double>> bands(const Potential& pot, int k_max,
                                             double tol) {
  if (k_max < 0) throw Error("bands: k_max must be >= 0");
  double floor = spectral_floor(pot) - 0.5;
  double ell = pot.b() - pot.a();
  double hi = std::pow(kPi * (2 * k_max + 4) / ell, 2) + pot.v_max() + 1;
  std::vector<double> merged;
  for (int attempt = 0; attempt < 6; ++attempt) {
    merged.clear();
    for (double theta : {0.0, kPi}) {
      SpectrumResult spec = floquet_spectrum(pot, theta, 1.0, floor, hi, tol);
      for (const auto& [lam, mult] : spec.eigenvalues)
        for (int m = 0; m < mult; ++m) merged.push_back(lam);
    }
    if (static_cast<int>(merged.size()) >= 2 * (k_max + 1)) break;
    hi = 1.5 * hi + 10;
  }
  if (static_cast<int>(merged.size()) < 2 * (k_max + 1))
    throw LocalizationError("bands: window expansion failed to capture enough bands");
  std::sort(merged.begin(), merged.end());
  std::vector<std::pair<double, double>> out;
  for (int k = 0; k <= k_max; ++k) out.emplace_back(merged[2 * k], merged[2 * k + 1]);
  return out;
}

}  // namespace maslov
