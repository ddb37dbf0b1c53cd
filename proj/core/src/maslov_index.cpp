#include "maslov/maslov_index.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>
#include <list>

namespace maslov {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Calibrated so that a lambda sweep upward through an eigenvalue (crossing
// form negative definite) yields a negative flow, matching the crossing-form
// backend.
constexpr int kFlowSign = -1;

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

// I_n (x) J2 with J2 = [[0,-1],[1,0]] (the rotation generator).
MatrixXd kron_with_j2(int n) {
  MatrixXd out = MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    out(2 * i, 2 * i + 1) = -1.0;
    out(2 * i + 1, 2 * i) = 1.0;
  }
  return out;
}

double intersection_gap(const LagrangianFrame& a, const LagrangianFrame& b) {
  const int m = a.plane_dim();
  MatrixXd stacked(2 * m, 2 * m);
  stacked.leftCols(m) = a.columns();
  stacked.rightCols(m) = -b.columns();
  Eigen::JacobiSVD<MatrixXd> svd(stacked);
  return svd.singularValues()(2 * m - 1);
}

// Boundary/initial data of an intersection vector in the trace layout
// (y(a), y(b), -y'(a), y'(b)); both planes store compatible layouts.
struct EndpointData {
  VectorXd y;   // y(a), length 2n
  VectorXd yp;  // y'(a), length 2n
};

EndpointData endpoint_data(const VectorXd& w, int n) {
  const int two_n = 2 * n;
  EndpointData d;
  d.y = w.segment(0, two_n);
  d.yp = -w.segment(2 * two_n, two_n);
  return d;
}

std::pair<VectorXcd, VectorXcd> complexify(const EndpointData& d, int n) {
  VectorXcd u(n), up(n);
  for (int i = 0; i < n; ++i) {
    u(i) = std::complex<double>(d.y(2 * i), d.y(2 * i + 1));
    up(i) = std::complex<double>(d.yp(2 * i), d.yp(2 * i + 1));
  }
  return {u, up};
}

double frozen_lambda(const Segment& seg, double s) {
  return seg.variable == Segment::Variable::lambda ? s : seg.lambda;
}
double frozen_t(const Segment& seg, double s) {
  return seg.variable == Segment::Variable::t ? s : seg.t;
}

struct Signature {
  int n_plus = 0, n_minus = 0, n_zero = 0;
};

Signature classify(const MatrixXd& form, double zero_eig_tol) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(form);
  double scale = es.eigenvalues().cwiseAbs().maxCoeff();
  double threshold = std::max(1e-10, zero_eig_tol * scale);
  Signature sig;
  for (int i = 0; i < form.rows(); ++i) {
    double mu = es.eigenvalues()(i);
    if (mu > threshold)
      ++sig.n_plus;
    else if (mu < -threshold)
      ++sig.n_minus;
    else
      ++sig.n_zero;
  }
  return sig;
}

MatrixXd crossing_form_dispatch(const Potential& pot, const Segment& seg, double s,
                                const std::vector<VectorXd>& basis,
                                const EngineOptions& opts) {
  switch (seg.variable) {
    case Segment::Variable::lambda:
      return crossing_form_lambda(pot, seg, s, basis, opts);
    case Segment::Variable::theta:
      return crossing_form_theta(pot, seg, basis);
    case Segment::Variable::t:
      return crossing_form_t(pot, seg, s, basis, opts);
  }
  throw Error("crossing form: unreachable");
}

// Eigenphases of the Souriau unitary measured counterclockwise from pi,
// i.e. delta = mod(phase - pi, 2 pi) in [0, 2 pi).
std::vector<double> phase_deltas(const MatrixXcd& unitary) {
  Eigen::ComplexEigenSolver<MatrixXcd> es(unitary);
  std::vector<double> deltas;
  deltas.reserve(unitary.rows());
  for (int i = 0; i < unitary.rows(); ++i) {
    double phi = std::arg(es.eigenvalues()(i));
    double d = std::fmod(phi - kPi, 2 * kPi);
    if (d < 0) d += 2 * kPi;
    deltas.push_back(d);
  }
  std::sort(deltas.begin(), deltas.end());
  return deltas;
}

double circ_dist(double a, double b) {
  double d = std::fabs(a - b);
  return std::min(d, 2 * kPi - d);
}

double hausdorff_circular(const std::vector<double>& a, const std::vector<double>& b) {
  double h = 0;
  for (double x : a) {
    double best = 2 * kPi;
    for (double y : b) best = std::min(best, circ_dist(x, y));
    h = std::max(h, best);
  }
  for (double y : b) {
    double best = 2 * kPi;
    for (double x : a) best = std::min(best, circ_dist(x, y));
    h = std::max(h, best);
  }
  return h;
}

int window_count(const std::vector<double>& deltas, double eps) {
  int k = 0;
  for (double d : deltas)
    if (d <= eps + 1e-12 || d >= 2 * kPi - 1e-9) ++k;
  return k;
}

// Largest gap of the delta values inside (0, pi); returns (eps, margin).
std::pair<double, double> choose_window(const std::vector<double>& left,
                                        const std::vector<double>& right) {
  std::vector<double> obstacles{0.0, kPi};
  for (const auto* set : {&left, &right})
    for (double d : *set)
      if (d > 1e-12 && d < kPi) obstacles.push_back(d);
  std::sort(obstacles.begin(), obstacles.end());
  double best_eps = kPi / 2, best_margin = 0;
  for (size_t i = 0; i + 1 < obstacles.size(); ++i) {
    double margin = 0.5 * (obstacles[i + 1] - obstacles[i]);
    if (margin > best_margin) {
      best_margin = margin;
      best_eps = 0.5 * (obstacles[i] + obstacles[i + 1]);
    }
  }
  return {best_eps, best_margin};
}

}  // namespace

LagrangianFrame segment_moving_frame(const Potential& pot, const Segment& seg, double s,
                                     const EngineOptions& opts) {
  if (seg.variable == Segment::Variable::theta)
    return boundary_plane(s, pot.n());
  RealifiedSystem sys =
      rescaled_system(pot, frozen_lambda(seg, s), frozen_t(seg, s));
  return trace_plane(sys, opts.integrator_tol);
}

LagrangianFrame segment_reference_frame(const Potential& pot, const Segment& seg,
                                        const EngineOptions& opts) {
  if (seg.variable == Segment::Variable::theta) {
    RealifiedSystem sys = rescaled_system(pot, seg.lambda, seg.t);
    return trace_plane(sys, opts.integrator_tol);
  }
  return boundary_plane(seg.theta, pot.n());
}

namespace {

// Signed distance of an eigenphase delta from the crossing position pi,
// folded to (-pi, pi].
double signed_delta(double delta) {
  return delta > kPi ? delta - 2 * kPi : delta;
}

// Number of eigenphase tracks passing through pi between two neighbouring
// scan points, matched by nearest circular distance.  Only valid when the
// motion between the points is resolved (well below pi/2).
int phase_crossings(const std::vector<double>& left, const std::vector<double>& right) {
  int k = 0;
  std::vector<bool> used(right.size(), false);
  for (double dl : left) {
    size_t best = 0;
    double best_d = 1e300;
    for (size_t j = 0; j < right.size(); ++j) {
      if (used[j]) continue;
      double d = circ_dist(dl, right[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best_d > kPi / 2) continue;  // unresolved; refinement handles it
    double ea = signed_delta(dl), eb = signed_delta(right[best]);
    used[best] = true;
    if (std::fabs(ea) > kPi / 2 || std::fabs(eb) > kPi / 2) continue;
    if ((ea < 0 && eb >= 0) || (ea > 0 && eb <= 0)) ++k;
  }
  return k;
}

// Candidate crossing locations of a leg in normalized coordinates u in [0,1].
// The Souriau eigenphases against the reference plane are sampled on a grid
// refined until the phase motion between neighbours is resolved; every phase
// track passing through pi is then localized by bisection on its sign change.
// This separates near-degenerate crossing pairs and survives the narrow
// parameter windows that compress an entire crossing into a fraction of a
// grid cell; intersection-gap local minima are kept as a backup detector for
// tangential (non-transversal) touches.
std::vector<double> crossing_candidates(const Potential& pot, const Segment& seg,
                                        const LagrangianFrame& ref,
                                        const EngineOptions& opts) {
  const double span = seg.s_end - seg.s_begin;
  if (span == 0) return {};
  auto frame_at = [&](double u) {
    return segment_moving_frame(pot, seg, seg.s_begin + u * span, opts);
  };
  auto gap = [&](double u) { return intersection_gap(frame_at(u), ref); };

  struct ScanPoint {
    double u;
    double gap;
    std::vector<double> deltas;
  };
  auto make_point = [&](double u) {
    LagrangianFrame f = frame_at(u);
    return ScanPoint{u, intersection_gap(f, ref), phase_deltas(souriau_map(ref, f))};
  };
  const int cells = std::max(opts.scan_cells, 8);
  std::list<ScanPoint> pts;
  for (int i = 0; i <= cells; ++i)
    pts.push_back(make_point(static_cast<double>(i) / cells));
  const size_t point_budget = 8000;
  for (auto it = pts.begin(); std::next(it) != pts.end();) {
    auto nx = std::next(it);
    double w = nx->u - it->u;
    if (hausdorff_circular(it->deltas, nx->deltas) > 0.25 && w > 1e-9 &&
        pts.size() < point_budget) {
      pts.insert(nx, make_point(it->u + 0.5 * w));
      continue;
    }
    ++it;
  }
  std::vector<ScanPoint> g(pts.begin(), pts.end());

  std::vector<double> candidates;
  if (g.front().gap < opts.crossing_gap_tol * 10) candidates.push_back(0.0);
  if (g.back().gap < opts.crossing_gap_tol * 10) candidates.push_back(1.0);

  // Bisection localization of phase-track sign changes; cells hosting several
  // tracks are split until the tracks separate or the width floor merges them
  // into one (degenerate) candidate.
  const double width_floor = std::max(opts.refine_tol * 1e-2, 1e-13);
  std::function<void(const ScanPoint&, const ScanPoint&, int)> locate =
      [&](const ScanPoint& lo, const ScanPoint& hi, int depth) {
        int k = phase_crossings(lo.deltas, hi.deltas);
        if (k == 0) return;
        if (hi.u - lo.u < width_floor || depth > 60) {
          candidates.push_back(0.5 * (lo.u + hi.u));
          return;
        }
        ScanPoint mid = make_point(0.5 * (lo.u + hi.u));
        locate(lo, mid, depth + 1);
        locate(mid, hi, depth + 1);
      };
  for (size_t i = 0; i + 1 < g.size(); ++i) locate(g[i], g[i + 1], 0);

  // Backup: intersection-gap local minima refined by golden section.
  for (size_t i = 1; i + 1 < g.size(); ++i) {
    if (g[i].gap <= g[i - 1].gap && g[i].gap <= g[i + 1].gap) {
      double lo = g[i - 1].u;
      double hi = g[i + 1].u;
      const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
      double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
      double fc = gap(c), fd = gap(d);
      while (hi - lo > opts.refine_tol) {
        if (fc < fd) {
          hi = d; d = c; fd = fc;
          c = hi - gr * (hi - lo);
          fc = gap(c);
        } else {
          lo = c; c = d; fc = fd;
          d = lo + gr * (hi - lo);
          fd = gap(d);
        }
      }
      candidates.push_back(0.5 * (lo + hi));
    }
  }
  std::sort(candidates.begin(), candidates.end());
  return candidates;
}

}  // namespace

std::vector<CrossingRecord> find_crossings(const Potential& pot, const Segment& seg,
                                           int segment_index, const EngineOptions& opts) {
  const double span = seg.s_end - seg.s_begin;
  if (span == 0) return {};  // zero-length leg contributes nothing
  LagrangianFrame ref = segment_reference_frame(pot, seg, opts);
  std::vector<double> candidates = crossing_candidates(pot, seg, ref, opts);

  std::vector<CrossingRecord> out;
  for (double u : candidates) {
    if (!out.empty() && std::fabs(u - (out.back().s - seg.s_begin) / span) < 1e-8)
      continue;
    double s = seg.s_begin + u * span;
    LagrangianFrame moving = segment_moving_frame(pot, seg, s, opts);
    if (intersection_gap(moving, ref) > opts.crossing_gap_tol) continue;
    IntersectionBasis basis = intersect_no_borderline(moving, ref, opts.crossing_gap_tol);
    if (basis.dim_real == 0) continue;
    CrossingRecord rec;
    rec.segment_index = segment_index;
    rec.s = s;
    rec.dim_real = basis.dim_real;
    rec.at_begin = u < opts.endpoint_frac;
    rec.at_end = u > 1.0 - opts.endpoint_frac;
    rec.form = crossing_form_dispatch(pot, seg, s, basis.vectors, opts);
    out.push_back(std::move(rec));
  }
  return out;
}

MatrixXd crossing_form_lambda(const Potential& pot, const Segment& seg, double s,
                              const std::vector<VectorXd>& basis,
                              const EngineOptions& opts) {
  const int n = pot.n();
  const int k = static_cast<int>(basis.size());
  MatrixXd init(4 * n, k);
  for (int j = 0; j < k; ++j) {
    EndpointData d = endpoint_data(basis[j], n);
    init.col(j).head(2 * n) = d.y;
    init.col(j).tail(2 * n) = d.yp;
  }
  double t = frozen_t(seg, s);
  RealifiedSystem sys = rescaled_system(pot, s, t);
  MatrixXd gram = solution_quadrature(sys, init, {}, opts.quad_steps);
  return -(t * t) * seg.direction() * gram;
}

MatrixXd crossing_form_theta(const Potential& pot, const Segment& seg,
                             const std::vector<VectorXd>& basis) {
  const int n = pot.n();
  const int k = static_cast<int>(basis.size());
  MatrixXd j2 = kron_with_j2(n);
  MatrixXd q(k, k);
  for (int i = 0; i < k; ++i) {
    EndpointData di = endpoint_data(basis[i], n);
    for (int j = 0; j <= i; ++j) {
      EndpointData dj = endpoint_data(basis[j], n);
      double v = di.y.dot(j2 * dj.yp) + dj.y.dot(j2 * di.yp);
      q(i, j) = q(j, i) = v;
    }
  }
  return seg.direction() * q;
}

MatrixXd crossing_form_t(const Potential& pot, const Segment& seg, double s,
                         const std::vector<VectorXd>& basis,
                         const EngineOptions& opts) {
  if (!pot.differentiable())
    throw Error("crossing_form_t: potential must be C^1 for the scaling form");
  const int n = pot.n();
  const int k = static_cast<int>(basis.size());
  const double t = s;
  const double lambda = seg.lambda;
  const double ell = pot.b();  // symmetric interval [-L, L]

  MatrixXd init(4 * n, k);
  for (int j = 0; j < k; ++j) {
    EndpointData d = endpoint_data(basis[j], n);
    init.col(j).head(2 * n) = d.y;
    init.col(j).tail(2 * n) = d.yp;
  }
  RealifiedSystem sys = rescaled_system(pot, lambda, t);
  auto weight = [&pot, t, lambda, n](double x) {
    MatrixXd w = 2 * t * kron_with_i2(pot(t * x)) +
                 t * t * x * kron_with_i2(pot.derivative(t * x));
    w.diagonal().array() -= 2 * t * lambda;
    (void)n;
    return w;
  };
  MatrixXd q = solution_quadrature(sys, init, weight, opts.quad_steps);

  // Cross-check: integration by parts moves the parametric derivative onto
  // boundary data; both evaluations must agree on crossing vectors.
  MatrixXd vsum = pot(t * ell) + pot(-t * ell);
  auto boundary_quadratic = [&](const VectorXd& w) {
    EndpointData d = endpoint_data(w, n);
    auto [u, up] = complexify(d, n);
    double quad = (u.adjoint() * vsum.cast<std::complex<double>>() * u).real()(0);
    return t * ell * quad - (2 * ell / t) * up.squaredNorm() -
           2 * t * lambda * ell * u.squaredNorm();
  };
  MatrixXd q_bdry(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j <= i; ++j) {
      double v = 0.25 * (boundary_quadratic(basis[i] + basis[j]) -
                         boundary_quadratic(basis[i] - basis[j]));
      q_bdry(i, j) = q_bdry(j, i) = v;
    }
  double scale = std::max(1.0, q.cwiseAbs().maxCoeff());
  if ((q - q_bdry).cwiseAbs().maxCoeff() > 1e-6 * scale)
    throw Error("crossing_form_t: quadrature and boundary evaluations disagree");

  return seg.direction() * q;
}

MaslovResult maslov_crossing_form(const Potential& pot, const PathSpec& path,
                                  const EngineOptions& opts) {
  MaslovResult res;
  for (size_t i = 0; i < path.segments.size(); ++i) {
    const Segment& seg = path.segments[i];
    std::vector<CrossingRecord> crossings =
        find_crossings(pot, seg, static_cast<int>(i), opts);
    int seg_index = 0;
    for (CrossingRecord& rec : crossings) {
      Signature sig = classify(rec.form, opts.zero_eig_tol);
      if (sig.n_zero > 0)
        throw NonRegularCrossingError("maslov_crossing_form: degenerate crossing form");
      rec.n_plus = sig.n_plus;
      rec.n_minus = sig.n_minus;
      if (rec.at_begin)
        rec.contribution = -sig.n_minus;
      else if (rec.at_end)
        rec.contribution = sig.n_plus;
      else
        rec.contribution = sig.n_plus - sig.n_minus;
      seg_index += rec.contribution;
      res.crossings.push_back(rec);
    }
    res.segment_indices.push_back(seg_index);
    res.index += seg.slot_sign * seg_index;
  }
  return res;
}

int spectral_flow(const std::function<LagrangianFrame(double)>& path,
                  const LagrangianFrame& reference, const EngineOptions& opts,
                  const std::vector<double>& seeds) {
  struct Node {
    double u;
    int depth;
    std::vector<double> deltas;
  };
  auto make_node = [&](double u, int depth) {
    return Node{u, depth, phase_deltas(souriau_map(reference, path(u)))};
  };

  std::vector<double> params;
  const int n0 = std::max(opts.flow_initial_nodes, 3);
  for (int i = 0; i < n0; ++i) params.push_back(static_cast<double>(i) / (n0 - 1));
  for (double s : seeds)
    for (double w : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7})
      for (double sgn : {-1.0, 1.0}) {
        double u = s + sgn * w;
        if (u > 0.0 && u < 1.0) params.push_back(u);
      }
  std::sort(params.begin(), params.end());
  params.erase(std::unique(params.begin(), params.end(),
                           [](double a, double b) { return std::fabs(a - b) < 1e-12; }),
               params.end());

  std::list<Node> nodes;
  for (double u : params) nodes.push_back(make_node(u, 0));

  int flow = 0;
  auto it = nodes.begin();
  while (std::next(it) != nodes.end()) {
    auto nx = std::next(it);
    double motion = hausdorff_circular(it->deltas, nx->deltas);
    auto [eps, margin] = choose_window(it->deltas, nx->deltas);
    if (motion > kPi / 4 || margin <= std::max(motion, 1e-6)) {
      int depth = std::max(it->depth, nx->depth) + 1;
      if (depth > opts.flow_max_depth)
        throw PhaseSeparationError(
            "spectral_flow: cannot separate the window point from the spectrum");
      nodes.insert(nx, make_node(0.5 * (it->u + nx->u), depth));
      continue;
    }
    int transfer = window_count(nx->deltas, eps) - window_count(it->deltas, eps);
    if (transfer != 0 && nx->u - it->u > 1e-7) {
      // A transfer across a wide cell may be a fast phase transiting the
      // window edge, aliased into small apparent motion by the endpoint
      // matching.  Genuine crossings survive localization; transits dissolve.
      int depth = std::max(it->depth, nx->depth) + 1;
      if (depth > opts.flow_max_depth)
        throw PhaseSeparationError(
            "spectral_flow: cannot separate the window point from the spectrum");
      nodes.insert(nx, make_node(0.5 * (it->u + nx->u), depth));
      continue;
    }
    flow += transfer;
    ++it;
  }
  return kFlowSign * flow;
}

MaslovResult maslov_spectral_flow(const Potential& pot, const PathSpec& path,
                                  const EngineOptions& opts) {
  MaslovResult res;
  for (size_t i = 0; i < path.segments.size(); ++i) {
    const Segment& seg = path.segments[i];
    LagrangianFrame ref = segment_reference_frame(pot, seg, opts);
    double span = seg.s_end - seg.s_begin;
    auto moving = [&](double u) {
      return segment_moving_frame(pot, seg, seg.s_begin + u * span, opts);
    };
    std::vector<double> seeds = crossing_candidates(pot, seg, ref, opts);
    int seg_index = spectral_flow(moving, ref, opts, seeds);
    res.segment_indices.push_back(seg_index);
    res.index += seg.slot_sign * seg_index;
  }
  return res;
}

PathSpec rectangle_theta(const Potential& pot, double r, double theta1, double theta2) {
  double lambda_floor = -pot.v_max() - 1.0;
  if (r <= lambda_floor) throw Error("rectangle_theta: cutoff below the spectral floor");
  PathSpec path;
  path.closed = true;
  Segment up;  // lambda rises along the theta1 edge; the trace plane moves
  up.variable = Segment::Variable::lambda;
  up.s_begin = lambda_floor;
  up.s_end = r;
  up.theta = theta1;
  up.slot_sign = -1;
  Segment across;  // theta sweeps at lambda = r; the boundary plane moves
  across.variable = Segment::Variable::theta;
  across.s_begin = theta1;
  across.s_end = theta2;
  across.lambda = r;
  across.slot_sign = 1;
  Segment down = up;
  down.s_begin = r;
  down.s_end = lambda_floor;
  down.theta = theta2;
  Segment back = across;
  back.s_begin = theta2;
  back.s_end = theta1;
  back.lambda = lambda_floor;
  path.segments = {up, across, down, back};
  return path;
}

PathSpec rectangle_t(const Potential& pot, double theta, double tau, double r) {
  if (!(tau > 0.0 && tau < 1.0)) throw Error("rectangle_t: tau must lie in (0, 1)");
  if (!pot.symmetric_interval())
    throw Error("rectangle_t: scaling requires a symmetric interval");
  double lambda_floor = -pot.v_max() - 1.0;
  PathSpec path;
  path.closed = true;
  Segment up;  // lambda rises at t = tau
  up.variable = Segment::Variable::lambda;
  up.s_begin = lambda_floor;
  up.s_end = r;
  up.theta = theta;
  up.t = tau;
  Segment across;  // t sweeps from tau to 1 at lambda = r
  across.variable = Segment::Variable::t;
  across.s_begin = tau;
  across.s_end = 1.0;
  across.theta = theta;
  across.lambda = r;
  Segment down = up;
  down.s_begin = r;
  down.s_end = lambda_floor;
  down.t = 1.0;
  Segment back = across;
  back.s_begin = 1.0;
  back.s_end = tau;
  back.lambda = lambda_floor;
  path.segments = {up, across, down, back};
  return path;
}

}  // namespace maslov
