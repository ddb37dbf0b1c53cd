#pragma once

#include <functional>
#include <vector>

#include "maslov/propagation.hpp"

namespace maslov {

/// One leg of a parameter path.  Exactly one of (lambda, theta, t) varies,
/// from s_begin to s_end in traversal order (s_begin > s_end runs backwards);
/// the other two stay at the frozen values stored here.
///
/// Legs where the solution trace plane moves (lambda, t) are measured against
/// the fixed boundary plane F_theta; theta legs move the boundary plane
/// against the fixed trace plane.  slot_sign weights the leg in a closed-path
/// total: -1 for legs whose moving plane sits in the second slot of the
/// doubled-space pair, +1 otherwise.
struct Segment {
  enum class Variable { lambda, theta, t };

  Variable variable = Variable::lambda;
  double s_begin = 0;
  double s_end = 0;
  double theta = 0;
  double lambda = 0;
  double t = 1.0;
  int slot_sign = 1;

  double direction() const { return s_end >= s_begin ? 1.0 : -1.0; }
};

struct PathSpec {
  std::vector<Segment> segments;
  bool closed = false;
};

struct EngineOptions {
  double integrator_tol = 1e-11;
  int scan_cells = 200;          // crossing localization grid per segment
  double refine_tol = 1e-10;     // golden-section window (fraction of span)
  double crossing_gap_tol = 1e-7;  // sigma_min below this counts as a crossing
  double endpoint_frac = 1e-7;   // crossings this close to a leg end use endpoint rules
  double zero_eig_tol = 1e-6;    // relative regularity threshold on form eigenvalues
  int quad_steps = 4000;         // Simpson steps for L2 / weighted quadratures
  int flow_initial_nodes = 33;   // spectral-flow starting partition
  int flow_max_depth = 48;       // spectral-flow bisection depth
};

struct CrossingRecord {
  int segment_index = 0;
  double s = 0;                  // parameter value of the crossing
  int dim_real = 0;
  MatrixXd form;                 // crossing form wrt the traversal direction
  int n_plus = 0;
  int n_minus = 0;
  int contribution = 0;          // endpoint rules folded in
  bool at_begin = false;
  bool at_end = false;
};

struct MaslovResult {
  int index = 0;                       // slot-weighted total over the path
  std::vector<int> segment_indices;    // per-leg single-path index
  std::vector<CrossingRecord> crossings;
};

/// Moving / fixed frames of a leg at parameter value s.
LagrangianFrame segment_moving_frame(const Potential& pot, const Segment& seg, double s,
                                     const EngineOptions& opts = {});
LagrangianFrame segment_reference_frame(const Potential& pot, const Segment& seg,
                                        const EngineOptions& opts = {});

/// Crossing locations of one leg: 200-cell scan of the intersection gap
/// sigma_min([A | -B]) followed by golden-section refinement.
std::vector<CrossingRecord> find_crossings(const Potential& pot, const Segment& seg,
                                           int segment_index,
                                           const EngineOptions& opts = {});

/// Crossing forms with respect to the traversal direction of the leg.
/// Bases are intersection vectors in the trace layout (y(a), y(b), -y'(a), y'(b)).
MatrixXd crossing_form_lambda(const Potential& pot, const Segment& seg, double s,
                              const std::vector<VectorXd>& basis,
                              const EngineOptions& opts = {});
MatrixXd crossing_form_theta(const Potential& pot, const Segment& seg,
                             const std::vector<VectorXd>& basis);
/// Parametric derivative form for the scaling leg; evaluated by quadrature
/// with the weight 2t V(tx) + t^2 x V'(tx) - 2 t lambda and cross-checked
/// against an equivalent boundary-data expression to 1e-6.
MatrixXd crossing_form_t(const Potential& pot, const Segment& seg, double s,
                         const std::vector<VectorXd>& basis,
                         const EngineOptions& opts = {});

/// Crossing-form backend: interior crossings contribute their signature,
/// a crossing at the leg start contributes -n_minus, at the leg end +n_plus.
/// Throws NonRegularCrossingError when a form is degenerate.
MaslovResult maslov_crossing_form(const Potential& pot, const PathSpec& path,
                                  const EngineOptions& opts = {});

/// Spectral-flow backend: tracks the eigenphases of the Souriau unitary
/// through -1 over an adaptively refined partition.
MaslovResult maslov_spectral_flow(const Potential& pot, const PathSpec& path,
                                  const EngineOptions& opts = {});

/// Generic spectral flow of u -> path(u) against a fixed reference over
/// [0, 1]; building block for both the segment backend and tests.
/// `seeds` are parameter values where crossings are expected: the initial
/// partition is clustered geometrically around them, since eigenphases can
/// sweep through pi inside an interval whose endpoint phase sets look
/// unchanged (the adaptive endpoint test alone cannot detect such loops).
int spectral_flow(const std::function<LagrangianFrame(double)>& path,
                  const LagrangianFrame& reference, const EngineOptions& opts = {},
                  const std::vector<double>& seeds = {});

/// Rectangle in the (lambda, theta) plane bounding N(r, theta2) - N(r, theta1):
/// lambda up the theta1 edge, theta across at lambda = r, lambda back down at
/// theta2, theta back at lambda_floor (crossing-free bottom edge).
PathSpec rectangle_theta(const Potential& pot, double r, double theta1, double theta2);

/// Rectangle in the (lambda, t) plane bounding Mor(1) - Mor(tau):
/// all four legs move the trace plane against the fixed boundary plane.
PathSpec rectangle_t(const Potential& pot, double theta, double tau, double r = 0);

}  // namespace maslov
