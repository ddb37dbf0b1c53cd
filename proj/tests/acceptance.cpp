// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.  Criteria mirror the verification suites plus the closed-form
// anchors; budgets are wall-clock on a single core.

#include <maslov/harness.hpp>
#include <maslov/io.hpp>
#include <maslov/maslov_index.hpp>
#include <maslov/spectral.hpp>
#include <maslov/symplectic.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace maslov;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;

namespace {

bool g_all_ok = true;

void report(int k, bool ok, const std::string& what) {
  std::printf("criterion %2d: %s  %s\n", k, ok ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
  g_all_ok = g_all_ok && ok;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Potential free_potential() {
  return Potential::constant(MatrixXd::Zero(1, 1), 0.0, 2 * M_PI);
}

std::vector<double> free_eigenvalues(double theta, int count) {
  std::vector<double> vals;
  for (int k = -count - 1; k <= count + 1; ++k)
    vals.push_back(std::pow(k + theta / (2 * M_PI), 2.0));
  std::sort(vals.begin(), vals.end());
  vals.resize(count);
  return vals;
}

bool details_mention(const SuiteResult& res, const std::string& needle) {
  for (const CheckReport& rep : res.reports)
    if (rep.details.find(needle) != std::string::npos) return true;
  return false;
}

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

void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  Potential pot = free_potential();
  bool ok = true;
  for (double theta : {M_PI / 4, M_PI / 2, 3 * M_PI / 4}) {
    std::vector<double> expect = free_eigenvalues(theta, 6);
    SpectrumResult spec =
        floquet_spectrum(pot, theta, 1.0, -0.5, expect.back() + 1e-6);
    std::vector<double> got;
    for (const auto& [lam, mult] : spec.eigenvalues)
      for (int i = 0; i < mult; ++i) got.push_back(lam);
    if (got.size() < expect.size()) { ok = false; continue; }
    for (size_t i = 0; i < expect.size(); ++i)
      ok = ok && std::fabs(got[i] - expect[i]) <= 1e-9;

    SpectrumResult fd = fd_spectrum(pot, theta, 1.0, 2000, expect.back() + 0.1);
    if (fd.eigenvalues.size() < expect.size()) { ok = false; continue; }
    for (size_t i = 0; i < expect.size(); ++i) {
      double rel = std::fabs(fd.eigenvalues[i].first - expect[i]) /
                   std::max(1e-3, std::fabs(expect[i]));
      ok = ok && rel <= 1e-4;
    }
  }
  double dt = seconds_since(t0);
  ok = ok && dt <= 10.0;
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "free-operator exactness (floquet 1e-9, fd 1e-4) in %.1f s", dt);
  report(1, ok, buf);
}

void criterion_5() {
  bool ok = true;
  Potential pots[] = {free_potential(),
                      Potential::diagonal_cosine({2.0}, {1.0}, 0.0, 2 * M_PI)};
  for (const Potential& pot : pots)
    for (int branch : {0, 1}) {
      CheckReport rep = check_theorem_FE(pot, branch, M_PI / 4, 3 * M_PI / 4, 20);
      ok = ok && rep.pass;
    }
  EigencurvePoint p = eigencurve_point(free_potential(), M_PI / 2, 1.0 / 16.0);
  SlopeEvaluations slopes = dlambda_dtheta(free_potential(), p);
  ok = ok && std::fabs(slopes.boundary_formula - 1.0 / (4 * M_PI)) <= 1e-8;
  report(5, ok, "slope agreement on 20 theta-points per branch; free closed form 1e-8");
}

void criterion_6() {
  Potential pot = Potential::constant(-5.0 * MatrixXd::Ones(1, 1), -M_PI, M_PI);
  CheckReport rep = check_theorem_4_2(pot, 0.3, 0.0);
  bool ok = rep.pass && rep.lhs == 4;

  Segment seg;
  seg.variable = Segment::Variable::t;
  seg.s_begin = 0.3;
  seg.s_end = 1.0;
  seg.theta = 0.0;
  seg.lambda = 0.0;
  std::vector<CrossingRecord> crossings = find_crossings(pot, seg, 0);
  ok = ok && crossings.size() == 2;
  if (crossings.size() == 2) {
    ok = ok && std::fabs(crossings[0].s - 1.0 / std::sqrt(5.0)) <= 1e-6;
    ok = ok && std::fabs(crossings[1].s - 2.0 / std::sqrt(5.0)) <= 1e-6;
    for (const CrossingRecord& c : crossings) {
      ok = ok && c.dim_real == 4;  // dim_C ker = 2
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(c.form);
      ok = ok && es.eigenvalues().maxCoeff() < 0.0;
    }
  }
  SuiteResult thm31 = run_suite("thm31");
  ok = ok && thm31.exit_code == 0;
  report(6, ok, "V = -5 scaling scenario (Mor diff 4, conjugate points) + thm31 suite");
}

void criterion_7() {
  std::mt19937_64 rng(2024);
  int mismatches = 0, done = 0;
  std::uniform_int_distribution<int> pick_m(0, 2);
  const int ms[] = {2, 4, 8};
  while (done < 100) {
    int m = ms[pick_m(rng)];
    std::uniform_int_distribution<int> pick_k(0, m);
    int k = pick_k(rng);
    SymplecticSpace s = make_standard_space(m);
    MatrixXd a = MatrixXd::Zero(2 * m, m), b = MatrixXd::Zero(2 * m, m);
    a.topRows(m).setIdentity();
    for (int j = 0; j < k; ++j) b(j, j) = 1;
    for (int j = k; j < m; ++j) b(m + j, j) = 1;
    MatrixXcd q = random_unitary(m, rng);
    MatrixXd r(2 * m, 2 * m);
    r.topLeftCorner(m, m) = q.real();
    r.topRightCorner(m, m) = -q.imag();
    r.bottomLeftCorner(m, m) = q.imag();
    r.bottomRightCorner(m, m) = q.real();
    LagrangianFrame x(s, r * a), y(s, r * b);
    int rank_dim = intersect(x, y).dim_real;
    int souriau_dim = minus_one_multiplicity(souriau_map(x, y));
    if (rank_dim != k || souriau_dim != k) ++mismatches;
    ++done;
  }
  report(7, mismatches == 0,
         "souriau -1 multiplicity vs rank intersection on 100 seeded pairs");
}

}  // namespace

int main() {
  criterion_1();

  auto t22 = std::chrono::steady_clock::now();
  SuiteResult thm22 = run_suite("thm22");
  double dt22 = seconds_since(t22);
  {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "theorem 2.2 on the free anchor + 50 seeded scenarios in %.0f s",
                  dt22);
    report(2, thm22.exit_code == 0 && dt22 <= 180.0, buf);
  }
  report(3,
         thm22.exit_code == 0 && !details_mention(thm22, "backend disagreement") &&
             !details_mention(thm22, "closed rectangle"),
         "backend agreement per segment; closed rectangles sum to zero");

  SuiteResult cor34 = run_suite("cor34");
  report(4, cor34.exit_code == 0, "corollary 3.4 counting bounds, zero violations");

  criterion_5();
  criterion_6();
  criterion_7();

  auto tall = std::chrono::steady_clock::now();
  SuiteResult all = run_suite("all");
  double dtall = seconds_since(tall);

  report(8, all.exit_code == 0 && !details_mention(all, "realification mismatch"),
         "every crossing dim_real equals 2 dim_C ker across all scenarios");

  bool mon_ok = true;
  for (const CheckReport& rep : all.reports)
    if (rep.claim_id == "prop-mon1") mon_ok = mon_ok && (rep.pass || rep.rejected);
  report(9, mon_ok, "branch monotonicity and nonvanishing Wronskian for n = 1");

  {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "verify --suite all: exit %d in %.0f s",
                  all.exit_code, dtall);
    report(10, all.exit_code == 0 && dtall <= 600.0, buf);
  }

  return g_all_ok ? 0 : 1;
}
