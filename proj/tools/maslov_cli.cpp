#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Core>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "maslov/harness.hpp"
#include "maslov/io.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;
using nlohmann::json;

struct Common {
  std::string config_path;
  std::string out_path;
  long seed = -1;
  double tol = -1;
  std::string backend = "both";
};

maslov::RunConfig resolve_config(const Common& common) {
  maslov::RunConfig cfg;
  if (!common.config_path.empty()) cfg = maslov::load_config(common.config_path);
  if (common.seed >= 0) cfg.seed = static_cast<unsigned>(common.seed);
  if (common.tol > 0) cfg.integrator_tol = common.tol;
  cfg.validate();
  return cfg;
}

void emit_csv(const std::string& out_path, const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows) {
  if (!out_path.empty()) {
    maslov::write_csv(out_path, header, rows);
    return;
  }
  for (size_t i = 0; i < header.size(); ++i)
    std::cout << header[i] << (i + 1 < header.size() ? "," : "\n");
  for (const auto& row : rows)
    for (size_t i = 0; i < row.size(); ++i)
      std::cout << row[i] << (i + 1 < row.size() ? "," : "\n");
}

void emit_json(const std::string& out_path, const json& j) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw maslov::Error("cannot open " + out_path);
  out << j.dump(2) << "\n";
}

std::string sibling_svg(const std::string& out_path) {
  auto dot = out_path.rfind('.');
  return (dot == std::string::npos ? out_path : out_path.substr(0, dot)) + ".svg";
}

json crossing_json(const maslov::CrossingRecord& rec) {
  return json{{"segment", rec.segment_index},
              {"s", rec.s},
              {"dim_real", rec.dim_real},
              {"n_plus", rec.n_plus},
              {"n_minus", rec.n_minus},
              {"contribution", rec.contribution}};
}

int run_spectrum(const Common& common, double theta, double t, double cutoff,
                 const std::string& method) {
  maslov::RunConfig cfg = resolve_config(common);
  maslov::Potential pot = cfg.build();
  std::vector<std::vector<std::string>> rows;
  auto append = [&](const maslov::SpectrumResult& spec, const char* tag) {
    int index = 0;
    for (const auto& [lam, mult] : spec.eigenvalues)
      rows.push_back({std::to_string(index++), maslov::format_double(lam),
                      std::to_string(mult), tag});
  };
  if (method == "floquet" || method == "both")
    append(maslov::floquet_spectrum(pot, theta, t, maslov::spectral_floor(pot) - 0.5,
                                    cutoff, cfg.integrator_tol),
           "monodromy_roots");
  if (method == "fd" || method == "both")
    append(maslov::fd_spectrum(pot, theta, t, cfg.fd_grid, cutoff), "finite_difference");
  emit_csv(common.out_path, {"index", "lambda", "multiplicity", "method"}, rows);
  return 0;
}

int run_maslov(const Common& common, double theta1, double theta2, double r,
               bool closed) {
  maslov::RunConfig cfg = resolve_config(common);
  maslov::Potential pot = cfg.build();
  maslov::EngineOptions engine;
  engine.integrator_tol = cfg.integrator_tol;

  maslov::PathSpec path;
  if (closed) {
    path = maslov::rectangle_theta(pot, r, theta1, theta2);
  } else {
    maslov::Segment seg;
    seg.variable = maslov::Segment::Variable::theta;
    seg.s_begin = theta1;
    seg.s_end = theta2;
    seg.lambda = r;
    path.segments = {seg};
  }

  json out{{"theta1", theta1}, {"theta2", theta2}, {"r", r}, {"closed", closed}};
  bool agree = true;
  if (common.backend == "crossing-form" || common.backend == "both") {
    maslov::MaslovResult res = maslov::maslov_crossing_form(pot, path, engine);
    out["crossing_form"] = {{"index", res.index},
                            {"segments", res.segment_indices}};
    json cr = json::array();
    for (const auto& rec : res.crossings) cr.push_back(crossing_json(rec));
    out["crossings"] = cr;
    out["index"] = res.index;
  }
  if (common.backend == "spectral-flow" || common.backend == "both") {
    maslov::MaslovResult res = maslov::maslov_spectral_flow(pot, path, engine);
    out["spectral_flow"] = {{"index", res.index}, {"segments", res.segment_indices}};
    out["index"] = res.index;
  }
  if (common.backend == "both")
    agree = out["crossing_form"]["segments"] == out["spectral_flow"]["segments"];
  out["backends_agree"] = agree;
  emit_json(common.out_path, out);
  return agree ? 0 : 1;
}

int run_verify(const Common& common, const std::string& suite) {
  maslov::RunConfig cfg = resolve_config(common);
  maslov::HarnessOptions opts;
  opts.engine.integrator_tol = cfg.integrator_tol;
  opts.seed = cfg.seed;
  maslov::SuiteResult result = maslov::run_suite(suite, opts);

  json reports = json::array();
  for (const maslov::CheckReport& rep : result.reports) {
    reports.push_back({{"claim", rep.claim_id},
                       {"inputs", rep.inputs},
                       {"lhs", rep.lhs},
                       {"rhs", rep.rhs},
                       {"pass", rep.pass},
                       {"rejected", rep.rejected},
                       {"details", rep.details}});
    std::cout << (rep.rejected ? "REJECT" : (rep.pass ? "PASS" : "FAIL")) << "  "
              << rep.claim_id << "  " << rep.inputs;
    if (!rep.rejected)
      std::cout << "  lhs=" << rep.lhs << " rhs=" << rep.rhs;
    std::cout << "\n";
    if (!rep.pass && !rep.details.empty()) std::cout << "       " << rep.details << "\n";
  }
  json out{{"suite", suite}, {"exit_code", result.exit_code}, {"reports", reports}};
  if (!common.out_path.empty()) emit_json(common.out_path, out);
  std::cout << "suite " << suite << ": exit " << result.exit_code << "\n";
  return result.exit_code;
}

int run_bands(const Common& common, int k_max) {
  maslov::RunConfig cfg = resolve_config(common);
  maslov::Potential pot = cfg.build();
  auto bands = maslov::bands(pot, k_max, cfg.integrator_tol);
  std::vector<std::vector<std::string>> rows;
  for (size_t k = 0; k < bands.size(); ++k)
    rows.push_back({std::to_string(k), maslov::format_double(bands[k].first),
                    maslov::format_double(bands[k].second)});
  emit_csv(common.out_path, {"k", "alpha_k", "beta_k"}, rows);
  if (!common.out_path.empty())
    maslov::write_svg_bands(sibling_svg(common.out_path), "spectral bands", bands);
  return 0;
}

int run_curves(const Common& common, std::vector<int> branches, int steps,
               double theta_lo, double theta_hi) {
  maslov::RunConfig cfg = resolve_config(common);
  maslov::Potential pot = cfg.build();
  if (branches.empty()) branches = {0};
  std::vector<std::vector<std::string>> rows;
  std::vector<maslov::SvgSeries> series;
  double step = (theta_hi - theta_lo) / steps;
  for (int k : branches) {
    auto curve = maslov::eigencurve(pot, k, theta_lo, theta_hi, step, cfg.integrator_tol);
    maslov::SvgSeries s;
    s.label = "branch " + std::to_string(k);
    for (const auto& pt : curve) {
      auto se = maslov::dlambda_dtheta(pot, pt, 5e-4, cfg.integrator_tol);
      rows.push_back({maslov::format_double(pt.theta), std::to_string(k),
                      maslov::format_double(pt.lambda),
                      maslov::format_double(se.boundary_formula)});
      s.points.emplace_back(pt.theta, pt.lambda);
    }
    series.push_back(std::move(s));
  }
  emit_csv(common.out_path, {"theta", "k", "lambda", "dlambda_dtheta"}, rows);
  if (!common.out_path.empty())
    maslov::write_svg_curves(sibling_svg(common.out_path), "eigenvalue curves", series);
  return 0;
}

int run_rescale(const Common& common, double tau, double theta, double r) {
  maslov::RunConfig cfg = resolve_config(common);
  maslov::Potential pot = cfg.build();
  maslov::HarnessOptions opts;
  opts.engine.integrator_tol = cfg.integrator_tol;
  opts.seed = cfg.seed;

  maslov::CheckReport thm31 = maslov::check_theorem_3_1(
      pot, tau, theta, r, std::numeric_limits<double>::quiet_NaN(), opts);
  maslov::CheckReport thm42 = maslov::check_theorem_4_2(pot, tau, theta, opts);

  json out{{"tau", tau},
           {"theta", theta},
           {"r", r},
           {"thm_3_1", {{"lhs", thm31.lhs}, {"rhs", thm31.rhs}, {"pass", thm31.pass},
                        {"details", thm31.details}}},
           {"thm_4_2", {{"lhs", thm42.lhs}, {"rhs", thm42.rhs}, {"pass", thm42.pass},
                        {"rejected", thm42.rejected}, {"details", thm42.details}}}};
  if (tau < 1.0) {
    maslov::EngineOptions engine;
    engine.integrator_tol = cfg.integrator_tol;
    maslov::Segment seg;
    seg.variable = maslov::Segment::Variable::t;
    seg.s_begin = tau;
    seg.s_end = 1.0;
    seg.theta = theta;
    seg.lambda = 0.0;
    maslov::PathSpec path;
    path.segments = {seg};
    maslov::MaslovResult res = maslov::maslov_crossing_form(pot, path, engine);
    json cr = json::array();
    int sum = 0;
    for (const auto& rec : res.crossings) {
      cr.push_back(crossing_json(rec));
      sum += rec.dim_real / 2;
    }
    out["crossings"] = cr;
    out["mor_diff"] = thm42.rejected ? json() : json(thm42.lhs);
    out["sum_dim_complex"] = sum;
  } else {
    out["crossings"] = json::array();
    out["mor_diff"] = 0;
    out["sum_dim_complex"] = 0;
  }
  emit_json(common.out_path, out);
  if (thm42.rejected || thm31.rejected) return 2;
  return (thm31.pass && thm42.pass) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("MASLOV_THREADS")) {
    int cap = std::atoi(threads);
    if (cap > 0) Eigen::setNbThreads(cap);
  }

  CLI::App app{"Eigenvalue counting for theta-periodic Schrodinger operators "
               "via Maslov indices"};
  app.require_subcommand(1);

  Common common;
  app.add_option("--config", common.config_path, "JSON config file");
  app.add_option("--out", common.out_path, "output file path");
  app.add_option("--seed", common.seed, "override RNG seed");
  app.add_option("--tol", common.tol, "override integrator tolerance");
  app.add_option("--backend", common.backend, "Maslov backend")
      ->check(CLI::IsMember({"crossing-form", "spectral-flow", "both"}));

  double theta = kPi / 2, t = 1.0, cutoff = 2.0;
  std::string method = "floquet";
  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues below a cutoff");
  spectrum->add_option("--theta", theta, "boundary twist angle");
  spectrum->add_option("--t", t, "scaling parameter in (0,1]");
  spectrum->add_option("--cutoff", cutoff, "upper eigenvalue cutoff");
  spectrum->add_option("--method", method, "spectral method")
      ->check(CLI::IsMember({"floquet", "fd", "both"}));

  double theta1 = kPi / 4, theta2 = kPi / 2, r = 0.6;
  bool closed = false;
  CLI::App* maslov_cmd = app.add_subcommand("maslov", "Maslov index of a theta sweep");
  maslov_cmd->add_option("--theta1", theta1, "sweep start");
  maslov_cmd->add_option("--theta2", theta2, "sweep end");
  maslov_cmd->add_option("--r", r, "spectral level lambda = r");
  maslov_cmd->add_flag("--closed", closed, "full rectangle instead of the theta edge");

  std::string suite = "all";
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite,
                     "thm22|cor33|cor34|thmfe|mon1|thm31|thm42|all");

  int k_max = 5;
  CLI::App* bands_cmd = app.add_subcommand("bands", "spectral band edges");
  bands_cmd->add_option("--kmax", k_max, "number of bands");

  std::vector<int> branches;
  int steps = 40;
  double theta_lo = 0.15, theta_hi = kPi - 0.15;
  CLI::App* curves = app.add_subcommand("curves", "eigenvalue curves lambda_k(theta)");
  curves->add_option("--branches", branches, "branch indices");
  curves->add_option("--steps", steps, "theta steps");
  curves->add_option("--theta-lo", theta_lo, "lower theta");
  curves->add_option("--theta-hi", theta_hi, "upper theta");

  double tau = 0.5, rtheta = 0.0, rr = 0.0;
  CLI::App* rescale = app.add_subcommand("rescale", "scaling-family report");
  rescale->add_option("--tau", tau, "scaling parameter tau in (0,1]");
  rescale->add_option("--theta", rtheta, "boundary twist angle");
  rescale->add_option("--r", rr, "spectral level");

  for (CLI::App* sub : {spectrum, maslov_cmd, verify, bands_cmd, curves, rescale})
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (spectrum->parsed()) return run_spectrum(common, theta, t, cutoff, method);
    if (maslov_cmd->parsed()) return run_maslov(common, theta1, theta2, r, closed);
    if (verify->parsed()) return run_verify(common, suite);
    if (bands_cmd->parsed()) return run_bands(common, k_max);
    if (curves->parsed()) return run_curves(common, branches, steps, theta_lo, theta_hi);
    if (rescale->parsed()) return run_rescale(common, tau, rtheta, rr);
  } catch (const maslov::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
