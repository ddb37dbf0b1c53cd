#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <maslov/io.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace maslov;

namespace {

std::string temp_path(const std::string& name) {
  return std::string("/tmp/maslov_test_") + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("format_double round-trips exactly") {
  for (double x : {0.0, 1.0 / 3.0, -2.718281828459045e-7, 1e17, 0.1, 9.0 / 16.0}) {
    std::string s = format_double(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
}

TEST_CASE("config loads from JSON and builds the potential") {
  std::string path = temp_path("config.json");
  {
    std::ofstream out(path);
    out << R"({
      "n": 2,
      "interval": [0.0, 6.283185307179586],
      "integrator_tol": 1e-10,
      "fd_grid": 500,
      "seed": 42,
      "potential": {
        "preset": "diagonal_cosine",
        "amplitudes": [2.0, -1.0],
        "frequencies": [1.0, 2.0]
      }
    })";
  }
  RunConfig cfg = load_config(path);
  CHECK(cfg.n == 2);
  CHECK(cfg.fd_grid == 500);
  CHECK(cfg.seed == 42u);
  CHECK(cfg.integrator_tol == 1e-10);
  Potential pot = cfg.build();
  CHECK(pot.n() == 2);
  CHECK(pot(0.0)(0, 0) == doctest::Approx(2.0));
  std::remove(path.c_str());
}

TEST_CASE("config validation rejects bad input") {
  RunConfig cfg;
  cfg.preset = "constant";
  cfg.n = 2;
  cfg.constant_value = Eigen::MatrixXd::Zero(1, 1);  // wrong shape
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.preset = "nonsense";
  CHECK_THROWS_AS(cfg.validate(), Error);

  std::string path = temp_path("bad.json");
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(load_config(path), Error);
  std::remove(path.c_str());
}

TEST_CASE("csv writer emits header plus rows") {
  std::string path = temp_path("out.csv");
  write_csv(path, {"x", "y"}, {{"1", "2"}, {"3", "4"}});
  CHECK(slurp(path) == "x,y\n1,2\n3,4\n");
  CHECK_THROWS_AS(write_csv(path, {"x", "y"}, {{"1"}}), Error);
  std::remove(path.c_str());
}

TEST_CASE("grid potential round-trips through its CSV format") {
  std::string path = temp_path("grid.csv");
  {
    std::ofstream out(path);
    out << "x,v_11,v_12,v_22\n";
    for (int i = 0; i <= 40; ++i) {
      double x = i * 0.1;
      out << x << "," << 1.0 + 0.1 * x << "," << 0.5 << "," << 2.0 - 0.1 * x << "\n";
    }
  }
  Potential pot = load_grid_potential(path, false);
  CHECK(pot.n() == 2);
  CHECK(pot(2.0)(0, 0) == doctest::Approx(1.2).epsilon(1e-6));
  CHECK(pot(2.0)(0, 1) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(pot(2.0)(1, 0) == doctest::Approx(0.5).epsilon(1e-6));
  std::remove(path.c_str());
}

TEST_CASE("svg writers produce valid-looking documents") {
  std::string curves = temp_path("curves.svg");
  SvgSeries series;
  series.label = "branch 0";
  for (int i = 0; i <= 10; ++i) series.points.emplace_back(i * 0.1, i * i * 0.01);
  write_svg_curves(curves, "eigencurves", {series});
  std::string doc = slurp(curves);
  CHECK(doc.find("<svg") != std::string::npos);
  CHECK(doc.find("polyline") != std::string::npos);
  std::remove(curves.c_str());

  std::string bands_path = temp_path("bands.svg");
  write_svg_bands(bands_path, "bands", {{0.0, 1.0}, {1.5, 2.5}});
  std::string bands_doc = slurp(bands_path);
  CHECK(bands_doc.find("<svg") != std::string::npos);
  CHECK(bands_doc.find("rect") != std::string::npos);
  std::remove(bands_path.c_str());
}
