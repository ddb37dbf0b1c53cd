#pragma once

#include <string>
#include <utility>
#include <vector>

#include "maslov/potential.hpp"

namespace maslov {

/// Run configuration: potential preset plus numerical knobs.  Loaded from a
/// JSON file; CLI flags override individual fields.
struct RunConfig {
  std::string preset = "free";  // free | constant | diagonal_cosine | grid
  int n = 1;
  double a = 0;
  double b = 2 * 3.14159265358979323846;
  MatrixXd constant_value;               // preset "constant"
  std::vector<double> amplitudes;        // preset "diagonal_cosine"
  std::vector<double> frequencies;
  std::vector<double> offsets;
  std::string grid_path;                 // preset "grid"
  bool grid_differentiable = false;

  double integrator_tol = 1e-11;
  int fd_grid = 2000;
  double rank_tol = 1e-9;
  unsigned seed = 12345;

  Potential build() const;
  void validate() const;
};

RunConfig load_config(const std::string& path);

/// 17-significant-digit formatting for round-trip-exact CSV.
std::string format_double(double value);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Grid potential CSV: columns x, v_11, v_12, ..., v_nn (upper triangle,
/// row-major, mirrored to the lower triangle).
Potential load_grid_potential(const std::string& path, bool differentiable);

/// One polyline per series; axes and labels included.
struct SvgSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};
void write_svg_curves(const std::string& path, const std::string& title,
                      const std::vector<SvgSeries>& series);

/// Band diagram: one filled bar per interval [alpha_k, beta_k].
void write_svg_bands(const std::string& path, const std::string& title,
                     const std::vector<std::pair<double, double>>& bands);

}  // namespace maslov
