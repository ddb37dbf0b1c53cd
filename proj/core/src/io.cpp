#include "maslov/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace maslov {

using nlohmann::json;

Potential RunConfig::build() const {
  validate();
  if (preset == "free")
    return Potential::constant(MatrixXd::Zero(n, n), a, b);
  if (preset == "constant")
    return Potential::constant(constant_value, a, b);
  if (preset == "diagonal_cosine")
    return Potential::diagonal_cosine(amplitudes, frequencies, a, b, offsets);
  if (preset == "grid")
    return load_grid_potential(grid_path, grid_differentiable);
  throw Error("RunConfig: unknown preset '" + preset + "'");
}

void RunConfig::validate() const {
  if (!(a < b)) throw Error("RunConfig: interval must satisfy a < b");
  if (n < 1) throw Error("RunConfig: n must be >= 1");
  if (!(integrator_tol > 0) || !(rank_tol > 0))
    throw Error("RunConfig: tolerances must be positive");
  if (fd_grid < 16) throw Error("RunConfig: fd_grid too small");
  if (preset == "constant") {
    if (constant_value.rows() != n || constant_value.cols() != n)
      throw Error("RunConfig: constant value must be n x n");
  } else if (preset == "diagonal_cosine") {
    if (static_cast<int>(amplitudes.size()) != n ||
        frequencies.size() != amplitudes.size())
      throw Error("RunConfig: diagonal_cosine needs n amplitudes and frequencies");
    if (!offsets.empty() && offsets.size() != amplitudes.size())
      throw Error("RunConfig: offsets size mismatch");
  } else if (preset == "grid") {
    if (grid_path.empty()) throw Error("RunConfig: grid preset needs a path");
  } else if (preset != "free") {
    throw Error("RunConfig: unknown preset '" + preset + "'");
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("load_config: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(std::string("load_config: invalid JSON: ") + e.what());
  }

  RunConfig cfg;
  if (j.contains("n")) cfg.n = j["n"].get<int>();
  if (j.contains("interval")) {
    auto iv = j["interval"];
    if (!iv.is_array() || iv.size() != 2)
      throw Error("load_config: interval must be [a, b]");
    cfg.a = iv[0].get<double>();
    cfg.b = iv[1].get<double>();
  }
  if (j.contains("integrator_tol")) cfg.integrator_tol = j["integrator_tol"].get<double>();
  if (j.contains("fd_grid")) cfg.fd_grid = j["fd_grid"].get<int>();
  if (j.contains("rank_tol")) cfg.rank_tol = j["rank_tol"].get<double>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<unsigned>();

  if (j.contains("potential")) {
    const json& p = j["potential"];
    cfg.preset = p.value("preset", "free");
    if (p.contains("value")) {
      const json& v = p["value"];
      if (v.is_number()) {
        cfg.constant_value = v.get<double>() * MatrixXd::Identity(cfg.n, cfg.n);
      } else if (v.is_array()) {
        cfg.constant_value.resize(cfg.n, cfg.n);
        for (int i = 0; i < cfg.n; ++i)
          for (int k = 0; k < cfg.n; ++k)
            cfg.constant_value(i, k) = v.at(i).at(k).get<double>();
      } else {
        throw Error("load_config: potential.value must be a number or matrix");
      }
    }
    if (p.contains("amplitudes"))
      cfg.amplitudes = p["amplitudes"].get<std::vector<double>>();
    if (p.contains("frequencies"))
      cfg.frequencies = p["frequencies"].get<std::vector<double>>();
    if (p.contains("offsets")) cfg.offsets = p["offsets"].get<std::vector<double>>();
    if (p.contains("path")) cfg.grid_path = p["path"].get<std::string>();
    if (p.contains("differentiable"))
      cfg.grid_differentiable = p["differentiable"].get<bool>();
  }
  cfg.validate();
  return cfg;
}

std::string format_double(double value) {
  char buf[40];
  snprintf(buf, sizeof(buf), "%.17g", value);
  return std::string(buf);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw Error("write_csv: cannot open " + path);
  for (size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 < header.size() ? "," : "\n");
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw Error("write_csv: ragged row");
    for (size_t i = 0; i < row.size(); ++i)
      out << row[i] << (i + 1 < row.size() ? "," : "\n");
  }
  if (!out) throw Error("write_csv: write failed for " + path);
}

Potential load_grid_potential(const std::string& path, bool differentiable) {
  std::ifstream in(path);
  if (!in) throw Error("load_grid_potential: cannot open " + path);
  std::vector<double> xs;
  std::vector<std::vector<double>> entries;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::vector<double> fields;
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        fields.push_back(std::stod(cell));
      } catch (...) {
        fields.clear();
        break;
      }
    }
    if (fields.empty()) {
      if (first) { first = false; continue; }  // header row
      throw Error("load_grid_potential: unparseable row in " + path);
    }
    first = false;
    xs.push_back(fields[0]);
    entries.emplace_back(fields.begin() + 1, fields.end());
  }
  if (xs.size() < 4) throw Error("load_grid_potential: need >= 4 samples");
  size_t m = entries.front().size();
  int n = static_cast<int>(std::lround((std::sqrt(8.0 * m + 1) - 1) / 2));
  if (static_cast<size_t>(n * (n + 1) / 2) != m)
    throw Error("load_grid_potential: column count is not a triangular number");

  std::vector<MatrixXd> values;
  for (const auto& row : entries) {
    if (row.size() != m) throw Error("load_grid_potential: ragged data");
    MatrixXd v(n, n);
    int idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j, ++idx) v(i, j) = v(j, i) = row[idx];
    values.push_back(v);
  }
  return Potential::grid(xs, values, differentiable);
}

namespace {

constexpr int kWidth = 720, kHeight = 480, kMargin = 56;

struct Box {
  double xlo = 0, xhi = 1, ylo = 0, yhi = 1;
  double px(double x) const {
    return kMargin + (x - xlo) / (xhi - xlo) * (kWidth - 2 * kMargin);
  }
  double py(double y) const {
    return kHeight - kMargin - (y - ylo) / (yhi - ylo) * (kHeight - 2 * kMargin);
  }
};

void svg_header(std::ofstream& out, const std::string& title, const Box& box) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
  out << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
      << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
      << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  char buf[64];
  snprintf(buf, sizeof(buf), "%.4g", box.xlo);
  out << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 18
      << "\" font-family=\"sans-serif\" font-size=\"11\">" << buf << "</text>\n";
  snprintf(buf, sizeof(buf), "%.4g", box.xhi);
  out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 18
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << buf
      << "</text>\n";
  snprintf(buf, sizeof(buf), "%.4g", box.ylo);
  out << "<text x=\"" << kMargin - 6 << "\" y=\"" << kHeight - kMargin
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << buf
      << "</text>\n";
  snprintf(buf, sizeof(buf), "%.4g", box.yhi);
  out << "<text x=\"" << kMargin - 6 << "\" y=\"" << kMargin + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << buf
      << "</text>\n";
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

void write_svg_curves(const std::string& path, const std::string& title,
                      const std::vector<SvgSeries>& series) {
  std::ofstream out(path);
  if (!out) throw Error("write_svg_curves: cannot open " + path);
  Box box;
  bool any = false;
  for (const SvgSeries& s : series)
    for (const auto& [x, y] : s.points) {
      if (!any) {
        box.xlo = box.xhi = x;
        box.ylo = box.yhi = y;
        any = true;
      }
      box.xlo = std::min(box.xlo, x);
      box.xhi = std::max(box.xhi, x);
      box.ylo = std::min(box.ylo, y);
      box.yhi = std::max(box.yhi, y);
    }
  if (!any) throw Error("write_svg_curves: no data");
  if (box.xhi - box.xlo < 1e-12) box.xhi = box.xlo + 1;
  if (box.yhi - box.ylo < 1e-12) box.yhi = box.ylo + 1;

  svg_header(out, title, box);
  for (size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % 8];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" "
        << "points=\"";
    for (const auto& [x, y] : series[i].points)
      out << box.px(x) << "," << box.py(y) << " ";
    out << "\"/>\n";
    out << "<text x=\"" << kWidth - kMargin + 4 << "\" y=\"" << kMargin + 16 * i + 12
        << "\" fill=\"" << color << "\" font-family=\"sans-serif\" font-size=\"11\">"
        << series[i].label << "</text>\n";
  }
  out << "</svg>\n";
}

void write_svg_bands(const std::string& path, const std::string& title,
                     const std::vector<std::pair<double, double>>& bands) {
  if (bands.empty()) throw Error("write_svg_bands: no data");
  std::ofstream out(path);
  if (!out) throw Error("write_svg_bands: cannot open " + path);
  Box box;
  box.xlo = bands.front().first;
  box.xhi = bands.back().second;
  if (box.xhi - box.xlo < 1e-12) box.xhi = box.xlo + 1;
  box.ylo = 0;
  box.yhi = 1;
  svg_header(out, title, box);
  for (size_t k = 0; k < bands.size(); ++k) {
    double x0 = box.px(bands[k].first), x1 = box.px(bands[k].second);
    out << "<rect x=\"" << x0 << "\" y=\"" << box.py(0.75) << "\" width=\""
        << std::max(x1 - x0, 1.0) << "\" height=\"" << box.py(0.25) - box.py(0.75)
        << "\" fill=\"" << kPalette[k % 8] << "\" fill-opacity=\"0.7\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace maslov
