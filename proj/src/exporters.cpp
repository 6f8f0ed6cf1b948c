#include "pmloc/exporters.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

#include "pmloc/error.hpp"

namespace pmloc {

namespace {

using nlohmann::json;

const char* axis_unit(int axis) { return axis < 2 ? "m" : "deg"; }

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

std::string matrix_text(const Eigen::MatrixXd& m, const std::string& name) {
  std::string out;
  for (int r = 0; r < m.rows(); ++r) {
    out += fmt::format("{}[{}]", name, r + 1);
    for (int c = 0; c < m.cols(); ++c) out += fmt::format(" {:15.8e}", m(r, c));
    out += "\n";
  }
  return out;
}

std::string cov_units(int dim) {
  return dim == 2 ? "m^2" : "m^2 (position), m*deg, deg^2 (heading)";
}

}  // namespace

std::string subset_label(const BeamSubset& subset) {
  std::string out;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i) out += "+";
    out += std::to_string(subset[i]);
  }
  return out;
}

std::string format_report(const EstimateReport& report, const BeamSubset& subset) {
  const int dim = static_cast<int>(report.mean.size());
  std::string out = "# point-mass position estimate\n";
  out += fmt::format("measurements {}\n", subset_label(subset));
  out += fmt::format("n_measurements {}\n", report.n_measurements);
  out += fmt::format("mean_x1_m {:.6f}\nmean_x2_m {:.6f}\n", report.mean(0), report.mean(1));
  if (dim == 3) out += fmt::format("mean_heading_deg {:.4f}\n", report.mean(2));
  out += fmt::format("rms_x1_m {:.6f}\nrms_x2_m {:.6f}\n", report.rms(0), report.rms(1));
  if (dim == 3) out += fmt::format("rms_heading_deg {:.4f}\n", report.rms(2));
  out += fmt::format("# conditional covariance, {}\n", cov_units(dim));
  out += matrix_text(report.covariance, "P");
  return out;
}

std::string report_json(const EstimateReport& report, const BeamSubset& subset) {
  json j;
  j["measurements"] = subset;
  j["n_measurements"] = report.n_measurements;
  json mean = json::array(), rms = json::array(), units = json::array();
  for (int i = 0; i < report.mean.size(); ++i) {
    mean.push_back(report.mean(i));
    rms.push_back(report.rms(i));
    units.push_back(axis_unit(i));
  }
  j["mean"] = mean;
  j["rms"] = rms;
  j["axis_units"] = units;
  j["covariance"] = matrix_json(report.covariance);
  return j.dump(2) + "\n";
}

std::string format_grid(const WeightGrid& grid) {
  const GridSpec& spec = grid.spec();
  const Box& b = grid.bounds();
  std::string out = fmt::format("{} {} {} {} {} {} {}\n", spec.n1, spec.n2, spec.nk, b.x1_min,
                                b.x1_max, b.x2_min, b.x2_max);
  const auto w = grid.weights();
  for (int m = 0; m < spec.nk; ++m) {
    for (int l = 0; l < spec.n2; ++l) {
      for (int j = 0; j < spec.n1; ++j) {
        if (j) out += ' ';
        out += fmt::format("{:.17g}", w[grid.index(j, l, m)]);
      }
      out += '\n';
    }
  }
  return out;
}

GridFile parse_grid(const std::string& text) {
  std::istringstream in(text);
  GridFile g;
  if (!(in >> g.n1 >> g.n2 >> g.nk >> g.bounds.x1_min >> g.bounds.x1_max >> g.bounds.x2_min >>
        g.bounds.x2_max)) {
    throw Error(ErrorKind::parse, "grid file: malformed header");
  }
  if (g.n1 < 1 || g.n2 < 1 || g.nk < 1) throw Error(ErrorKind::parse, "grid file: bad dimensions");
  const std::size_t n = static_cast<std::size_t>(g.n1) * g.n2 * g.nk;
  g.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(in >> g.weights[i])) {
      throw Error(ErrorKind::parse, fmt::format("grid file: expected {} weights, got {}", n, i));
    }
  }
  double extra = 0.0;
  if (in >> extra) throw Error(ErrorKind::parse, "grid file: trailing values");
  return g;
}

std::string heatmap_pgm(int n1, int n2, const std::vector<double>& position_weights) {
  if (position_weights.size() != static_cast<std::size_t>(n1) * n2) {
    throw Error(ErrorKind::invalid_argument, "heatmap weight count does not match the grid");
  }
  const double peak = *std::max_element(position_weights.begin(), position_weights.end());
  std::string out = fmt::format("P5\n{} {}\n255\n", n1, n2);
  const std::size_t header = out.size();
  out.resize(header + position_weights.size());
  for (int row = 0; row < n2; ++row) {
    const int l = n2 - 1 - row;  // top row is the largest x2
    for (int j = 0; j < n1; ++j) {
      const double w = position_weights[static_cast<std::size_t>(l) * n1 + j];
      const long v = peak > 0.0 ? std::lround(255.0 * w / peak) : 0;
      out[header + static_cast<std::size_t>(row) * n1 + j] =
          static_cast<char>(static_cast<unsigned char>(std::clamp(v, 0L, 255L)));
    }
  }
  return out;
}

std::string heatmap_pgm(const WeightGrid& grid) {
  return heatmap_pgm(grid.spec().n1, grid.spec().n2, position_marginal(grid));
}

std::string heatmap_pgm(const GridFile& grid) {
  const std::size_t cells = static_cast<std::size_t>(grid.n1) * grid.n2;
  std::vector<double> pos(cells, 0.0);
  for (int m = 0; m < grid.nk; ++m) {
    for (std::size_t i = 0; i < cells; ++i) pos[i] += grid.weights[m * cells + i];
  }
  return heatmap_pgm(grid.n1, grid.n2, pos);
}

std::string format_combo_table(const ComboTable& table) {
  std::string out = "# posterior RMS of the position estimate errors, meters\n";
  out += fmt::format("{:<16}", "Measurements");
  for (const ComboRow& r : table.rows) out += fmt::format("{:>8}", subset_label(r.subset));
  out += fmt::format("\n{:<16}", "sqrt(P[1,1]) m");
  for (const ComboRow& r : table.rows) out += fmt::format("{:>8.4f}", r.rms1);
  out += fmt::format("\n{:<16}", "sqrt(P[2,2]) m");
  for (const ComboRow& r : table.rows) out += fmt::format("{:>8.4f}", r.rms2);
  out += "\n";
  return out;
}

std::string combo_table_json(const ComboTable& table) {
  json cols = json::array();
  for (const ComboRow& r : table.rows) {
    json c;
    c["measurements"] = r.subset;
    c["label"] = subset_label(r.subset);
    c["rms_x1_m"] = r.rms1;
    c["rms_x2_m"] = r.rms2;
    c["mean"] = {r.report.mean(0), r.report.mean(1)};
    c["covariance_m2"] = matrix_json(r.report.covariance);
    cols.push_back(c);
  }
  json j;
  j["columns"] = cols;
  return j.dump(2) + "\n";
}

std::string format_unconditional(const UnconditionalCov& cov, const BeamSubset& subset) {
  const int dim = static_cast<int>(cov.matrix.rows());
  std::string out = "# Monte-Carlo unconditional error covariance\n";
  out += fmt::format("measurements {}\ntrials {}\nskipped {}\n", subset_label(subset), cov.trials,
                     cov.skipped);
  out += fmt::format("# unconditional covariance, {}\n", cov_units(dim));
  out += matrix_text(cov.matrix, "Pu");
  out += fmt::format("# mean conditional covariance, {}\n", cov_units(dim));
  out += matrix_text(cov.mean_conditional_cov, "Pc");
  out += "# per-axis RMS: unconditional, mean conditional\n";
  for (int i = 0; i < dim; ++i) {
    out += fmt::format("rms_{}_{} {:.6f} {:.6f}\n", i == 2 ? std::string("heading") : fmt::format("x{}", i + 1),
                       axis_unit(i), std::sqrt(cov.matrix(i, i)),
                       std::sqrt(cov.mean_conditional_cov(i, i)));
  }
  return out;
}

std::string unconditional_json(const UnconditionalCov& cov, const BeamSubset& subset) {
  json j;
  j["measurements"] = subset;
  j["trials"] = cov.trials;
  j["skipped"] = cov.skipped;
  j["unconditional_covariance"] = matrix_json(cov.matrix);
  j["mean_conditional_covariance"] = matrix_json(cov.mean_conditional_cov);
  return j.dump(2) + "\n";
}

}  // namespace pmloc
