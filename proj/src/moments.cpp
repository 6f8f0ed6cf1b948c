#include <cmath>

#include "pmloc/error.hpp"
#include "pmloc/filter.hpp"

namespace pmloc {

namespace {

double wrap_deviation(double deg) {
  double d = std::remainder(deg, 360.0);  // [-180, 180]
  if (d == -180.0) d = 180.0;
  return d;
}

}  // namespace

Eigen::VectorXd mean_estimate(const WeightGrid& grid) {
  const GridSpec& spec = grid.spec();
  const auto w = grid.weights();
  double total = 0.0, s1 = 0.0, s2 = 0.0, sin_sum = 0.0, cos_sum = 0.0;
  for (int m = 0; m < spec.nk; ++m) {
    const double h = deg2rad(grid.heading(m));
    for (int l = 0; l < spec.n2; ++l) {
      for (int j = 0; j < spec.n1; ++j) {
        const double wi = w[grid.index(j, l, m)];
        total += wi;
        s1 += wi * grid.x1(j);
        s2 += wi * grid.x2(l);
        sin_sum += wi * std::sin(h);
        cos_sum += wi * std::cos(h);
      }
    }
  }
  Eigen::VectorXd mean(spec.heading_active() ? 3 : 2);
  mean(0) = s1 / total;
  mean(1) = s2 / total;
  if (spec.heading_active()) mean(2) = normalize_degrees(rad2deg(std::atan2(sin_sum, cos_sum)));
  return mean;
}

Eigen::MatrixXd covariance(const WeightGrid& grid, const Eigen::VectorXd& mean) {
  const GridSpec& spec = grid.spec();
  const int dim = spec.heading_active() ? 3 : 2;
  if (mean.size() != dim) {
    throw Error(ErrorKind::invalid_argument, "mean dimension does not match the grid");
  }
  const auto w = grid.weights();
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(dim, dim);
  double total = 0.0;
  Eigen::VectorXd d(dim);
  for (int m = 0; m < spec.nk; ++m) {
    if (dim == 3) d(2) = wrap_deviation(grid.heading(m) - mean(2));
    for (int l = 0; l < spec.n2; ++l) {
      d(1) = grid.x2(l) - mean(1);
      for (int j = 0; j < spec.n1; ++j) {
        const double wi = w[grid.index(j, l, m)];
        if (wi == 0.0) continue;
        d(0) = grid.x1(j) - mean(0);
        total += wi;
        for (int a = 0; a < dim; ++a) {
          for (int b = a; b < dim; ++b) cov(a, b) += wi * d(a) * d(b);
        }
      }
    }
  }
  cov /= total;
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < a; ++b) cov(a, b) = cov(b, a);
  }
  return cov;
}

EstimateReport estimate(const WeightGrid& grid, std::size_t n_measurements) {
  EstimateReport r;
  r.mean = mean_estimate(grid);
  r.covariance = covariance(grid, r.mean);
  r.rms = r.covariance.diagonal().cwiseMax(0.0).cwiseSqrt();
  r.n_measurements = n_measurements;
  return r;
}

std::vector<double> marginal(const WeightGrid& grid, Axis axis) {
  const GridSpec& spec = grid.spec();
  if (axis == Axis::heading && !spec.heading_active()) {
    throw Error(ErrorKind::invalid_axis, "heading axis is inactive on a known-heading grid");
  }
  const std::size_t n = axis == Axis::x1 ? spec.n1 : axis == Axis::x2 ? spec.n2 : spec.nk;
  std::vector<double> out(n, 0.0);
  const auto w = grid.weights();
  for (int m = 0; m < spec.nk; ++m) {
    for (int l = 0; l < spec.n2; ++l) {
      for (int j = 0; j < spec.n1; ++j) {
        const int k = axis == Axis::x1 ? j : axis == Axis::x2 ? l : m;
        out[k] += w[grid.index(j, l, m)];
      }
    }
  }
  return out;
}

std::vector<double> position_marginal(const WeightGrid& grid) {
  const GridSpec& spec = grid.spec();
  std::vector<double> out(static_cast<std::size_t>(spec.n1) * spec.n2, 0.0);
  const auto w = grid.weights();
  for (int m = 0; m < spec.nk; ++m) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += w[m * out.size() + i];
  }
  return out;
}

}  // namespace pmloc
