#include "rescomp/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "rescomp/spectral.hpp"

namespace rescomp {

SeparationSeries separation_ratio(const std::vector<Eigen::MatrixXd>& sampled_states,
                                  const ClassPartition& partition,
                                  SeparationVariant variant) {
  const int j_count = static_cast<int>(sampled_states.size());
  if (j_count == 0) throw std::invalid_argument("separation_ratio: no signals");
  partition.validate(j_count);
  const int s_count = static_cast<int>(sampled_states.front().rows());
  const int n = static_cast<int>(sampled_states.front().cols());
  for (const auto& m : sampled_states)
    if (m.rows() != s_count || m.cols() != n)
      throw std::invalid_argument("separation_ratio: state block shape mismatch");

  const int k_count = partition.class_count;
  SeparationSeries series;
  series.variant = variant;
  series.values.resize(s_count);

  for (int s = 0; s < s_count; ++s) {
    double dist = 0.0, spread = 0.0;
    if (variant == SeparationVariant::vector) {
      Eigen::MatrixXd centroids = Eigen::MatrixXd::Zero(k_count, n);
      for (int k = 0; k < k_count; ++k) {
        for (int j : partition.members[k])
          centroids.row(k) += sampled_states[j].row(s);
        centroids.row(k) /= static_cast<double>(partition.members[k].size());
      }
      for (int k = 0; k < k_count; ++k)
        for (int l = 0; l < k_count; ++l)
          dist += (centroids.row(k) - centroids.row(l)).norm();
      dist /= static_cast<double>(k_count) * k_count;

      for (int k = 0; k < k_count; ++k) {
        double within = 0.0;
        for (int j : partition.members[k])
          within += (centroids.row(k) - sampled_states[j].row(s)).norm();
        spread += within / static_cast<double>(partition.members[k].size());
      }
      spread /= static_cast<double>(k_count);
    } else {
      // Scalar analog on unsquared state norms.
      Eigen::VectorXd centroids = Eigen::VectorXd::Zero(k_count);
      for (int k = 0; k < k_count; ++k) {
        for (int j : partition.members[k])
          centroids[k] += sampled_states[j].row(s).norm();
        centroids[k] /= static_cast<double>(partition.members[k].size());
      }
      for (int k = 0; k < k_count; ++k)
        for (int l = 0; l < k_count; ++l)
          dist += std::abs(centroids[k] - centroids[l]);
      dist /= static_cast<double>(k_count) * k_count;

      for (int k = 0; k < k_count; ++k) {
        double within = 0.0;
        for (int j : partition.members[k])
          within += std::abs(centroids[k] - sampled_states[j].row(s).norm());
        spread += within / static_cast<double>(partition.members[k].size());
      }
      spread /= static_cast<double>(k_count);
    }
    series.values[s] = dist / (1.0 + spread);
  }
  return series;
}

double max_separation(const SeparationSeries& series) {
  if (series.values.empty())
    throw std::invalid_argument("max_separation: empty series");
  double best = series.values.front();
  for (double v : series.values) best = std::max(best, v);
  return best;
}

namespace {

double sup_abs_diff(const Signal& a, const Signal& b) {
  return (a.values - b.values).cwiseAbs().maxCoeff();
}

std::vector<double> ratio_series(const Eigen::MatrixXd& xi,
                                 const Eigen::MatrixXd& xj,
                                 const std::vector<double>& bounds) {
  std::vector<double> ratios(bounds.size());
  for (std::size_t t = 0; t < bounds.size(); ++t) {
    const double eps =
        (xi.row(static_cast<int>(t)) - xj.row(static_cast<int>(t))).norm();
    if (bounds[t] > 0.0)
      ratios[t] = eps / bounds[t];
    else
      ratios[t] = eps == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return ratios;
}

}  // namespace

BoundRatioSeries esn_bound_ratio(const EsnParams& params, const Signal& ui,
                                 const Signal& uj, std::pair<int, int> tag) {
  params.validate();
  ui.validate();
  uj.validate();
  if (ui.length() != uj.length())
    throw std::invalid_argument("esn_bound_ratio: signal lengths differ");

  const double lip = params.activation.lipschitz();
  const double rho = spectral_radius(params.reservoir_weights);
  const double q = lip * rho;  // < 1 by validation
  const double dbar = sup_abs_diff(ui, uj);
  const double scale = lip * dbar * params.input_weights.norm();

  const int t_len = ui.length();
  std::vector<double> bounds(t_len);
  for (int t = 0; t < t_len; ++t)
    bounds[t] = scale * (1.0 - std::pow(q, t + 1)) / (1.0 - q);

  BoundRatioSeries series;
  series.kind = ReservoirKind::esn;
  series.pair = tag;
  series.ratios = ratio_series(drive_esn(params, ui).states,
                               drive_esn(params, uj).states, bounds);
  return series;
}

BoundRatioSeries tdr_bound_ratio(const TdrParams& params, const Signal& ui,
                                 const Signal& uj, std::pair<int, int> tag) {
  params.validate();
  ui.validate();
  uj.validate();
  if (ui.length() != uj.length())
    throw std::invalid_argument("tdr_bound_ratio: signal lengths differ");

  const double lip = params.activation.lipschitz();
  const double q = params.attenuation * lip;  // < 1 by validation
  const double dbar = sup_abs_diff(ui, uj);
  const double scale = params.input_gain * dbar * lip *
                       std::sqrt(static_cast<double>(params.node_count));

  const int t_len = ui.length();
  std::vector<double> bounds(t_len);
  for (int t = 0; t < t_len; ++t) {
    const int rounds = t / params.node_count + 1;
    bounds[t] = scale * (1.0 - std::pow(q, rounds)) / (1.0 - q);
  }

  BoundRatioSeries series;
  series.kind = ReservoirKind::tdr;
  series.pair = tag;
  series.ratios = ratio_series(drive_tdr(params, ui).states,
                               drive_tdr(params, uj).states, bounds);
  return series;
}

void write_series_csv(std::ostream& os, const std::vector<double>& values) {
  os << "t,value\n";
  char buf[40];
  for (std::size_t t = 0; t < values.size(); ++t) {
    std::snprintf(buf, sizeof buf, "%.17g", values[t]);
    os << t << ',' << buf << '\n';
  }
  if (!os) throw std::runtime_error("write_series_csv: stream failure");
}

}  // namespace rescomp
