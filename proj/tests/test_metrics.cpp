#include <doctest.h>

#include <Eigen/Core>
#include <cmath>
#include <sstream>
#include <vector>

#include "oracle_helpers.hpp"
#include "rescomp/metrics.hpp"
#include "rescomp/reservoir.hpp"
#include "rescomp/rng.hpp"
#include "rescomp/spectral.hpp"

using namespace rescomp;

namespace {

Signal random_signal(int len, Rng& r) {
  Signal s;
  s.values.resize(len);
  for (int i = 0; i < len; ++i) s.values[i] = r.uniform();
  return s;
}

// Nested-loop recomputation of Sep(t) straight from its definition.
double sep_reference(const std::vector<Eigen::MatrixXd>& states,
                     const ClassPartition& part, int s, bool on_norms) {
  const int k_count = part.class_count;
  const int n = static_cast<int>(states.front().cols());

  auto feature = [&](int j) -> Eigen::VectorXd {
    if (!on_norms) return states[j].row(s).transpose();
    Eigen::VectorXd v(1);
    v[0] = states[j].row(s).norm();
    return v;
  };

  std::vector<Eigen::VectorXd> centroids(k_count);
  for (int k = 0; k < k_count; ++k) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(on_norms ? 1 : n);
    for (int j : part.members[k]) c += feature(j);
    centroids[k] = c / static_cast<double>(part.members[k].size());
  }

  double dist = 0.0;
  for (int k = 0; k < k_count; ++k)
    for (int l = 0; l < k_count; ++l)
      dist += (centroids[k] - centroids[l]).norm();
  dist /= static_cast<double>(k_count) * k_count;

  double spread = 0.0;
  for (int k = 0; k < k_count; ++k) {
    double within = 0.0;
    for (int j : part.members[k]) within += (centroids[k] - feature(j)).norm();
    spread += within / static_cast<double>(part.members[k].size());
  }
  spread /= static_cast<double>(k_count);

  return dist / (1.0 + spread);
}

}  // namespace

TEST_SUITE_BEGIN("metrics");

TEST_CASE("separation_ratio: hand-computed two-class case") {
  // Class 0 holds 1-D states -1 and 1, class 1 holds 2, at a single time.
  // Centroids 0 and 2: d = (1/4)(2 + 2) = 1. Spread: class 0 contributes
  // mean(1, 1) = 1, class 1 contributes 0, so v = 1/2 and Sep = 2/3.
  std::vector<Eigen::MatrixXd> states(3, Eigen::MatrixXd(1, 1));
  states[0] << -1.0;
  states[1] << 1.0;
  states[2] << 2.0;
  const ClassPartition part = ClassPartition::from_labels({0, 0, 1}, 2);

  const SeparationSeries vec =
      separation_ratio(states, part, SeparationVariant::vector);
  REQUIRE(vec.values.size() == 1);
  CHECK(vec.values[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  // Norm variant replaces states by |x|: class 0 becomes {1, 1}, class 1
  // {2}; centroids 1 and 2, d = 1/2, spread 0, Sep = 1/2.
  const SeparationSeries nrm =
      separation_ratio(states, part, SeparationVariant::norm);
  CHECK(nrm.values[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("separation_ratio: matches the nested-loop reference") {
  Rng r(88);
  const int j_count = 18, s_count = 6, n = 5;
  std::vector<Eigen::MatrixXd> states(j_count);
  std::vector<int> labels(j_count);
  for (int j = 0; j < j_count; ++j) {
    states[j].resize(s_count, n);
    for (int s = 0; s < s_count; ++s)
      for (int c = 0; c < n; ++c) states[j](s, c) = r.uniform(-2.0, 2.0);
    labels[j] = j % 3;
  }
  const ClassPartition part = ClassPartition::from_labels(labels, 3);

  const SeparationSeries vec =
      separation_ratio(states, part, SeparationVariant::vector);
  const SeparationSeries nrm =
      separation_ratio(states, part, SeparationVariant::norm);
  REQUIRE(vec.values.size() == s_count);
  for (int s = 0; s < s_count; ++s) {
    CHECK(vec.values[s] ==
          doctest::Approx(sep_reference(states, part, s, false)).epsilon(1e-12));
    CHECK(nrm.values[s] ==
          doctest::Approx(sep_reference(states, part, s, true)).epsilon(1e-12));
  }

  CHECK(max_separation(vec) ==
        *std::max_element(vec.values.begin(), vec.values.end()));
}

TEST_CASE("separation_ratio: single class has zero separation") {
  std::vector<Eigen::MatrixXd> states(4, Eigen::MatrixXd(2, 3));
  Rng r(89);
  for (auto& m : states)
    for (int s = 0; s < 2; ++s)
      for (int c = 0; c < 3; ++c) m(s, c) = r.uniform();
  const ClassPartition part = ClassPartition::from_labels({0, 0, 0, 0}, 1);
  for (auto variant : {SeparationVariant::vector, SeparationVariant::norm}) {
    const SeparationSeries series = separation_ratio(states, part, variant);
    for (double v : series.values) CHECK(v == 0.0);
  }
}

TEST_CASE("esn_bound_ratio: series recomputed from a reference drive") {
  Rng r(90);
  const EsnParams p =
      make_esn(12, 0.5, 0.3, 0.6, Activation{ActivationKind::tanh}, r);
  const Signal ui = random_signal(40, r);
  const Signal uj = random_signal(40, r);

  const BoundRatioSeries series = esn_bound_ratio(p, ui, uj, {3, 7});
  CHECK(series.kind == ReservoirKind::esn);
  CHECK(series.pair == std::make_pair(3, 7));
  REQUIRE(series.ratios.size() == 40);

  const Eigen::MatrixXd xi = oracle::naive_drive_esn(p, ui);
  const Eigen::MatrixXd xj = oracle::naive_drive_esn(p, uj);
  const double rho = oracle::dense_rho(p.reservoir_weights);
  const double dbar = (ui.values - uj.values).cwiseAbs().maxCoeff();
  const double win_norm = p.input_weights.norm();
  for (int t = 0; t < 40; ++t) {
    const double eps = (xi.row(t) - xj.row(t)).norm();
    const double bound =
        dbar * win_norm * (1.0 - std::pow(rho, t + 1)) / (1.0 - rho);
    CHECK(series.ratios[t] == doctest::Approx(eps / bound).epsilon(1e-9));
  }
}

TEST_CASE("tdr_bound_ratio: series recomputed from a reference drive") {
  Rng r(91);
  const TdrParams p = make_tdr(6, 0.7, 0.5, Activation{ActivationKind::sine});
  const Signal ui = random_signal(50, r);
  const Signal uj = random_signal(50, r);

  const BoundRatioSeries series = tdr_bound_ratio(p, ui, uj);
  CHECK(series.kind == ReservoirKind::tdr);
  REQUIRE(series.ratios.size() == 50);

  const Eigen::MatrixXd xi = oracle::naive_drive_tdr(p, ui);
  const Eigen::MatrixXd xj = oracle::naive_drive_tdr(p, uj);
  const double dbar = (ui.values - uj.values).cwiseAbs().maxCoeff();
  for (int t = 0; t < 50; ++t) {
    const double eps = (xi.row(t) - xj.row(t)).norm();
    const double bound = 0.7 * dbar * std::sqrt(6.0) *
                         (1.0 - std::pow(0.5, t / 6 + 1)) / (1.0 - 0.5);
    CHECK(series.ratios[t] == doctest::Approx(eps / bound).epsilon(1e-9));
  }
}

TEST_CASE("bound ratios: identical inputs give an all-zero series") {
  Rng r(92);
  const EsnParams pe =
      make_esn(8, 0.4, 0.4, 0.5, Activation{ActivationKind::sine}, r);
  const Signal u = random_signal(30, r);
  for (double v : esn_bound_ratio(pe, u, u).ratios) CHECK(v == 0.0);

  const TdrParams pt = make_tdr(5, 0.6, 0.4, Activation{ActivationKind::sine});
  for (double v : tdr_bound_ratio(pt, u, u).ratios) CHECK(v == 0.0);
}

TEST_CASE("esn bound holds for symmetric reservoirs") {
  // For normal matrices ||W v|| <= rho ||v||, which is the inequality the
  // contraction argument needs, so the bound is rigorous in this regime.
  Rng r(93);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 3 + static_cast<int>(r.uniform_index(20));
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = r.uniform(-1.0, 1.0);
    Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
    const double target = r.uniform(0.1, 0.95);
    sym *= target / spectral_radius(sym);

    EsnParams p;
    p.input_weights =
        Eigen::VectorXd::Constant(n, r.uniform(0.1, 0.9));
    p.reservoir_weights = sym;
    p.activation = Activation{r.uniform_index(2) == 0 ? ActivationKind::sine
                                                      : ActivationKind::tanh};

    const int t_len = 2 + static_cast<int>(r.uniform_index(60));
    const Signal ui = random_signal(t_len, r);
    const Signal uj = random_signal(t_len, r);
    for (double ratio : esn_bound_ratio(p, ui, uj).ratios)
      CHECK(ratio <= 1.0 + 1e-9);
  }
}

TEST_CASE("tdr bound holds across random instances") {
  Rng r(94);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(r.uniform_index(40));
    const TdrParams p =
        make_tdr(n, r.uniform(0.1, 0.9), r.uniform(0.0, 0.95),
                 Activation{r.uniform_index(2) == 0 ? ActivationKind::sine
                                                    : ActivationKind::tanh});
    const int t_len = 2 + static_cast<int>(r.uniform_index(150));
    const Signal ui = random_signal(t_len, r);
    const Signal uj = random_signal(t_len, r);
    for (double ratio : tdr_bound_ratio(p, ui, uj).ratios)
      CHECK(ratio <= 1.0 + 1e-9);
  }
}

TEST_CASE("bound ratio input validation") {
  Rng r(95);
  const EsnParams p =
      make_esn(5, 0.5, 0.4, 0.5, Activation{ActivationKind::sine}, r);
  const Signal a = random_signal(10, r);
  const Signal b = random_signal(11, r);
  CHECK_THROWS_AS(esn_bound_ratio(p, a, b), std::invalid_argument);

  const TdrParams pt = make_tdr(4, 0.5, 0.5, Activation{ActivationKind::sine});
  CHECK_THROWS_AS(tdr_bound_ratio(pt, a, b), std::invalid_argument);
}

TEST_CASE("write_series_csv: layout") {
  std::ostringstream os;
  write_series_csv(os, {0.5, 1.0, 0.25});
  CHECK(os.str() == "t,value\n0,0.5\n1,1\n2,0.25\n");
}

TEST_SUITE_END();
