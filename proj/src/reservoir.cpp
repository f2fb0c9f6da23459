#include "rescomp/reservoir.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "rescomp/spectral.hpp"

namespace rescomp {

void EsnParams::validate() const {
  const int n = node_count();
  if (n < 1) throw std::invalid_argument("esn: empty input weights");
  if (reservoir_weights.rows() != n || reservoir_weights.cols() != n)
    throw std::invalid_argument("esn: reservoir matrix is not N x N");
  if (!input_weights.allFinite() || !reservoir_weights.allFinite())
    throw std::invalid_argument("esn: non-finite weight");
  if (spectral_radius(reservoir_weights) * activation.lipschitz() >= 1.0)
    throw std::invalid_argument("esn: spectral radius * Lipschitz >= 1");
}

void TdrParams::validate() const {
  if (node_count < 2) throw std::invalid_argument("tdr: node_count < 2");
  if (!(input_gain > 0) || !std::isfinite(input_gain))
    throw std::invalid_argument("tdr: input gain must be positive");
  if (!(attenuation >= 0) || !std::isfinite(attenuation))
    throw std::invalid_argument("tdr: attenuation must be nonnegative");
  if (attenuation * activation.lipschitz() >= 1.0)
    throw std::invalid_argument("tdr: attenuation * Lipschitz >= 1");
}

MultiplexMask MultiplexMask::random(int length, Rng& rng) {
  if (length < 1) throw std::invalid_argument("mask: length < 1");
  MultiplexMask m;
  m.values.resize(length);
  for (int i = 0; i < length; ++i)
    m.values[i] = rng.uniform_index(2) == 0 ? -1.0 : 1.0;
  return m;
}

void MultiplexMask::validate() const {
  if (values.size() == 0) throw std::invalid_argument("mask: empty");
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (values[i] != 1.0 && values[i] != -1.0)
      throw std::invalid_argument("mask: entries must be +-1");
}

EsnParams make_esn(int node_count, double input_gain, double density,
                   double spectral_target, Activation activation, Rng& rng) {
  if (node_count < 1) throw std::invalid_argument("make_esn: node_count < 1");
  if (!(density > 0.0) || density > 1.0)
    throw std::invalid_argument("make_esn: density must lie in (0, 1]");
  if (!std::isfinite(input_gain))
    throw std::invalid_argument("make_esn: input gain not finite");
  if (!(spectral_target >= 0.0) ||
      spectral_target * activation.lipschitz() >= 1.0)
    throw std::invalid_argument(
        "make_esn: spectral target * Lipschitz must lie in [0, 1)");

  const long long n2 = static_cast<long long>(node_count) * node_count;
  const long long cells = std::llround(density * static_cast<double>(n2));
  if (cells < 1)
    throw std::invalid_argument(
        "make_esn: density rounds to zero cells for this node count");

  EsnParams p;
  p.activation = activation;
  p.input_weights = Eigen::VectorXd::Constant(node_count, input_gain);

  if (spectral_target == 0.0) {
    p.reservoir_weights = Eigen::MatrixXd::Zero(node_count, node_count);
    return p;
  }

  // Distinct cells via a partial Fisher-Yates over the flattened index set;
  // redraw when the radius is numerically indistinguishable from nilpotent
  // (the rescale would amplify eigenvalue roundoff without bound).
  std::vector<int> flat(static_cast<std::size_t>(n2));
  std::iota(flat.begin(), flat.end(), 0);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(node_count, node_count);
    for (long long i = 0; i < cells; ++i) {
      const long long j =
          i + static_cast<long long>(rng.uniform_index(
                  static_cast<std::uint64_t>(n2 - i)));
      std::swap(flat[i], flat[j]);
      const int cell = flat[i];
      w(cell / node_count, cell % node_count) = rng.uniform(-1.0, 1.0);
    }
    const double rho = spectral_radius(w);
    if (rho > 1e-10 * w.cwiseAbs().maxCoeff()) {
      w *= spectral_target / rho;
      p.reservoir_weights = std::move(w);
      return p;
    }
  }
  throw std::runtime_error(
      "make_esn: could not draw a reservoir with nonzero spectral radius");
}

TdrParams make_tdr(int node_count, double input_gain, double attenuation,
                   Activation activation) {
  TdrParams p;
  p.node_count = node_count;
  p.input_gain = input_gain;
  p.attenuation = attenuation;
  p.activation = activation;
  p.validate();
  return p;
}

Signal apply_mask(const Signal& raw, const MultiplexMask& mask) {
  raw.validate();
  mask.validate();
  const int t_raw = raw.length(), m = mask.length();
  Signal out;
  out.values.resize(static_cast<Eigen::Index>(t_raw) * m);
  for (int k = 0; k < t_raw; ++k)
    out.values.segment(static_cast<Eigen::Index>(k) * m, m) =
        raw.values[k] * mask.values;
  return out;
}

namespace {

// Cheap per-drive checks; the spectral-radius invariant is enforced at
// construction and load time, not on the hot path.
void check_esn_shapes(const EsnParams& p) {
  const int n = p.node_count();
  if (n < 1 || p.reservoir_weights.rows() != n || p.reservoir_weights.cols() != n)
    throw std::invalid_argument("esn: reservoir matrix is not N x N");
}

// Shared ESN recurrence; `store` receives (t, state) for every tick.
template <class Store>
void esn_recurrence(const EsnParams& p, const Signal& u, Store&& store) {
  const int n = p.node_count(), t_len = u.length();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n), pre(n);
  for (int t = 0; t < t_len; ++t) {
    pre.noalias() = p.reservoir_weights * x;
    pre.noalias() += p.input_weights * u.values[t];
    p.activation.apply(pre.data(), x.data(), static_cast<std::size_t>(n));
    store(t, x);
  }
}

// Head-node series h(t) = f(alpha u(t) + beta h(t-N)), h(<0) = 0. The
// dependency skips N ticks, so blocks of N evaluate elementwise.
std::vector<double> tdr_head_series(const TdrParams& p, const Signal& u) {
  const int n = p.node_count, t_len = u.length();
  std::vector<double> head(static_cast<std::size_t>(t_len));
  std::vector<double> pre(static_cast<std::size_t>(std::min(n, t_len)));
  for (int t0 = 0; t0 < t_len; t0 += n) {
    const int block = std::min(n, t_len - t0);
    for (int i = 0; i < block; ++i) {
      const int t = t0 + i;
      const double fb = t >= n ? head[t - n] : 0.0;
      pre[i] = p.input_gain * u.values[t] + p.attenuation * fb;
    }
    p.activation.apply(pre.data(), head.data() + t0,
                       static_cast<std::size_t>(block));
  }
  return head;
}

}  // namespace

StateTrajectory drive_esn(const EsnParams& p, const Signal& u) {
  check_esn_shapes(p);
  u.validate();
  StateTrajectory traj;
  traj.states.resize(u.length(), p.node_count());
  esn_recurrence(p, u, [&](int t, const Eigen::VectorXd& x) {
    traj.states.row(t) = x;
  });
  return traj;
}

Eigen::MatrixXd drive_esn_sampled(const EsnParams& p, const Signal& u,
                                  const SampleTimes& omega) {
  check_esn_shapes(p);
  u.validate();
  omega.validate(u.length());
  Eigen::MatrixXd out(omega.count(), p.node_count());
  int next = 0;
  esn_recurrence(p, u, [&](int t, const Eigen::VectorXd& x) {
    if (next < omega.count() && omega.times[next] == t) out.row(next++) = x;
  });
  return out;
}

StateTrajectory drive_tdr(const TdrParams& p, const Signal& u) {
  p.validate();
  u.validate();
  const int n = p.node_count, t_len = u.length();
  const std::vector<double> head = tdr_head_series(p, u);
  StateTrajectory traj;
  traj.states.resize(t_len, n);
  for (int t = 0; t < t_len; ++t)
    for (int node = 0; node < n; ++node)
      traj.states(t, node) = t - node >= 0 ? head[t - node] : 0.0;
  return traj;
}

Eigen::MatrixXd drive_tdr_sampled(const TdrParams& p, const Signal& u,
                                  const SampleTimes& omega) {
  p.validate();
  u.validate();
  omega.validate(u.length());
  const std::vector<double> head = tdr_head_series(p, u);
  Eigen::MatrixXd out(omega.count(), p.node_count);
  for (int r = 0; r < omega.count(); ++r) {
    const int t = omega.times[r];
    for (int node = 0; node < p.node_count; ++node)
      out(r, node) = t - node >= 0 ? head[t - node] : 0.0;
  }
  return out;
}

Eigen::MatrixXd sample_states(const StateTrajectory& traj,
                              const SampleTimes& omega) {
  omega.validate(traj.time_len());
  Eigen::MatrixXd out(omega.count(), traj.node_count());
  for (int r = 0; r < omega.count(); ++r)
    out.row(r) = traj.states.row(omega.times[r]);
  return out;
}

}  // namespace rescomp
