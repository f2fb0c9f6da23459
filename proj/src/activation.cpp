#include "rescomp/activation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "activation_kernels.hpp"

namespace rescomp {

double Activation::lipschitz() const {
  switch (kind) {
    case ActivationKind::sine: return 1.0;
    case ActivationKind::tanh: return 1.0;
    case ActivationKind::logistic: return 0.25;
    case ActivationKind::identity: return 1.0;
  }
  throw std::logic_error("unknown activation kind");
}

bool Activation::bounded() const { return kind != ActivationKind::identity; }

double Activation::range_lo() const {
  switch (kind) {
    case ActivationKind::sine: return -1.0;
    case ActivationKind::tanh: return -1.0;
    case ActivationKind::logistic: return 0.0;
    case ActivationKind::identity: break;
  }
  return -std::numeric_limits<double>::infinity();
}

double Activation::range_hi() const {
  switch (kind) {
    case ActivationKind::sine: return 1.0;
    case ActivationKind::tanh: return 1.0;
    case ActivationKind::logistic: return 1.0;
    case ActivationKind::identity: break;
  }
  return std::numeric_limits<double>::infinity();
}

double Activation::operator()(double x) const {
  switch (kind) {
    case ActivationKind::sine: return std::sin(x);
    case ActivationKind::tanh: return std::tanh(x);
    case ActivationKind::logistic: return 1.0 / (1.0 + std::exp(-x));
    case ActivationKind::identity: return x;
  }
  throw std::logic_error("unknown activation kind");
}

void Activation::apply(const double* in, double* out, std::size_t n) const {
  switch (kind) {
    case ActivationKind::sine:
      detail::sin_map(in, out, n);
      return;
    case ActivationKind::tanh:
      for (std::size_t i = 0; i < n; ++i) out[i] = std::tanh(in[i]);
      return;
    case ActivationKind::logistic:
      for (std::size_t i = 0; i < n; ++i) out[i] = 1.0 / (1.0 + std::exp(-in[i]));
      return;
    case ActivationKind::identity:
      if (out != in) std::copy(in, in + n, out);
      return;
  }
  throw std::logic_error("unknown activation kind");
}

const char* Activation::name() const {
  switch (kind) {
    case ActivationKind::sine: return "sine";
    case ActivationKind::tanh: return "tanh";
    case ActivationKind::logistic: return "logistic";
    case ActivationKind::identity: return "identity";
  }
  return "?";
}

Activation Activation::parse(std::string_view name) {
  if (name == "sine" || name == "sin") return {ActivationKind::sine};
  if (name == "tanh") return {ActivationKind::tanh};
  if (name == "logistic" || name == "sigmoid") return {ActivationKind::logistic};
  if (name == "identity" || name == "linear") return {ActivationKind::identity};
  throw std::invalid_argument("unknown activation: " + std::string(name));
}

}  // namespace rescomp
