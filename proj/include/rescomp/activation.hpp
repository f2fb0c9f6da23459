#pragma once

#include <cstddef>
#include <string_view>

namespace rescomp {

enum class ActivationKind { sine, tanh, logistic, identity };

/// Pointwise nonlinearity together with its Lipschitz constant. The
/// constant is derived from the kind so the two can never disagree.
struct Activation {
  ActivationKind kind = ActivationKind::sine;

  double lipschitz() const;    // sup |f'|: sine 1, tanh 1, logistic 1/4, identity 1
  bool bounded() const;        // identity is the only unbounded choice
  double range_lo() const;     // valid only when bounded()
  double range_hi() const;

  double operator()(double x) const;

  /// Elementwise map over a contiguous buffer; in and out may alias.
  /// The sine path is vectorized (it sits on the reservoir drive loop).
  void apply(const double* in, double* out, std::size_t n) const;

  const char* name() const;
  static Activation parse(std::string_view name);
};

}  // namespace rescomp
