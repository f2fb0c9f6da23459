#include "activation_kernels.hpp"

#include <cmath>

namespace rescomp::detail {

void sin_map(const double* in, double* out, std::size_t n) {
#pragma omp simd
  for (std::size_t i = 0; i < n; ++i) out[i] = std::sin(in[i]);
}

}  // namespace rescomp::detail
