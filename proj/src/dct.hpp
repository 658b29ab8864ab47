#pragma once

// Thin wrappers over FFTW's real-to-real transforms. Buffers are allocated
// with fftw_malloc so the chosen codelets (and the rounding) do not depend on
// the caller's allocation alignment.

#include <span>
#include <vector>

namespace chebquad::detail {

enum class R2RKind {
  Dct1,  // FFTW_REDFT00: Y_k = X_0 + (-1)^k X_{n-1} + 2 sum_{j=1}^{n-2} X_j cos(pi j k/(n-1))
  Dct2,  // FFTW_REDFT10: Y_k = 2 sum_j X_j cos(pi (j+1/2) k / n)
  Dct3,  // FFTW_REDFT01: Y_k = X_0 + 2 sum_{j>=1} X_j cos(pi j (k+1/2) / n)
  Dst1,  // FFTW_RODFT00: Y_k = 2 sum_j X_j sin(pi (j+1)(k+1) / (n+1))
};

std::vector<double> r2r(R2RKind kind, std::span<const double> input);

}  // namespace chebquad::detail
