#include "dct.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace chebquad::detail {

namespace {

// The FFTW planner is not re-entrant; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(double* p) const { fftw_free(p); }
};

fftw_r2r_kind to_fftw(R2RKind kind) {
  switch (kind) {
    case R2RKind::Dct1: return FFTW_REDFT00;
    case R2RKind::Dct2: return FFTW_REDFT10;
    case R2RKind::Dct3: return FFTW_REDFT01;
    case R2RKind::Dst1: return FFTW_RODFT00;
  }
  return FFTW_REDFT10;
}

}  // namespace

std::vector<double> r2r(R2RKind kind, std::span<const double> input) {
  const auto n = input.size();
  if (n == 0) return {};
  if (kind == R2RKind::Dct1 && n < 2) throw std::invalid_argument("DCT-I needs at least 2 samples");

  std::unique_ptr<double, FftwFree> in(fftw_alloc_real(n));
  std::unique_ptr<double, FftwFree> out(fftw_alloc_real(n));
  if (!in || !out) throw std::bad_alloc();

  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_r2r_1d(static_cast<int>(n), in.get(), out.get(), to_fftw(kind), FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("fftw planning failed");

  std::copy(input.begin(), input.end(), in.get());
  fftw_execute(plan);
  std::vector<double> result(out.get(), out.get() + n);

  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return result;
}

}  // namespace chebquad::detail
