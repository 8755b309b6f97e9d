#include "pspin/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace pspin::kern {

namespace {

using detail::KernelTable;

const KernelTable *g_table = nullptr;
Lane g_lane = Lane::Scalar;

void init_once() noexcept {
  if (g_table) {
    return;
  }
  const KernelTable *avx2 = detail::avx2_table();
  bool use_avx2 = avx2 && detail::cpu_has_avx2();
  if (const char *env = std::getenv("PSPIN_LANE")) {
    if (std::strcmp(env, "scalar") == 0) {
      use_avx2 = false;
    }
    // "avx2" keeps the capability-gated default; anything else is ignored
  }
  if (use_avx2) {
    g_table = avx2;
    g_lane = Lane::Avx2;
  } else {
    g_table = detail::scalar_table();
    g_lane = Lane::Scalar;
  }
}

} // namespace

Lane active_lane() noexcept {
  init_once();
  return g_lane;
}

const char *lane_name() noexcept {
  init_once();
  return g_table->name;
}

bool lane_available(Lane lane) noexcept {
  switch (lane) {
  case Lane::Scalar:
    return true;
  case Lane::Avx2:
    return detail::avx2_table() != nullptr && detail::cpu_has_avx2();
  }
  return false;
}

void set_lane(Lane lane) {
  if (!lane_available(lane)) {
    throw std::invalid_argument("kernel lane not available on this host");
  }
  g_table = (lane == Lane::Avx2) ? detail::avx2_table()
                                 : detail::scalar_table();
  g_lane = lane;
}

cplx dot_conj(const cplx *x, const cplx *y, std::size_t n) noexcept {
  init_once();
  return g_table->dot_conj(x, y, n);
}

double norm_sq(const cplx *x, std::size_t n) noexcept {
  init_once();
  return g_table->norm_sq(x, n);
}

void axpy(cplx a, const cplx *x, cplx *y, std::size_t n) noexcept {
  init_once();
  g_table->axpy(a, x, y, n);
}

void scale(cplx a, cplx *x, std::size_t n) noexcept {
  init_once();
  g_table->scale(a, x, n);
}

void spmv(const std::int64_t *row_ptr, const std::int64_t *col,
          const cplx *val, std::int64_t nrows, const cplx *x,
          cplx *y) noexcept {
  init_once();
  g_table->spmv(row_ptr, col, val, nrows, x, y);
}

} // namespace pspin::kern
