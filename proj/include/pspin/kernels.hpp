#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

// Low-level complex vector kernels with runtime instruction-set dispatch.
//
// Every kernel exists in a scalar reference lane and, on x86-64 hosts that
// support it, an AVX2/FMA lane. The active lane is chosen once, at first use,
// from CPU capabilities; set_lane() or the PSPIN_LANE environment variable
// (values "scalar" / "avx2") override the choice. Lanes may differ in the
// last bits because of reassociation and fused multiply-add; equivalence is
// tested to tight relative tolerances, not bit-exactness.

namespace pspin::kern {

using cplx = std::complex<double>;

enum class Lane { Scalar, Avx2 };

Lane active_lane() noexcept;
const char *lane_name() noexcept;
bool lane_available(Lane lane) noexcept;

/// Select a lane explicitly. Throws std::invalid_argument if the lane is not
/// available on this host. Not safe to call concurrently with kernel use.
void set_lane(Lane lane);

/// sum_i conj(x[i]) * y[i]
cplx dot_conj(const cplx *x, const cplx *y, std::size_t n) noexcept;

/// sum_i |x[i]|^2
double norm_sq(const cplx *x, std::size_t n) noexcept;

/// y[i] += a * x[i]
void axpy(cplx a, const cplx *x, cplx *y, std::size_t n) noexcept;

/// x[i] *= a
void scale(cplx a, cplx *x, std::size_t n) noexcept;

/// y = A x for a CSR matrix with nrows rows. row_ptr has nrows+1 entries;
/// col/val hold row_ptr[nrows] column indices and values.
void spmv(const std::int64_t *row_ptr, const std::int64_t *col,
          const cplx *val, std::int64_t nrows, const cplx *x,
          cplx *y) noexcept;

namespace detail {

struct KernelTable {
  cplx (*dot_conj)(const cplx *, const cplx *, std::size_t) noexcept;
  double (*norm_sq)(const cplx *, std::size_t) noexcept;
  void (*axpy)(cplx, const cplx *, cplx *, std::size_t) noexcept;
  void (*scale)(cplx, cplx *, std::size_t) noexcept;
  void (*spmv)(const std::int64_t *, const std::int64_t *, const cplx *,
               std::int64_t, const cplx *, cplx *) noexcept;
  const char *name;
};

const KernelTable *scalar_table() noexcept;
const KernelTable *avx2_table() noexcept; // nullptr when not compiled in
bool cpu_has_avx2() noexcept;

} // namespace detail

} // namespace pspin::kern
