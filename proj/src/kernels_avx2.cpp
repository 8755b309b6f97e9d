#include "pspin/kernels.hpp"

// AVX2/FMA lane. This translation unit is compiled with -mavx2 -mfma on
// x86-64; everywhere else it provides a null table and the dispatcher keeps
// the scalar lane.
//
// Interleaved complex<double> layout: one __m256d holds two complex numbers
// [re0 im0 re1 im1]. Complex products use the fmaddsub/fmsubadd idiom:
//   x*y       : fmaddsub(xr_dup, y, xi_dup * swap(y))
//   conj(x)*y : fmsubadd(xr_dup, y, xi_dup * swap(y))

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace pspin::kern::detail {

namespace {

inline __m256d cmul_acc(__m256d acc, __m256d a, __m256d b) noexcept {
  // acc += a * b (two complex lanes)
  const __m256d ar = _mm256_movedup_pd(a);
  const __m256d ai = _mm256_permute_pd(a, 0xF);
  const __m256d bs = _mm256_permute_pd(b, 0x5);
  return _mm256_add_pd(acc, _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bs)));
}

inline __m256d cconjmul_acc(__m256d acc, __m256d a, __m256d b) noexcept {
  // acc += conj(a) * b
  const __m256d ar = _mm256_movedup_pd(a);
  const __m256d ai = _mm256_permute_pd(a, 0xF);
  const __m256d bs = _mm256_permute_pd(b, 0x5);
  return _mm256_add_pd(acc, _mm256_fmsubadd_pd(ar, b, _mm256_mul_pd(ai, bs)));
}

inline cplx hsum_complex(__m256d acc) noexcept {
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  alignas(16) double out[2];
  _mm_store_pd(out, s);
  return {out[0], out[1]};
}

cplx dot_conj_avx2(const cplx *x, const cplx *y, std::size_t n) noexcept {
  const double *xp = reinterpret_cast<const double *>(x);
  const double *yp = reinterpret_cast<const double *>(y);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = cconjmul_acc(acc0, _mm256_loadu_pd(xp + 2 * i),
                        _mm256_loadu_pd(yp + 2 * i));
    acc1 = cconjmul_acc(acc1, _mm256_loadu_pd(xp + 2 * i + 4),
                        _mm256_loadu_pd(yp + 2 * i + 4));
  }
  for (; i + 2 <= n; i += 2) {
    acc0 = cconjmul_acc(acc0, _mm256_loadu_pd(xp + 2 * i),
                        _mm256_loadu_pd(yp + 2 * i));
  }
  cplx acc = hsum_complex(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    acc += cplx{xr * yr + xi * yi, xr * yi - xi * yr};
  }
  return acc;
}

double norm_sq_avx2(const cplx *x, std::size_t n) noexcept {
  const double *xp = reinterpret_cast<const double *>(x);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(xp + 2 * i);
    const __m256d b = _mm256_loadu_pd(xp + 2 * i + 4);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d a = _mm256_loadu_pd(xp + 2 * i);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
  }
  const __m256d acc = _mm256_add_pd(acc0, acc1);
  const __m128d s =
      _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
  alignas(16) double out[2];
  _mm_store_pd(out, s);
  double total = out[0] + out[1];
  for (; i < n; ++i) {
    total += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return total;
}

void axpy_avx2(cplx a, const cplx *x, cplx *y, std::size_t n) noexcept {
  const double *xp = reinterpret_cast<const double *>(x);
  double *yp = reinterpret_cast<double *>(y);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    const __m256d xs = _mm256_permute_pd(xv, 0x5);
    const __m256d prod =
        _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs));
    _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(yv, prod));
  }
  const double arr = a.real(), aii = a.imag();
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + (arr * xr - aii * xi),
            y[i].imag() + (arr * xi + aii * xr)};
  }
}

void scale_avx2(cplx a, cplx *x, std::size_t n) noexcept {
  double *xp = reinterpret_cast<double *>(x);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    const __m256d xs = _mm256_permute_pd(xv, 0x5);
    _mm256_storeu_pd(xp + 2 * i,
                     _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs)));
  }
  const double arr = a.real(), aii = a.imag();
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    x[i] = {arr * xr - aii * xi, arr * xi + aii * xr};
  }
}

void spmv_avx2(const std::int64_t *row_ptr, const std::int64_t *col,
               const cplx *val, std::int64_t nrows, const cplx *x,
               cplx *y) noexcept {
  const double *vp = reinterpret_cast<const double *>(val);
  const double *xp = reinterpret_cast<const double *>(x);
  for (std::int64_t r = 0; r < nrows; ++r) {
    const std::int64_t begin = row_ptr[r], end = row_ptr[r + 1];
    __m256d acc = _mm256_setzero_pd();
    std::int64_t k = begin;
    for (; k + 2 <= end; k += 2) {
      const __m256d v = _mm256_loadu_pd(vp + 2 * k);
      const __m128d x0 = _mm_loadu_pd(xp + 2 * col[k]);
      const __m128d x1 = _mm_loadu_pd(xp + 2 * col[k + 1]);
      acc = cmul_acc(acc, v, _mm256_set_m128d(x1, x0));
    }
    cplx sum = hsum_complex(acc);
    for (; k < end; ++k) {
      const double vr = val[k].real(), vi = val[k].imag();
      const cplx xv = x[col[k]];
      sum += cplx{vr * xv.real() - vi * xv.imag(),
                  vr * xv.imag() + vi * xv.real()};
    }
    y[r] = sum;
  }
}

constexpr KernelTable kAvx2Table = {
    dot_conj_avx2, norm_sq_avx2, axpy_avx2, scale_avx2, spmv_avx2, "avx2",
};

} // namespace

const KernelTable *avx2_table() noexcept { return &kAvx2Table; }

bool cpu_has_avx2() noexcept {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

} // namespace pspin::kern::detail

#else // !(__AVX2__ && __FMA__)

namespace pspin::kern::detail {

const KernelTable *avx2_table() noexcept { return nullptr; }
bool cpu_has_avx2() noexcept { return false; }

} // namespace pspin::kern::detail

#endif
