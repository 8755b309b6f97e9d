#include "pspin/kernels.hpp"

// Reference lane. Plain loops over explicit real/imaginary parts; the AVX2
// lane mirrors this structure so the two stay comparable term by term.

namespace pspin::kern::detail {

namespace {

cplx dot_conj_scalar(const cplx *x, const cplx *y, std::size_t n) noexcept {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

double norm_sq_scalar(const cplx *x, std::size_t n) noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return acc;
}

void axpy_scalar(cplx a, const cplx *x, cplx *y, std::size_t n) noexcept {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + (ar * xr - ai * xi),
            y[i].imag() + (ar * xi + ai * xr)};
  }
}

void scale_scalar(cplx a, cplx *x, std::size_t n) noexcept {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    x[i] = {ar * xr - ai * xi, ar * xi + ai * xr};
  }
}

void spmv_scalar(const std::int64_t *row_ptr, const std::int64_t *col,
                 const cplx *val, std::int64_t nrows, const cplx *x,
                 cplx *y) noexcept {
  for (std::int64_t r = 0; r < nrows; ++r) {
    double re = 0.0, im = 0.0;
    for (std::int64_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      const double vr = val[k].real(), vi = val[k].imag();
      const cplx xv = x[col[k]];
      re += vr * xv.real() - vi * xv.imag();
      im += vr * xv.imag() + vi * xv.real();
    }
    y[r] = {re, im};
  }
}

constexpr KernelTable kScalarTable = {
    dot_conj_scalar, norm_sq_scalar, axpy_scalar,
    scale_scalar,    spmv_scalar,    "scalar",
};

} // namespace

const KernelTable *scalar_table() noexcept { return &kScalarTable; }

} // namespace pspin::kern::detail
