#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pspin/kernels.hpp"
#include "pspin/rng.hpp"

#include <vector>

using namespace pspin;
using kern::cplx;

namespace {

std::vector<cplx> random_vec(Rng &rng, std::size_t n) {
  std::vector<cplx> v(n);
  for (cplx &c : v) {
    c = {rng.normal(), rng.normal()};
  }
  return v;
}

struct Csr {
  std::vector<std::int64_t> row_ptr, col;
  std::vector<cplx> val;
};

Csr random_csr(Rng &rng, std::int64_t n, int max_row_nnz) {
  Csr m;
  m.row_ptr.push_back(0);
  for (std::int64_t r = 0; r < n; ++r) {
    const int nnz = static_cast<int>(rng.next_u64() %
                                     static_cast<std::uint64_t>(max_row_nnz + 1));
    std::int64_t c = static_cast<std::int64_t>(
        rng.next_u64() % static_cast<std::uint64_t>(n));
    for (int k = 0; k < nnz && c < n; ++k) {
      m.col.push_back(c);
      m.val.push_back({rng.normal(), rng.normal()});
      c += 1 + static_cast<std::int64_t>(rng.next_u64() % 3);
    }
    m.row_ptr.push_back(static_cast<std::int64_t>(m.col.size()));
  }
  return m;
}

} // namespace

TEST_CASE("scalar kernels match naive reference arithmetic") {
  kern::set_lane(kern::Lane::Scalar);
  Rng rng(11);
  const std::size_t n = 37; // odd length exercises the tails
  const auto x = random_vec(rng, n);
  const auto y = random_vec(rng, n);

  cplx ref{};
  double ref_norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ref += std::conj(x[i]) * y[i];
    ref_norm += std::norm(x[i]);
  }
  CHECK(std::abs(kern::dot_conj(x.data(), y.data(), n) - ref) < 1e-12);
  CHECK(kern::norm_sq(x.data(), n) == doctest::Approx(ref_norm).epsilon(1e-14));

  const cplx a{0.75, -1.25};
  auto z = y;
  kern::axpy(a, x.data(), z.data(), n);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(std::abs(z[i] - (y[i] + a * x[i])) < 1e-13);
  }
  auto w = x;
  kern::scale(a, w.data(), n);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(std::abs(w[i] - a * x[i]) < 1e-13);
  }
}

TEST_CASE("spmv matches a naive triple loop") {
  kern::set_lane(kern::Lane::Scalar);
  Rng rng(17);
  const std::int64_t n = 53;
  const Csr m = random_csr(rng, n, 5);
  const auto x = random_vec(rng, static_cast<std::size_t>(n));
  std::vector<cplx> y(static_cast<std::size_t>(n));
  kern::spmv(m.row_ptr.data(), m.col.data(), m.val.data(), n, x.data(),
             y.data());
  for (std::int64_t r = 0; r < n; ++r) {
    cplx ref{};
    for (std::int64_t k = m.row_ptr[static_cast<std::size_t>(r)];
         k < m.row_ptr[static_cast<std::size_t>(r) + 1]; ++k) {
      ref += m.val[static_cast<std::size_t>(k)] *
             x[static_cast<std::size_t>(m.col[static_cast<std::size_t>(k)])];
    }
    CHECK(std::abs(y[static_cast<std::size_t>(r)] - ref) < 1e-12);
  }
}

TEST_CASE("simd lane agrees with the scalar reference lane") {
  if (!kern::lane_available(kern::Lane::Avx2)) {
    MESSAGE("avx2 lane not available on this host; dispatch stays scalar");
    CHECK(kern::active_lane() == kern::Lane::Scalar);
    return;
  }
  Rng rng(23);
  for (const std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{3},
                              std::size_t{64}, std::size_t{1023},
                              std::size_t{4096}}) {
    const auto x = random_vec(rng, n);
    const auto y = random_vec(rng, n);
    const cplx a{-0.37, 2.11};

    kern::set_lane(kern::Lane::Scalar);
    const cplx dot_s = kern::dot_conj(x.data(), y.data(), n);
    const double norm_s = kern::norm_sq(x.data(), n);
    auto axpy_s = y;
    kern::axpy(a, x.data(), axpy_s.data(), n);
    auto scale_s = x;
    kern::scale(a, scale_s.data(), n);

    kern::set_lane(kern::Lane::Avx2);
    const cplx dot_v = kern::dot_conj(x.data(), y.data(), n);
    const double norm_v = kern::norm_sq(x.data(), n);
    auto axpy_v = y;
    kern::axpy(a, x.data(), axpy_v.data(), n);
    auto scale_v = x;
    kern::scale(a, scale_v.data(), n);

    const double tol = 1e-13 * static_cast<double>(n);
    CHECK(std::abs(dot_s - dot_v) < tol);
    CHECK(std::abs(norm_s - norm_v) < tol);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(axpy_s[i] - axpy_v[i]) < 1e-13);
      CHECK(std::abs(scale_s[i] - scale_v[i]) < 1e-13);
    }
  }
  kern::set_lane(kern::Lane::Scalar);
}

TEST_CASE("simd spmv agrees with the scalar lane") {
  if (!kern::lane_available(kern::Lane::Avx2)) {
    return;
  }
  Rng rng(29);
  for (const std::int64_t n : {std::int64_t{5}, std::int64_t{64},
                               std::int64_t{257}}) {
    const Csr m = random_csr(rng, n, 7);
    const auto x = random_vec(rng, static_cast<std::size_t>(n));
    std::vector<cplx> ys(static_cast<std::size_t>(n)),
        yv(static_cast<std::size_t>(n));
    kern::set_lane(kern::Lane::Scalar);
    kern::spmv(m.row_ptr.data(), m.col.data(), m.val.data(), n, x.data(),
               ys.data());
    kern::set_lane(kern::Lane::Avx2);
    kern::spmv(m.row_ptr.data(), m.col.data(), m.val.data(), n, x.data(),
               yv.data());
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
      CHECK(std::abs(ys[i] - yv[i]) < 1e-12);
    }
  }
  kern::set_lane(kern::Lane::Scalar);
}

TEST_CASE("lane selection is reported and reversible") {
  CHECK(kern::lane_available(kern::Lane::Scalar));
  kern::set_lane(kern::Lane::Scalar);
  CHECK(kern::active_lane() == kern::Lane::Scalar);
  CHECK(std::string(kern::lane_name()) == "scalar");
  if (kern::lane_available(kern::Lane::Avx2)) {
    kern::set_lane(kern::Lane::Avx2);
    CHECK(std::string(kern::lane_name()) == "avx2");
    kern::set_lane(kern::Lane::Scalar);
  }
}
