#pragma once

#include "pspin/bell.hpp"
#include "pspin/fock.hpp"
#include "pspin/pseudospin.hpp"
#include "pspin/rng.hpp"

#include <vector>

namespace pspin::testutil {

inline UnitVector3 random_unit(Rng &rng) {
  return UnitVector3::normalized(rng.normal(), rng.normal(), rng.normal());
}

inline std::vector<cplx> random_amplitudes(Rng &rng, std::int64_t n) {
  std::vector<cplx> v(static_cast<std::size_t>(n));
  for (cplx &c : v) {
    c = {rng.normal(), rng.normal()};
  }
  return v;
}

inline StateVector random_state(Rng &rng, ModeSpace space) {
  return StateVector(space, random_amplitudes(rng, space.total_dim()))
      .normalized();
}

inline ParityProfile random_profile(Rng &rng, int len) {
  std::vector<cplx> c(static_cast<std::size_t>(len));
  for (cplx &x : c) {
    x = {rng.normal(), rng.normal()};
  }
  return ParityProfile(std::move(c));
}

inline SparseOperator random_operator(Rng &rng, std::int64_t dim,
                                      int nnz_target) {
  std::vector<Triplet> e;
  for (int k = 0; k < nnz_target; ++k) {
    const auto r = static_cast<std::int64_t>(rng.next_u64() %
                                             static_cast<std::uint64_t>(dim));
    const auto c = static_cast<std::int64_t>(rng.next_u64() %
                                             static_cast<std::uint64_t>(dim));
    e.push_back({r, c, {rng.normal(), rng.normal()}});
  }
  return SparseOperator(dim, std::move(e));
}

inline SparseOperator random_hermitian(Rng &rng, std::int64_t dim,
                                       int nnz_target) {
  std::vector<Triplet> e;
  for (int k = 0; k < nnz_target; ++k) {
    const auto r = static_cast<std::int64_t>(rng.next_u64() %
                                             static_cast<std::uint64_t>(dim));
    const auto c = static_cast<std::int64_t>(rng.next_u64() %
                                             static_cast<std::uint64_t>(dim));
    if (r == c) {
      e.push_back({r, r, {rng.normal(), 0.0}});
    } else {
      const cplx v{rng.normal(), rng.normal()};
      e.push_back({r, c, v});
      e.push_back({c, r, std::conj(v)});
    }
  }
  return SparseOperator(dim, std::move(e));
}

inline MeasurementSettings random_settings(Rng &rng, int n_modes) {
  MeasurementSettings s;
  for (int m = 0; m < n_modes; ++m) {
    s.pairs.emplace_back(random_unit(rng), random_unit(rng));
  }
  return s;
}

/// max |a - b| over all entries of two same-dim operators
inline double max_abs_diff(const SparseOperator &a, const SparseOperator &b) {
  return (a - b).max_abs_entry();
}

} // namespace pspin::testutil
