#include "pspin/lhv.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace pspin {

namespace {

// bit 2m = p_x of mode m (set -> +1), bit 2m+1 = p_y of mode m
LhvAssignment unpack(std::uint32_t bits, int n_modes) {
  LhvAssignment a;
  a.p_x.resize(static_cast<std::size_t>(n_modes));
  a.p_y.resize(static_cast<std::size_t>(n_modes));
  for (int m = 0; m < n_modes; ++m) {
    a.p_x[static_cast<std::size_t>(m)] = (bits >> (2 * m)) & 1 ? 1 : -1;
    a.p_y[static_cast<std::size_t>(m)] = (bits >> (2 * m + 1)) & 1 ? 1 : -1;
  }
  return a;
}

} // namespace

GhzParadoxResult ghz_constraints_count(const std::array<int, 4> &signs,
                                       const std::array<bool, 4> &active) {
  for (int s : signs) {
    if (s != 1 && s != -1) {
      throw std::invalid_argument("constraint signs must be +-1");
    }
  }
  GhzParadoxResult out;
  out.assignments_checked = 64;
  for (std::uint32_t bits = 0; bits < 64; ++bits) {
    const LhvAssignment a = unpack(bits, 3);
    const int vals[4] = {
        a.p_x[0] * a.p_x[1] * a.p_x[2],
        a.p_x[0] * a.p_y[1] * a.p_y[2],
        a.p_y[0] * a.p_x[1] * a.p_y[2],
        a.p_y[0] * a.p_y[1] * a.p_x[2],
    };
    bool ok = true;
    for (int c = 0; c < 4; ++c) {
      if (active[static_cast<std::size_t>(c)] &&
          vals[c] != signs[static_cast<std::size_t>(c)]) {
        ok = false;
        break;
      }
    }
    if (ok) {
      if (!out.witness) {
        out.witness = a;
      }
      ++out.satisfying_count;
    }
  }
  out.satisfiable = out.satisfying_count > 0;
  return out;
}

GhzParadoxResult ghz_constraints_satisfiable() {
  return ghz_constraints_count({-1, 1, 1, 1}, {true, true, true, true});
}

MerminLhvResult lhv_max_mermin(int n_modes) {
  if (n_modes < 2 || n_modes > 14) {
    throw std::invalid_argument("LHV enumeration supports 2 <= N <= 14");
  }
  // Each factor (p_x + i p_y) keeps the product in Gaussian integers, so the
  // search is exact integer arithmetic.
  std::int64_t best = -1;
  std::uint32_t best_bits = 0;
  const std::uint32_t count = 1u << (2 * n_modes);
  for (std::uint32_t bits = 0; bits < count; ++bits) {
    std::int64_t re = 1, im = 0;
    for (int m = 0; m < n_modes; ++m) {
      const std::int64_t px = (bits >> (2 * m)) & 1 ? 1 : -1;
      const std::int64_t py = (bits >> (2 * m + 1)) & 1 ? 1 : -1;
      const std::int64_t nre = re * px - im * py;
      im = re * py + im * px;
      re = nre;
    }
    const std::int64_t mag = re < 0 ? -re : re;
    if (mag > best) {
      best = mag;
      best_bits = bits;
    }
  }
  MerminLhvResult out;
  out.max_value = static_cast<double>(best);
  out.argmax = unpack(best_bits, n_modes);
  out.paper_bound = std::pow(2.0, n_modes / 2.0);
  return out;
}

GapReport quantum_vs_lhv_gap(int n_modes) {
  const MerminLhvResult lhv = lhv_max_mermin(n_modes);
  GapReport out;
  out.quantum = std::pow(2.0, n_modes - 1);
  out.lhv = lhv.max_value;
  out.ratio = out.quantum / out.lhv;
  return out;
}

} // namespace pspin
