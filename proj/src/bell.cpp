#include "pspin/bell.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace pspin {

namespace {

void check_settings(const MeasurementSettings &settings, int dim) {
  if (settings.n_modes() < 2) {
    throw std::invalid_argument("Bell operator needs at least two modes");
  }
  if (dim < 2 || dim % 2 != 0) {
    throw std::invalid_argument("Bell operator truncation must be even");
  }
}

/// (B_N, B'_N) built together; the recursion couples them.
std::pair<SparseOperator, SparseOperator>
bell_pair(const MeasurementSettings &settings, int dim) {
  const PseudospinSet spin = build_pseudospin(dim);
  const auto &p = settings.pairs;
  SparseOperator a1 = dot_spin(p[0].first, spin);
  SparseOperator a1p = dot_spin(p[0].second, spin);
  SparseOperator a2 = dot_spin(p[1].first, spin);
  SparseOperator a2p = dot_spin(p[1].second, spin);
  SparseOperator b = kron(a1, a2 + a2p) + kron(a1p, a2 - a2p);
  SparseOperator bp = kron(a1p, a2p + a2) + kron(a1, a2p - a2);
  const cplx half{0.5, 0.0};
  for (int m = 2; m < settings.n_modes(); ++m) {
    SparseOperator s = dot_spin(p[static_cast<std::size_t>(m)].first, spin);
    SparseOperator sp = dot_spin(p[static_cast<std::size_t>(m)].second, spin);
    SparseOperator sum = half * (s + sp);
    SparseOperator diff = half * (s - sp);
    SparseOperator next = kron(b, sum) + kron(bp, diff);
    SparseOperator next_p = kron(bp, sum) - kron(b, diff);
    b = std::move(next);
    bp = std::move(next_p);
  }
  return {std::move(b), std::move(bp)};
}

} // namespace

MeasurementSettings MeasurementSettings::swapped() const {
  MeasurementSettings out;
  out.pairs.reserve(pairs.size());
  for (const auto &[a, ap] : pairs) {
    out.pairs.emplace_back(ap, a);
  }
  return out;
}

BellReport BellReport::make(int n_modes, double value,
                            MeasurementSettings settings) {
  BellReport r;
  r.n_modes = n_modes;
  r.value = value;
  r.abs_value = std::abs(value);
  r.quantum_bound = std::pow(2.0, (n_modes + 1) / 2.0);
  r.violation_factor = r.abs_value / r.local_bound;
  r.settings = std::move(settings);
  if (r.abs_value > r.quantum_bound * (1.0 + 1e-9)) {
    throw std::runtime_error("Bell expectation exceeds the quantum bound");
  }
  return r;
}

SparseOperator bell_operator(const MeasurementSettings &settings, int dim) {
  check_settings(settings, dim);
  return bell_pair(settings, dim).first.with_label("B_N");
}

SparseOperator bell_operator_prime(const MeasurementSettings &settings,
                                   int dim) {
  check_settings(settings, dim);
  return bell_pair(settings, dim).second.with_label("B'_N");
}

SparseOperator mermin_operator(int n_modes, int dim) {
  if (n_modes < 2) {
    throw std::invalid_argument("Mermin operator needs at least two modes");
  }
  if (dim < 2 || dim % 2 != 0) {
    throw std::invalid_argument("Mermin operator truncation must be even");
  }
  const PseudospinSet spin = build_pseudospin(dim);
  const SparseOperator ladder = spin.sx + cplx{0.0, 1.0} * spin.sy;
  SparseOperator k = ladder;
  for (int m = 1; m < n_modes; ++m) {
    k = kron(k, ladder);
  }
  return (cplx{0.5, 0.0} * (k + k.adjoint())).with_label("A");
}

GhzEigenResiduals ghz_eigen_check(const StateVector &state) {
  if (state.space().num_modes != 3) {
    throw std::invalid_argument("GHZ eigenvalue check needs a 3-mode state");
  }
  const PseudospinSet spin = build_pseudospin(state.space().dim);
  const auto triple = [&](const SparseOperator &o1, const SparseOperator &o2,
                          const SparseOperator &o3) {
    return kron(kron(o1, o2), o3);
  };
  GhzEigenResiduals r;
  r.xxx = distance(apply(triple(spin.sx, spin.sx, spin.sx), state),
                   cplx{-1.0, 0.0} * state);
  r.xyy = distance(apply(triple(spin.sx, spin.sy, spin.sy), state), state);
  r.yxy = distance(apply(triple(spin.sy, spin.sx, spin.sy), state), state);
  r.yyx = distance(apply(triple(spin.sy, spin.sy, spin.sx), state), state);
  return r;
}

double GhzEigenResiduals::max_residual() const noexcept {
  return std::max(std::max(xxx, xyy), std::max(yxy, yyx));
}

double bell_square_identity_check(const MeasurementSettings &settings,
                                  int dim) {
  check_settings(settings, dim);
  const int n = settings.n_modes();
  if (n < 3) {
    throw std::invalid_argument(
        "square identity relates N to N-1 and needs N >= 3");
  }
  MeasurementSettings head;
  head.pairs.assign(settings.pairs.begin(), settings.pairs.end() - 1);
  const auto [b, bp] = bell_pair(head, dim);
  const SparseOperator bn = bell_operator(settings, dim);

  const UnitVector3 &a = settings.pairs.back().first;
  const UnitVector3 &ap = settings.pairs.back().second;
  const double adot = a.dot(ap);
  const double cx = a.y * ap.z - a.z * ap.y;
  const double cy = a.z * ap.x - a.x * ap.z;
  const double cz = a.x * ap.y - a.y * ap.x;

  const PseudospinSet spin = build_pseudospin(dim);
  const SparseOperator cross_s = cplx{cx, 0.0} * spin.sx +
                                 cplx{cy, 0.0} * spin.sy +
                                 cplx{cz, 0.0} * spin.sz;
  const SparseOperator id = SparseOperator::identity(dim);
  const SparseOperator rhs =
      kron(b * b, cplx{0.5 * (1.0 + adot), 0.0} * id) +
      kron(bp * bp, cplx{0.5 * (1.0 - adot), 0.0} * id) -
      kron(b * bp - bp * b, cplx{0.0, 0.5} * cross_s);
  return (bn * bn - rhs).frobenius_norm();
}

std::vector<BellTerm> bell_expansion(int n_modes) {
  if (n_modes < 2) {
    throw std::invalid_argument("Bell expansion needs at least two modes");
  }
  // term lists for (B_N, B'_N), keyed by primed mask
  std::map<std::uint32_t, double> b, bp;
  b[0b00] += 1.0;  // a1 a2
  b[0b10] += 1.0;  // a1 a2'
  b[0b01] += 1.0;  // a1' a2
  b[0b11] -= 1.0;  // a1' a2'
  bp[0b11] += 1.0;
  bp[0b01] += 1.0;
  bp[0b10] += 1.0;
  bp[0b00] -= 1.0;
  for (int m = 2; m < n_modes; ++m) {
    std::map<std::uint32_t, double> nb, nbp;
    const std::uint32_t bit = 1u << m;
    for (const auto &[mask, c] : b) {
      nb[mask] += 0.5 * c;        // a_m branch of (a+a')/2
      nb[mask | bit] += 0.5 * c;  // a_m' branch
    }
    for (const auto &[mask, c] : bp) {
      nb[mask] += 0.5 * c;        // B' x (a-a')/2
      nb[mask | bit] -= 0.5 * c;
      nbp[mask] += 0.5 * c;       // B' x (a'+a)/2
      nbp[mask | bit] += 0.5 * c;
    }
    for (const auto &[mask, c] : b) {
      nbp[mask] -= 0.5 * c;       // B x (a'-a)/2
      nbp[mask | bit] += 0.5 * c;
    }
    b = std::move(nb);
    bp = std::move(nbp);
  }
  std::vector<BellTerm> out;
  out.reserve(b.size());
  for (const auto &[mask, c] : b) {
    if (c != 0.0) {
      out.push_back({c, mask});
    }
  }
  return out;
}

} // namespace pspin
