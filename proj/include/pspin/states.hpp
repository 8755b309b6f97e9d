#pragma once

#include "pspin/fock.hpp"
#include "pspin/pseudospin.hpp"

#include <vector>

namespace pspin {

struct GhzSpec {
  int num_modes = 3;
  int dim = 4;
  /// One shared profile or one per mode.
  std::vector<ParityProfile> profiles = {ParityProfile::fock0()};
};

/// N-mode parity-entangled GHZ state (|+...+> - |-...->)/sqrt(2). The two
/// branches are orthogonal mode by mode, so the norm is exactly 1.
StateVector ghz_state(const GhzSpec &spec);

struct NopaParams {
  double r = 1.0; // squeezing parameter, > 0
};

struct NopaResult {
  StateVector state; // renormalized to unit norm
  /// Probability weight of the discarded Fock tail before renormalization:
  /// 1 - sum_{n<dim} tanh(r)^{2n} / cosh(r)^2 = tanh(r)^{2 dim}.
  double deficit = 0.0;
};

/// Two-mode squeezed vacuum truncated to dim levels per mode: amplitudes
/// tanh(r)^n / cosh(r) on |n,n>, renormalized.
NopaResult nopa_state(const NopaParams &p, int dim);

/// Maximal two-mode CHSH expectation on the (untruncated) squeezed vacuum:
/// 2 sqrt(1 + tanh^2(2r)). Follows from the correlation
/// E(a,b) = a_z b_z + tanh(2r)(a_x b_x - a_y b_y).
double nopa_chsh_closed_form(double r);

/// The same closed-form pair correlation E(a,b); used as an independent
/// cross-check of operator expectations.
double nopa_pair_correlation(double r, const UnitVector3 &a,
                             const UnitVector3 &b);

} // namespace pspin
