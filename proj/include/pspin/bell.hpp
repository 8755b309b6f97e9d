#pragma once

#include "pspin/fock.hpp"
#include "pspin/pseudospin.hpp"

#include <cstdint>
#include <utility>
#include <vector>

// Bell-CHSH and Mermin correlation operators over N truncated modes.
//
// The two-mode Bell operator is
//   B_2 = (a1.s)x[(a2.s)+(a2'.s)] + (a1'.s)x[(a2.s)-(a2'.s)]
// and for N > 2 the recursion
//   B_N = B_{N-1} x (a_N.s + a_N'.s)/2 + B'_{N-1} x (a_N.s - a_N'.s)/2,
// where B' is B with every a_m <-> a_m'. Local realism bounds |<B_N>| by 2,
// quantum mechanics by 2^((N+1)/2).

namespace pspin {

struct MeasurementSettings {
  /// (a_m, a_m') per mode, mode 1 first.
  std::vector<std::pair<UnitVector3, UnitVector3>> pairs;

  int n_modes() const noexcept { return static_cast<int>(pairs.size()); }
  MeasurementSettings swapped() const;
};

struct BellReport {
  int n_modes = 2;
  double value = 0.0; // signed <B_N>
  double abs_value = 0.0;
  double local_bound = 2.0;
  double quantum_bound = 0.0; // 2^((N+1)/2)
  double violation_factor = 0.0; // abs_value / local_bound
  MeasurementSettings settings;

  /// Validates |value| <= quantum_bound (1 + 1e-9).
  static BellReport make(int n_modes, double value,
                         MeasurementSettings settings);
};

SparseOperator bell_operator(const MeasurementSettings &settings, int dim);
SparseOperator bell_operator_prime(const MeasurementSettings &settings,
                                   int dim);

/// Mermin operator A = 1/2 [ prod_m (s_mx + i s_my) + h.c. ]; the N-mode GHZ
/// state is an eigenvector with eigenvalue -2^(N-1).
SparseOperator mermin_operator(int n_modes, int dim);

struct GhzEigenResiduals {
  double xxx = 0.0; // || s1x s2x s3x |psi> + |psi> ||
  double xyy = 0.0; // || s1x s2y s3y |psi> - |psi> ||
  double yxy = 0.0;
  double yyx = 0.0;

  double max_residual() const noexcept;
};

/// Residuals of the four three-mode GHZ eigenvalue equations (signs
/// -,+,+,+) for an arbitrary 3-mode state.
GhzEigenResiduals ghz_eigen_check(const StateVector &state);

/// Frobenius-norm residual of the decomposition
///   B_N^2 = B_{N-1}^2 x (1 + a_N.a_N')/2 + B'_{N-1}^2 x (1 - a_N.a_N')/2
///           - [B_{N-1}, B'_{N-1}] x (i/2)(a_N x a_N').s_N
/// against B_N^2 computed directly. Requires N >= 3.
double bell_square_identity_check(const MeasurementSettings &settings,
                                  int dim);

/// Expansion of B_N into pure correlation terms: coeff * (x)_m (c_m . s)
/// where bit m of primed_mask selects a_m' over a_m. Exact dyadic
/// coefficients; used as an operator-free evaluation route.
struct BellTerm {
  double coeff = 0.0;
  std::uint32_t primed_mask = 0;
};

std::vector<BellTerm> bell_expansion(int n_modes);

} // namespace pspin
