#pragma once

#include <array>
#include <optional>
#include <vector>

// Brute-force local-hidden-variable engine. Assignments give each mode
// predetermined outcomes p_x, p_y in {-1,+1} for the x- and y-axis parity
// spin measurements; enumeration is exhaustive and the reported witnesses
// are the lowest-index ones, so results are deterministic.

namespace pspin {

struct LhvAssignment {
  std::vector<int> p_x; // one +-1 entry per mode
  std::vector<int> p_y;
};

struct GhzParadoxResult {
  bool satisfiable = false;
  std::optional<LhvAssignment> witness;
  int satisfying_count = 0;
  int assignments_checked = 0;
};

/// Count assignments consistent with the four three-mode GHZ product
/// constraints p1x p2x p3x = signs[0], p1x p2y p3y = signs[1],
/// p1y p2x p3y = signs[2], p1y p2y p3x = signs[3], restricted to the
/// constraints enabled in `active`.
GhzParadoxResult ghz_constraints_count(const std::array<int, 4> &signs,
                                       const std::array<bool, 4> &active);

/// The paper's GHZ constraint system: signs (-1,+1,+1,+1), all four active.
/// Unsatisfiable; every one of the 64 assignments violates some constraint.
GhzParadoxResult ghz_constraints_satisfiable();

struct MerminLhvResult {
  double max_value = 0.0; // exact enumerated max of |Re prod (p_x + i p_y)|
  LhvAssignment argmax;
  double paper_bound = 0.0; // 2^(N/2)
};

/// Exact maximum of |Re prod_m (p_x[m] + i p_y[m])| over all 2^(2N)
/// assignments. N must be in [2, 14].
MerminLhvResult lhv_max_mermin(int n_modes);

struct GapReport {
  double quantum = 0.0; // 2^(N-1), the GHZ eigenvalue magnitude
  double lhv = 0.0;     // enumerated LHV maximum
  double ratio = 0.0;
};

GapReport quantum_vs_lhv_gap(int n_modes);

} // namespace pspin
