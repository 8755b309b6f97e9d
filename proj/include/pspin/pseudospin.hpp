#pragma once

#include "pspin/fock.hpp"

#include <vector>

// Parity pseudospin operators on a single truncated mode.
//
// s_z assigns +1 to even and -1 to odd Fock levels; s_+ maps |2n+1> to |2n>,
// s_- is its adjoint; s_x = s_+ + s_-, s_y = -i(s_+ - s_-). At any even
// truncation D the five operators close the spin-1/2 algebra exactly
// ([s_z, s_+-] = +-2 s_+-, [s_+, s_-] = s_z, {s_u, s_v} = 2 delta_uv), which
// is why odd D is rejected outright: the unpaired top level would break
// every one of those relations.

namespace pspin {

struct PseudospinSet {
  int dim;
  SparseOperator sx, sy, sz, s_plus, s_minus;
};

/// Build the pseudospin operators at even truncation dim >= 2.
PseudospinSet build_pseudospin(int dim);

struct UnitVector3 {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  UnitVector3() = default;
  UnitVector3(double x_, double y_, double z_);

  /// Normalize an arbitrary nonzero vector.
  static UnitVector3 normalized(double x_, double y_, double z_);

  double dot(const UnitVector3 &o) const noexcept {
    return x * o.x + y * o.y + z * o.z;
  }
};

/// a_x s_x + a_y s_y + a_z s_z. Hermitian with eigenvalues +-1; its square
/// is the identity.
SparseOperator dot_spin(const UnitVector3 &a, const PseudospinSet &spin);

struct RotationParams {
  double zeta = 0.0;
  UnitVector3 axis;
};

/// Rotation in parity space: cos(zeta/2) I - i sin(zeta/2) (axis . s).
/// Equals exp(-i zeta/2 axis . s) because (axis . s)^2 = I.
SparseOperator rotation(const RotationParams &p, const PseudospinSet &spin);

enum class Parity { Even, Odd };

/// Coefficient sequence {A_n} of a definite-parity state, normalized at
/// construction.
class ParityProfile {
public:
  explicit ParityProfile(std::vector<cplx> coefficients);

  static ParityProfile fock0();
  /// A_n proportional to q^n over len retained terms.
  static ParityProfile geometric(double q, int len);
  /// A_n = 1/sqrt(len)
  static ParityProfile uniform(int len);

  std::span<const cplx> coefficients() const noexcept { return coeff_; }
  int length() const noexcept { return static_cast<int>(coeff_.size()); }

private:
  std::vector<cplx> coeff_;
};

/// Even parity puts A_n on |2n>, odd parity on |2n+1>. Single-mode state of
/// the given truncation; profile length must not exceed dim/2.
StateVector parity_state(const ParityProfile &profile, Parity parity, int dim);

} // namespace pspin
