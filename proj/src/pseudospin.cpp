#include "pspin/pseudospin.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace pspin {

PseudospinSet build_pseudospin(int dim) {
  if (dim < 2 || dim % 2 != 0) {
    throw std::invalid_argument(
        "pseudospin truncation must be even and at least 2");
  }
  const std::int64_t d = dim;
  std::vector<Triplet> ez, ep, em, ex, ey;
  for (std::int64_t n = 0; n < d; ++n) {
    ez.push_back({n, n, n % 2 == 0 ? 1.0 : -1.0});
  }
  for (std::int64_t n = 0; 2 * n + 1 < d; ++n) {
    ep.push_back({2 * n, 2 * n + 1, 1.0});
    em.push_back({2 * n + 1, 2 * n, 1.0});
    ex.push_back({2 * n, 2 * n + 1, 1.0});
    ex.push_back({2 * n + 1, 2 * n, 1.0});
    ey.push_back({2 * n, 2 * n + 1, cplx{0.0, -1.0}});
    ey.push_back({2 * n + 1, 2 * n, cplx{0.0, 1.0}});
  }
  return PseudospinSet{
      dim,
      SparseOperator(d, std::move(ex), "sx"),
      SparseOperator(d, std::move(ey), "sy"),
      SparseOperator(d, std::move(ez), "sz"),
      SparseOperator(d, std::move(ep), "s+"),
      SparseOperator(d, std::move(em), "s-"),
  };
}

UnitVector3::UnitVector3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
  const double sq = x * x + y * y + z * z;
  if (std::abs(sq - 1.0) > 1e-12) {
    throw std::invalid_argument("direction vector is not unit length");
  }
}

UnitVector3 UnitVector3::normalized(double x_, double y_, double z_) {
  const double n = std::sqrt(x_ * x_ + y_ * y_ + z_ * z_);
  if (n == 0.0) {
    throw std::invalid_argument("cannot normalize the zero vector");
  }
  UnitVector3 v;
  v.x = x_ / n;
  v.y = y_ / n;
  v.z = z_ / n;
  return v;
}

SparseOperator dot_spin(const UnitVector3 &a, const PseudospinSet &spin) {
  const double sq = a.x * a.x + a.y * a.y + a.z * a.z;
  if (std::abs(std::sqrt(sq) - 1.0) > 1e-9) {
    throw std::invalid_argument("dot_spin requires a unit vector");
  }
  const std::int64_t d = spin.dim;
  std::vector<Triplet> e;
  e.reserve(static_cast<std::size_t>(2 * d));
  for (std::int64_t n = 0; 2 * n + 1 < d; ++n) {
    e.push_back({2 * n, 2 * n, a.z});
    e.push_back({2 * n + 1, 2 * n + 1, -a.z});
    e.push_back({2 * n, 2 * n + 1, cplx{a.x, -a.y}});
    e.push_back({2 * n + 1, 2 * n, cplx{a.x, a.y}});
  }
  return SparseOperator(d, std::move(e), "a.s");
}

SparseOperator rotation(const RotationParams &p, const PseudospinSet &spin) {
  if (!std::isfinite(p.zeta)) {
    throw std::invalid_argument("rotation angle must be finite");
  }
  const cplx c{std::cos(p.zeta / 2.0), 0.0};
  const cplx s{0.0, -std::sin(p.zeta / 2.0)};
  return (c * SparseOperator::identity(spin.dim) + s * dot_spin(p.axis, spin))
      .with_label("U");
}

ParityProfile::ParityProfile(std::vector<cplx> coefficients)
    : coeff_(std::move(coefficients)) {
  if (coeff_.empty()) {
    throw std::invalid_argument("parity profile must not be empty");
  }
  double ssq = 0.0;
  for (const cplx &c : coeff_) {
    ssq += std::norm(c);
  }
  if (ssq == 0.0) {
    throw std::invalid_argument("parity profile must not be all zero");
  }
  const double inv = 1.0 / std::sqrt(ssq);
  for (cplx &c : coeff_) {
    c *= inv;
  }
}

ParityProfile ParityProfile::fock0() { return ParityProfile({cplx{1.0, 0.0}}); }

ParityProfile ParityProfile::geometric(double q, int len) {
  if (len < 1) {
    throw std::invalid_argument("geometric profile needs at least one term");
  }
  if (!(q > 0.0)) {
    throw std::invalid_argument("geometric profile ratio must be positive");
  }
  std::vector<cplx> c(static_cast<std::size_t>(len));
  double t = 1.0;
  for (int n = 0; n < len; ++n) {
    c[static_cast<std::size_t>(n)] = t;
    t *= q;
  }
  return ParityProfile(std::move(c));
}

ParityProfile ParityProfile::uniform(int len) {
  if (len < 1) {
    throw std::invalid_argument("uniform profile needs at least one term");
  }
  return ParityProfile(std::vector<cplx>(static_cast<std::size_t>(len), 1.0));
}

StateVector parity_state(const ParityProfile &profile, Parity parity,
                         int dim) {
  if (dim < 2 || dim % 2 != 0) {
    throw std::invalid_argument(
        "parity state truncation must be even and at least 2");
  }
  if (profile.length() > dim / 2) {
    throw std::invalid_argument("parity profile longer than dim/2");
  }
  std::vector<cplx> amp(static_cast<std::size_t>(dim));
  const auto coeff = profile.coefficients();
  const int offset = parity == Parity::Even ? 0 : 1;
  for (int n = 0; n < profile.length(); ++n) {
    amp[static_cast<std::size_t>(2 * n + offset)] =
        coeff[static_cast<std::size_t>(n)];
  }
  return StateVector(ModeSpace(1, dim), std::move(amp));
}

} // namespace pspin
