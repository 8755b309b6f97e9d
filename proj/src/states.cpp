#include "pspin/states.hpp"

#include <cmath>
#include <stdexcept>

namespace pspin {

StateVector ghz_state(const GhzSpec &spec) {
  if (spec.num_modes < 2) {
    throw std::invalid_argument("GHZ state needs at least two modes");
  }
  if (spec.profiles.size() != 1 &&
      spec.profiles.size() != static_cast<std::size_t>(spec.num_modes)) {
    throw std::invalid_argument(
        "GHZ spec takes one shared profile or one per mode");
  }
  const auto profile_for = [&](int m) -> const ParityProfile & {
    return spec.profiles.size() == 1
               ? spec.profiles[0]
               : spec.profiles[static_cast<std::size_t>(m)];
  };
  StateVector plus = parity_state(profile_for(0), Parity::Even, spec.dim);
  StateVector minus = parity_state(profile_for(0), Parity::Odd, spec.dim);
  for (int m = 1; m < spec.num_modes; ++m) {
    plus = tensor(plus, parity_state(profile_for(m), Parity::Even, spec.dim));
    minus = tensor(minus, parity_state(profile_for(m), Parity::Odd, spec.dim));
  }
  const cplx inv_sqrt2{1.0 / std::sqrt(2.0), 0.0};
  return inv_sqrt2 * (plus - minus);
}

NopaResult nopa_state(const NopaParams &p, int dim) {
  if (!(p.r > 0.0)) {
    throw std::invalid_argument("squeezing parameter must be > 0");
  }
  if (dim < 2) {
    throw std::invalid_argument("NOPA truncation must be at least 2");
  }
  const double lambda = std::tanh(p.r);
  const double inv_cosh = 1.0 / std::cosh(p.r);
  std::vector<double> amp(static_cast<std::size_t>(dim));
  double raw_norm_sq = 0.0;
  double t = inv_cosh;
  for (int n = 0; n < dim; ++n) {
    amp[static_cast<std::size_t>(n)] = t;
    raw_norm_sq += t * t;
    t *= lambda;
  }
  const double deficit = std::max(0.0, 1.0 - raw_norm_sq);
  const double inv_norm = 1.0 / std::sqrt(raw_norm_sq);
  ModeSpace space(2, dim);
  std::vector<cplx> v(static_cast<std::size_t>(space.total_dim()));
  for (int n = 0; n < dim; ++n) {
    v[static_cast<std::size_t>(n) * static_cast<std::size_t>(dim) +
      static_cast<std::size_t>(n)] = amp[static_cast<std::size_t>(n)] * inv_norm;
  }
  return {StateVector(space, std::move(v)), deficit};
}

double nopa_chsh_closed_form(double r) {
  const double k = std::tanh(2.0 * r);
  return 2.0 * std::sqrt(1.0 + k * k);
}

double nopa_pair_correlation(double r, const UnitVector3 &a,
                             const UnitVector3 &b) {
  const double k = std::tanh(2.0 * r);
  return a.z * b.z + k * (a.x * b.x - a.y * b.y);
}

} // namespace pspin
