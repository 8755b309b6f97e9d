#pragma once

#include "pspin/bell.hpp"
#include "pspin/fock.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

// Maximization of |<B_N>| over measurement settings.
//
// optimize_settings runs a multi-start Nelder-Mead simplex over an angle
// parameterization of the settings (4N angles unconstrained, 2N with a plane
// constraint) and evaluates <B_N> through the operator path. Restarts are
// sampled uniformly on the sphere from a seeded generator, so results are
// reproducible. grid_search_planar is the independent oracle: an exhaustive
// planar grid evaluated through correlation tensors and the scalar term
// expansion of B_N, sharing no code with the operator path beyond the
// pseudospin definitions.

namespace pspin {

enum class PlaneConstraint { None, XY, XZ };

struct OptimizerConfig {
  int restarts = 16;
  int max_iters = 2000; // simplex iterations per restart
  double tol = 1e-9;    // convergence tolerance on the objective spread
  std::uint64_t seed = 0;
  PlaneConstraint plane = PlaneConstraint::None;
};

/// (theta, phi) -> (sin t cos p, sin t sin p, cos t)
UnitVector3 vector_from_angles(double theta, double phi);
std::pair<double, double> angles_from_vector(const UnitVector3 &v);

/// Angle -> unit vector within a coordinate plane. XY: (cos a, sin a, 0);
/// XZ: (sin a, 0, cos a).
UnitVector3 planar_vector(PlaneConstraint plane, double angle);

/// Best |<B_N>| found across restarts; the report carries the signed value
/// and the achieving settings.
BellReport optimize_settings(const StateVector &state,
                             const OptimizerConfig &cfg = {});

/// Exhaustive maximum of |<B_N>| over planar settings on the angle grid
/// {k * resolution : 0 <= k < floor(2 pi / resolution)}. The search space
/// factorizes over mode 1 (B_N is jointly linear in a_1.s and a_1'.s), which
/// is used to evaluate the full grid exactly without enumerating it.
BellReport grid_search_planar(const StateVector &state, PlaneConstraint plane,
                              double resolution);

/// Central finite differences of an objective over angle vectors.
std::vector<double>
finite_difference_gradient(const std::function<double(std::span<const double>)> &objective,
                           std::span<const double> angles, double step);

} // namespace pspin
