#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pspin/bell.hpp"
#include "pspin/states.hpp"

#include "test_util.hpp"

#include <cmath>

using namespace pspin;
using pspin::testutil::max_abs_diff;

namespace {

const double kPi = std::acos(-1.0);

UnitVector3 xy_vec(double phi) {
  return UnitVector3::normalized(std::cos(phi), std::sin(phi), 0.0);
}

MeasurementSettings xy_settings(const std::vector<std::pair<double, double>> &phis) {
  MeasurementSettings s;
  for (const auto &[a, ap] : phis) {
    s.pairs.emplace_back(xy_vec(a), xy_vec(ap));
  }
  return s;
}

// planar settings reaching the quantum bound on GHZ_N: the recursion
// collapses to -Re[2 (1+i)^(N-1) e^{i sum phi}] when every primed angle is
// phi + pi/2, and the phase sums below push that to the bound
MeasurementSettings optimal_ghz_settings(int n) {
  std::vector<std::pair<double, double>> phis;
  if (n == 2) {
    phis = {{3 * kPi / 4, 3 * kPi / 4 + kPi / 2}, {0.0, kPi / 2}};
  } else if (n == 3) {
    phis = {{kPi / 6, kPi / 6 + kPi / 2},
            {kPi / 6, kPi / 6 + kPi / 2},
            {kPi / 6, kPi / 6 + kPi / 2}};
  } else {
    phis = {{kPi / 4, 3 * kPi / 4}, {0.0, kPi / 2}, {0.0, kPi / 2},
            {0.0, kPi / 2}};
  }
  return xy_settings(phis);
}

} // namespace

TEST_CASE("aligned z settings collapse B_2 to 2 sz x sz") {
  const UnitVector3 z(0.0, 0.0, 1.0);
  MeasurementSettings s;
  s.pairs.emplace_back(z, z);
  s.pairs.emplace_back(z, z);
  const PseudospinSet spin = build_pseudospin(4);
  CHECK(max_abs_diff(bell_operator(s, 4),
                     cplx{2.0, 0.0} * kron(spin.sz, spin.sz)) == 0.0);
}

TEST_CASE("CHSH-optimal settings reach the Cirel'son bound on GHZ_2") {
  const StateVector g = ghz_state({2, 4, {ParityProfile::fock0()}});
  const double v = expectation(bell_operator(optimal_ghz_settings(2), 4), g);
  CHECK(v == doctest::Approx(2.8284271247461903).epsilon(1e-13));
}

TEST_CASE("Mermin-phase settings reach the quantum bound for N=3 and N=4") {
  Rng rng(79);
  const StateVector g3 = ghz_state({3, 4, {testutil::random_profile(rng, 2)}});
  CHECK(expectation(bell_operator(optimal_ghz_settings(3), 4), g3) ==
        doctest::Approx(4.0).epsilon(1e-13));
  const StateVector g4 = ghz_state({4, 4, {testutil::random_profile(rng, 2)}});
  CHECK(expectation(bell_operator(optimal_ghz_settings(4), 4), g4) ==
        doctest::Approx(5.656854249492381).epsilon(1e-13));
}

TEST_CASE("bell operators are Hermitian for random settings") {
  Rng rng(83);
  for (int n = 2; n <= 4; ++n) {
    const MeasurementSettings s = testutil::random_settings(rng, n);
    CHECK(bell_operator(s, 4).hermitian());
    CHECK(bell_operator_prime(s, 4).hermitian());
  }
}

TEST_CASE("primed operator is the settings swap") {
  Rng rng(89);
  const MeasurementSettings s = testutil::random_settings(rng, 3);
  // swapping twice is the identity on settings
  CHECK(max_abs_diff(bell_operator(s.swapped().swapped(), 4),
                     bell_operator(s, 4)) == 0.0);
  // B'(s) = B(swapped s) entrywise
  CHECK(max_abs_diff(bell_operator_prime(s, 4),
                     bell_operator(s.swapped(), 4)) == 0.0);
  // a_m = a_m' collapses the two operators
  MeasurementSettings aligned;
  for (int m = 0; m < 3; ++m) {
    const UnitVector3 a = testutil::random_unit(rng);
    aligned.pairs.emplace_back(a, a);
  }
  CHECK(max_abs_diff(bell_operator_prime(aligned, 4),
                     bell_operator(aligned, 4)) == 0.0);
}

TEST_CASE("primed operator reaches the same optimum at swapped settings") {
  const StateVector g = ghz_state({2, 4, {ParityProfile::fock0()}});
  const MeasurementSettings s = optimal_ghz_settings(2);
  const double v =
      expectation(bell_operator_prime(s.swapped(), 4), g);
  CHECK(v == doctest::Approx(2.8284271247461903).epsilon(1e-13));
}

TEST_CASE("quantum bound holds for random states and settings") {
  Rng rng(97);
  const int n = 3, dim = 2;
  const double bound = std::pow(2.0, (n + 1) / 2.0);
  for (int t = 0; t < 100; ++t) {
    const MeasurementSettings s = testutil::random_settings(rng, n);
    const StateVector psi = testutil::random_state(rng, ModeSpace(n, dim));
    CHECK(std::abs(expectation(bell_operator(s, dim), psi)) <=
          bound * (1.0 + 1e-9));
  }
}

TEST_CASE("mermin operator on GHZ_2 at the qubit truncation") {
  const StateVector g = ghz_state({2, 2, {ParityProfile::fock0()}});
  CHECK(expectation(mermin_operator(2, 2), g) ==
        doctest::Approx(-2.0).epsilon(1e-13));
}

TEST_CASE("GHZ_N is a Mermin eigenvector with eigenvalue -2^(N-1)") {
  Rng rng(101);
  for (int n = 2; n <= 5; ++n) {
    const StateVector g = ghz_state({n, 4, {testutil::random_profile(rng, 2)}});
    const SparseOperator a = mermin_operator(n, 4);
    CHECK(a.hermitian());
    const double eig = -std::pow(2.0, n - 1);
    CHECK(distance(apply(a, g), cplx{eig, 0.0} * g) < 1e-10);
    CHECK(std::abs(expectation(a, g) - eig) < 1e-10);
  }
}

TEST_CASE("mermin expectation vanishes on the all-even product state") {
  const StateVector plus3 =
      tensor(tensor(parity_state(ParityProfile::fock0(), Parity::Even, 4),
                    parity_state(ParityProfile::fock0(), Parity::Even, 4)),
             parity_state(ParityProfile::fock0(), Parity::Even, 4));
  CHECK(expectation(mermin_operator(3, 4), plus3) == 0.0);
}

TEST_CASE("mermin ladder identity: sx + i sy = 2 s_+ per mode") {
  const PseudospinSet s = build_pseudospin(8);
  CHECK(max_abs_diff(s.sx + cplx{0.0, 1.0} * s.sy,
                     cplx{2.0, 0.0} * s.s_plus) == 0.0);
  // so K = 2^N kron of raising operators
  const SparseOperator k3 = kron(kron(s.s_plus, s.s_plus), s.s_plus);
  const SparseOperator a = mermin_operator(3, 8);
  CHECK(max_abs_diff(a, cplx{4.0, 0.0} * (k3 + k3.adjoint())) < 1e-13);
}

TEST_CASE("GHZ eigenvalue equations hold for arbitrary profiles") {
  const GhzEigenResiduals r0 =
      ghz_eigen_check(ghz_state({3, 4, {ParityProfile::fock0()}}));
  CHECK(r0.max_residual() < 1e-12);
  Rng rng(103);
  for (const int dim : {2, 4, 8}) {
    const GhzEigenResiduals r = ghz_eigen_check(
        ghz_state({3, dim, {testutil::random_profile(rng, dim / 2)}}));
    CHECK(r.max_residual() < 1e-12);
  }
}

TEST_CASE("the product state is not a GHZ eigenstate") {
  Rng rng(107);
  const ParityProfile p = testutil::random_profile(rng, 2);
  const StateVector plus3 =
      tensor(tensor(parity_state(p, Parity::Even, 4),
                    parity_state(p, Parity::Even, 4)),
             parity_state(p, Parity::Even, 4));
  const GhzEigenResiduals r = ghz_eigen_check(plus3);
  // s1x s2x s3x |+++> = |--->, so the xxx residual is ||(+1)|---> + |+++>||
  CHECK(r.xxx == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("eigen check validates the mode count") {
  CHECK_THROWS_AS(ghz_eigen_check(ghz_state({2, 4, {ParityProfile::fock0()}})),
                  std::invalid_argument);
}

TEST_CASE("square identity: parallel settings kill the commutator term") {
  Rng rng(109);
  MeasurementSettings s = testutil::random_settings(rng, 2);
  const UnitVector3 a = testutil::random_unit(rng);
  s.pairs.emplace_back(a, a);
  CHECK(bell_square_identity_check(s, 4) < 1e-12);
}

TEST_CASE("square identity holds for random settings at N=3") {
  Rng rng(113);
  for (int t = 0; t < 20; ++t) {
    CHECK(bell_square_identity_check(testutil::random_settings(rng, 3), 4) <
          1e-10);
  }
  CHECK_THROWS_AS(
      bell_square_identity_check(testutil::random_settings(rng, 2), 4),
      std::invalid_argument);
}

TEST_CASE("spectral radius of B_N respects the quantum bound") {
  Rng rng(127);
  for (int t = 0; t < 10; ++t) {
    const MeasurementSettings s = testutil::random_settings(rng, 3);
    const SpectralResult r = spectral_radius(bell_operator(s, 4));
    CHECK(r.converged);
    CHECK(r.value * r.value <= 16.0 * (1.0 + 1e-9));
  }
}

TEST_CASE("term expansion rebuilds the Bell operator entrywise") {
  Rng rng(131);
  for (int n = 2; n <= 4; ++n) {
    const int dim = 4;
    const MeasurementSettings s = testutil::random_settings(rng, n);
    const PseudospinSet spin = build_pseudospin(dim);
    const std::vector<BellTerm> terms = bell_expansion(n);
    SparseOperator sum = SparseOperator::zero(ModeSpace(n, dim).total_dim());
    for (const BellTerm &t : terms) {
      SparseOperator prod = dot_spin(
          (t.primed_mask & 1u) ? s.pairs[0].second : s.pairs[0].first, spin);
      for (int m = 1; m < n; ++m) {
        const bool primed = (t.primed_mask >> m) & 1u;
        prod = kron(prod, dot_spin(primed ? s.pairs[static_cast<std::size_t>(m)].second
                                          : s.pairs[static_cast<std::size_t>(m)].first,
                                   spin));
      }
      sum = linear_combination(1.0, sum, cplx{t.coeff, 0.0}, prod);
    }
    CHECK(max_abs_diff(sum, bell_operator(s, dim)) < 1e-12);
  }
}

TEST_CASE("bell report validates the quantum bound") {
  MeasurementSettings s = optimal_ghz_settings(2);
  CHECK_THROWS_AS(BellReport::make(2, 2.9, s), std::runtime_error);
  const BellReport r = BellReport::make(2, -2.5, s);
  CHECK(r.abs_value == 2.5);
  CHECK(r.quantum_bound == doctest::Approx(2.8284271247461903));
  CHECK(r.violation_factor == doctest::Approx(1.25));
}
