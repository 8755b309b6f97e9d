#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pspin/pseudospin.hpp"

#include "test_util.hpp"

#include <cmath>

using namespace pspin;
using pspin::testutil::max_abs_diff;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("construction rejects odd or tiny truncations") {
  CHECK_THROWS_AS(build_pseudospin(3), std::invalid_argument);
  CHECK_THROWS_AS(build_pseudospin(7), std::invalid_argument);
  CHECK_THROWS_AS(build_pseudospin(0), std::invalid_argument);
  CHECK_NOTHROW(build_pseudospin(2));
}

TEST_CASE("D=2 reduces to the qubit operators") {
  const PseudospinSet s = build_pseudospin(2);
  CHECK(s.sz.value_at(0, 0) == cplx{1.0, 0.0});
  CHECK(s.sz.value_at(1, 1) == cplx{-1.0, 0.0});
  CHECK(s.sx.value_at(0, 1) == cplx{1.0, 0.0});
  CHECK(s.sx.value_at(1, 0) == cplx{1.0, 0.0});
  CHECK(s.sy.value_at(0, 1) == cplx{0.0, -1.0});
  CHECK(s.sy.value_at(1, 0) == cplx{0.0, 1.0});
}

TEST_CASE("structural invariants at D=4") {
  const PseudospinSet s = build_pseudospin(4);
  // alternating diagonal parity
  for (int n = 0; n < 4; ++n) {
    CHECK(s.sz.value_at(n, n) == cplx{n % 2 == 0 ? 1.0 : -1.0, 0.0});
  }
  // s_+ has exactly D/2 unit entries at (2n, 2n+1)
  CHECK(s.s_plus.nnz() == 2);
  CHECK(s.s_plus.value_at(0, 1) == cplx{1.0, 0.0});
  CHECK(s.s_plus.value_at(2, 3) == cplx{1.0, 0.0});
  CHECK(max_abs_diff(s.s_minus, s.s_plus.adjoint()) == 0.0);
  CHECK(max_abs_diff(s.sx, s.s_plus + s.s_minus) == 0.0);
  CHECK(max_abs_diff(s.sy, cplx{0.0, -1.0} * (s.s_plus - s.s_minus)) == 0.0);
  // sx swaps the top parity pair
  const StateVector two = StateVector::basis(ModeSpace(1, 4), 2);
  const StateVector three = StateVector::basis(ModeSpace(1, 4), 3);
  CHECK(distance(apply(s.sx, two), three) == 0.0);
  CHECK(distance(apply(s.sx, three), two) == 0.0);
}

TEST_CASE("spin algebra closes exactly at every even truncation") {
  for (const int dim : {2, 4, 8, 16}) {
    const PseudospinSet s = build_pseudospin(dim);
    const SparseOperator id = SparseOperator::identity(dim);
    const cplx two{2.0, 0.0};
    CHECK(max_abs_diff(s.sz * s.s_plus - s.s_plus * s.sz, two * s.s_plus) ==
          0.0);
    CHECK(max_abs_diff(s.sz * s.s_minus - s.s_minus * s.sz,
                       cplx{-2.0, 0.0} * s.s_minus) == 0.0);
    CHECK(max_abs_diff(s.s_plus * s.s_minus - s.s_minus * s.s_plus, s.sz) ==
          0.0);
    CHECK(max_abs_diff(s.sx * s.sy - s.sy * s.sx,
                       cplx{0.0, 2.0} * s.sz) == 0.0);
    const SparseOperator *ops[3] = {&s.sx, &s.sy, &s.sz};
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        const SparseOperator anti = *ops[a] * *ops[b] + *ops[b] * *ops[a];
        if (a == b) {
          CHECK(max_abs_diff(anti, two * id) == 0.0);
        } else {
          CHECK(anti.nnz() == 0);
        }
      }
    }
  }
}

TEST_CASE("unit vector validation") {
  CHECK_THROWS_AS(UnitVector3(1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(UnitVector3::normalized(0.0, 0.0, 0.0),
                  std::invalid_argument);
  const UnitVector3 v = UnitVector3::normalized(3.0, 4.0, 12.0);
  CHECK(v.dot(v) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("dot_spin along z is sz, and squares to the identity") {
  const PseudospinSet s = build_pseudospin(8);
  CHECK(max_abs_diff(dot_spin(UnitVector3(0.0, 0.0, 1.0), s), s.sz) == 0.0);
  Rng rng(31);
  const SparseOperator id = SparseOperator::identity(8);
  for (int t = 0; t < 50; ++t) {
    const SparseOperator das = dot_spin(testutil::random_unit(rng), s);
    CHECK(das.hermitian());
    CHECK(max_abs_diff(das * das, id) < 1e-12);
  }
}

TEST_CASE("dot_spin along x flips parity states") {
  const PseudospinSet s = build_pseudospin(8);
  Rng rng(37);
  const ParityProfile p = testutil::random_profile(rng, 4);
  const StateVector plus = parity_state(p, Parity::Even, 8);
  const StateVector minus = parity_state(p, Parity::Odd, 8);
  const SparseOperator sx = dot_spin(UnitVector3(1.0, 0.0, 0.0), s);
  CHECK(distance(apply(sx, plus), minus) < 1e-15);
  CHECK(distance(apply(sx, minus), plus) < 1e-15);
}

TEST_CASE("rotation special angles") {
  const PseudospinSet s = build_pseudospin(4);
  const SparseOperator id = SparseOperator::identity(4);
  const UnitVector3 xhat(1.0, 0.0, 0.0);
  CHECK(max_abs_diff(rotation({0.0, xhat}, s), id) == 0.0);
  // spinor double cover: a full turn is -I
  CHECK(max_abs_diff(rotation({2.0 * kPi, xhat}, s),
                     cplx{-1.0, 0.0} * id) < 1e-15);
  CHECK(max_abs_diff(rotation({kPi, xhat}, s), cplx{0.0, -1.0} * s.sx) <
        1e-15);
  CHECK_THROWS_AS(rotation({std::nan(""), xhat}, s), std::invalid_argument);
}

TEST_CASE("rotations are unitary and invert cleanly") {
  const PseudospinSet s = build_pseudospin(6);
  const SparseOperator id = SparseOperator::identity(6);
  Rng rng(41);
  for (int t = 0; t < 50; ++t) {
    const UnitVector3 axis = testutil::random_unit(rng);
    const double zeta = rng.uniform(-8.0, 8.0);
    const SparseOperator u = rotation({zeta, axis}, s);
    CHECK(max_abs_diff(u * u.adjoint(), id) < 1e-12);
    CHECK(max_abs_diff(rotation({zeta, axis}, s) * rotation({-zeta, axis}, s),
                       id) < 1e-12);
  }
}

TEST_CASE("rotation equals its truncated exponential series") {
  // (n.s)^2 = I makes the closed form exact; the 30-term series guards the
  // implementation only
  const PseudospinSet s = build_pseudospin(4);
  Rng rng(43);
  const UnitVector3 axis = testutil::random_unit(rng);
  const double zeta = 1.7;
  const SparseOperator gen = cplx{0.0, -zeta / 2.0} * dot_spin(axis, s);
  SparseOperator series = SparseOperator::identity(4);
  SparseOperator term = SparseOperator::identity(4);
  for (int k = 1; k <= 30; ++k) {
    term = cplx{1.0 / k, 0.0} * (term * gen);
    series = series + term;
  }
  CHECK(max_abs_diff(rotation({zeta, axis}, s), series) < 1e-10);
}

TEST_CASE("rotation about z conjugates sx into the xy plane") {
  const PseudospinSet s = build_pseudospin(8);
  Rng rng(47);
  for (int t = 0; t < 10; ++t) {
    const double zeta = rng.uniform(0.0, 2.0 * kPi);
    const SparseOperator u = rotation({zeta, UnitVector3(0.0, 0.0, 1.0)}, s);
    const SparseOperator expected =
        linear_combination(std::cos(zeta), s.sx, std::sin(zeta), s.sy);
    CHECK(max_abs_diff(u.adjoint() * s.sx * u, expected) < 1e-12);
  }
}

TEST_CASE("parity profiles normalize and validate") {
  CHECK_THROWS_AS(ParityProfile({}), std::invalid_argument);
  CHECK_THROWS_AS(ParityProfile({cplx{0.0, 0.0}}), std::invalid_argument);
  const ParityProfile g = ParityProfile::geometric(0.5, 8);
  double ssq = 0.0;
  for (const cplx &c : g.coefficients()) {
    ssq += std::norm(c);
  }
  CHECK(ssq == doctest::Approx(1.0).epsilon(1e-12));
  const ParityProfile u = ParityProfile::uniform(4);
  CHECK(u.coefficients()[0] == cplx{0.5, 0.0});
}

TEST_CASE("parity states place the profile on the right ladder") {
  // profile (1) with even parity is the vacuum
  const StateVector vac = parity_state(ParityProfile::fock0(), Parity::Even, 4);
  CHECK(vac[0] == cplx{1.0, 0.0});
  CHECK(vac.norm() == 1.0);

  const PseudospinSet s = build_pseudospin(8);
  Rng rng(53);
  const ParityProfile p = testutil::random_profile(rng, 4);
  const StateVector plus = parity_state(p, Parity::Even, 8);
  const StateVector minus = parity_state(p, Parity::Odd, 8);
  // sz eigenstates with eigenvalues +-1
  CHECK(distance(apply(s.sz, plus), plus) == 0.0);
  CHECK(distance(apply(s.sz, minus), cplx{-1.0, 0.0} * minus) == 0.0);
  // ladder action: s_+ |-> = |+>, s_+ |+> = 0, s_- |+> = |->, s_- |-> = 0
  CHECK(distance(apply(s.s_plus, minus), plus) == 0.0);
  CHECK(apply(s.s_plus, plus).norm() == 0.0);
  CHECK(distance(apply(s.s_minus, plus), minus) == 0.0);
  CHECK(apply(s.s_minus, minus).norm() == 0.0);
  // profile longer than dim/2 is rejected
  CHECK_THROWS_AS(parity_state(testutil::random_profile(rng, 5), Parity::Even, 8),
                  std::invalid_argument);
}

TEST_CASE("raising and lowering combinations act as stated for any profile") {
  const PseudospinSet s = build_pseudospin(16);
  Rng rng(59);
  for (int t = 0; t < 10; ++t) {
    const ParityProfile p = testutil::random_profile(rng, 8);
    const StateVector plus = parity_state(p, Parity::Even, 16);
    const StateVector minus = parity_state(p, Parity::Odd, 16);
    const SparseOperator raise = s.sx + cplx{0.0, 1.0} * s.sy;  // = 2 s_+
    const SparseOperator lower = s.sx - cplx{0.0, 1.0} * s.sy;  // = 2 s_-
    CHECK(distance(apply(raise, minus), cplx{2.0, 0.0} * plus) < 1e-15);
    CHECK(apply(raise, plus).norm() == 0.0);
    CHECK(distance(apply(lower, plus), cplx{2.0, 0.0} * minus) < 1e-15);
    CHECK(apply(lower, minus).norm() == 0.0);
  }
}
