#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mphase/costs.hpp"
#include "mphase/errors.hpp"
#include "test_support.hpp"

using namespace mphase;
using mphase::testing::random_phases;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("fidelity_point") {
  CHECK(fidelity_point(3, PhaseVector({0.0, 0.0})) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(fidelity_point(3, PhaseVector({kPi, kPi})) == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
  CHECK(std::abs(fidelity_point(2, PhaseVector({kPi}))) < 1e-15);
  for (int d = 2; d <= 6; ++d) {
    for (const auto& p : random_phases(20, static_cast<std::size_t>(d - 1), 3 + d)) {
      const double f = fidelity_point(d, p);
      CHECK(f >= -1e-15);
      CHECK(f <= 1.0 + 1e-15);
    }
  }
  CHECK_THROWS_AS(fidelity_point(3, PhaseVector({0.0})), DimensionMismatch);
}

TEST_CASE("variance_point") {
  CHECK(variance_point(PhaseVector({0.0, 0.0})) == 0.0);
  CHECK(variance_point(PhaseVector({kPi, kPi})) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(variance_point(PhaseVector({kPi / 2, kPi / 2})) == doctest::Approx(2.0).epsilon(1e-15));
  for (const auto& p : random_phases(20, 3, 5)) {
    double expect = 3.0;
    for (double a : p.angles()) expect -= std::cos(a);
    CHECK(std::abs(variance_point(p) - expect) < 1e-12);
  }
}

TEST_CASE("fidelity cost spec coefficients") {
  const auto qutrit = fidelity_cost_spec(3);
  CHECK(qutrit.phase_count() == 2);
  CHECK(qutrit.c0() == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
  CHECK(qutrit.coeffs().size() == 6);
  for (const auto& [l, c] : qutrit.coeffs()) CHECK(c == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  CHECK(qutrit.coeffs().count({1, -1}) == 1);
  CHECK(qutrit.coeffs().count({-1, 1}) == 1);
  CHECK(qutrit.max_degree() == 1);

  const auto qubit = fidelity_cost_spec(2);
  CHECK(qubit.c0() == doctest::Approx(-0.5));
  REQUIRE(qubit.coeffs().size() == 2);
  CHECK(qubit.coeffs().at({1}) == doctest::Approx(0.25));
  CHECK(qubit.coeffs().at({-1}) == doctest::Approx(0.25));

  // d(d-1) off-diagonal level pairs in general.
  for (int d = 2; d <= 7; ++d) CHECK(fidelity_cost_spec(d).coeffs().size() == static_cast<std::size_t>(d * (d - 1)));
}

TEST_CASE("Fourier and pointwise forms agree") {
  for (int d = 2; d <= 6; ++d) {
    const auto spec = fidelity_cost_spec(d);
    for (const auto& p : random_phases(20, static_cast<std::size_t>(d - 1), 17 + d)) {
      CHECK(std::abs(spec.evaluate(p) - (1.0 - fidelity_point(d, p))) < 1e-12);
    }
  }
  for (int m = 1; m <= 5; ++m) {
    const auto spec = variance_cost_spec(m);
    CHECK(spec.c0() == -m);
    CHECK(spec.coeffs().size() == static_cast<std::size_t>(2 * m));
    for (const auto& p : random_phases(20, static_cast<std::size_t>(m), 23 + m)) {
      CHECK(std::abs(spec.evaluate(p) - variance_point(p)) < 1e-12);
    }
  }
  CHECK(variance_cost_spec(1).evaluate(PhaseVector({kPi})) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("costs are even") {
  for (int d = 2; d <= 5; ++d) {
    for (const auto& spec : {fidelity_cost_spec(d), variance_cost_spec(d - 1)}) {
      for (const auto& p : random_phases(20, static_cast<std::size_t>(d - 1), 31 + d)) {
        std::vector<double> neg(p.size());
        for (std::size_t j = 0; j < p.size(); ++j) neg[j] = -p[j];
        CHECK(std::abs(spec.evaluate(p) - spec.evaluate(PhaseVector(neg))) < 1e-12);
      }
    }
  }
}

TEST_CASE("Holevo classification") {
  CHECK(is_holevo_class(fidelity_cost_spec(3)));
  CHECK(is_holevo_class(variance_cost_spec(2)));
  const CostSpec negative(2, -1.0, {{{1, 0}, -0.1}, {{-1, 0}, -0.1}, {{0, 1}, 0.5}, {{0, -1}, 0.5}});
  CHECK_FALSE(is_holevo_class(negative));
}

TEST_CASE("CostSpec construction rejects malformed maps") {
  CHECK_THROWS_AS(CostSpec(2, 0.0, {{{1, 0}, 0.5}}), InvalidArgument);
  CHECK_THROWS_AS(CostSpec(2, 0.0, {{{1, 0}, 0.5}, {{-1, 0}, 0.4}}), InvalidArgument);
  CHECK_THROWS_AS(CostSpec(2, 0.0, {{{0, 0}, 0.5}}), InvalidArgument);
  CHECK_THROWS_AS(CostSpec(2, 0.0, {{{1}, 0.5}, {{-1}, 0.5}}), DimensionMismatch);
  CHECK_THROWS_AS(CostSpec(0, 0.0, {}), InvalidDimension);
  CHECK_THROWS_AS(fidelity_cost_spec(3).evaluate(PhaseVector({0.1})), DimensionMismatch);
}
