#include <doctest.h>

#include <cmath>

#include "mphase/analytic.hpp"
#include "mphase/chioptim.hpp"
#include "mphase/errors.hpp"
#include "mphase/integrate.hpp"

using namespace mphase;

TEST_CASE("chi_optimal") {
  const auto one = chi_optimal(1);
  CHECK(one.dim() == 1);
  CHECK(one(0, 0) == Complex(1.0, 0.0));

  const auto three = chi_optimal(3);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(three.entries());
  CHECK(es.eigenvalues()(0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(std::abs(es.eigenvalues()(1)) < 1e-14);
  CHECK(es.eigenvalues()(2) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(check_invariants(three));
  CHECK_THROWS_AS(chi_optimal(0), InvalidDimension);
}

TEST_CASE("random_feasible_chi") {
  for (Eigen::Index dim : {1, 2, 6, 15, 35}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto chi = random_feasible_chi(dim, seed);
      CHECK(psd_check(chi, 1e-10));
      CHECK(check_invariants(chi));
      for (Eigen::Index i = 0; i < dim; ++i) CHECK(chi(i, i) == Complex(1.0, 0.0));
    }
  }
  const auto a = random_feasible_chi(6, 77);
  const auto b = random_feasible_chi(6, 77);
  const auto c = random_feasible_chi(6, 78);
  CHECK(a.entries() == b.entries());
  CHECK((a.entries() - c.entries()).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("psd_check") {
  CHECK(psd_check(ChiMatrix(Eigen::MatrixXcd::Identity(4, 4)), 1e-10));
  CHECK(psd_check(chi_optimal(4), 1e-10));
  Eigen::MatrixXcd big = Eigen::MatrixXcd::Identity(2, 2);
  big(0, 1) = 2.0;
  big(1, 0) = 2.0;
  CHECK_FALSE(psd_check(ChiMatrix(big), 1e-10));

  // PSD-violating yet entrywise bounded.
  Eigen::MatrixXcd frustrated = Eigen::MatrixXcd::Constant(3, 3, -0.9);
  frustrated.diagonal().setOnes();
  CHECK_FALSE(psd_check(ChiMatrix(frustrated), 1e-10));

  Eigen::MatrixXcd skew = Eigen::MatrixXcd::Identity(2, 2);
  skew(0, 1) = Complex(0.0, 0.5);
  skew(1, 0) = Complex(0.0, 0.5);
  CHECK_THROWS_AS(ChiMatrix{skew}, NonHermitian);
  CHECK_THROWS_AS(ChiMatrix{Eigen::MatrixXcd::Ones(2, 3)}, DimensionMismatch);
}

TEST_CASE("verify_bound certifies the all-ones seed") {
  for (int N : {1, 2}) {
    const auto psi = psi0_amplitudes(3, N);
    for (const auto& spec : {fidelity_cost_spec(3), variance_cost_spec(2)}) {
      const auto r = verify_bound(spec, psi, 200, 2024);
      CHECK(r.trials == 200);
      CHECK(r.violations == 0);
      CHECK(r.infeasible == 0);
      CHECK(r.passed());
      CHECK(r.min_margin >= -kBoundSlack);
      CHECK(std::abs(r.optimal_margin) < 1e-12);
    }
  }
}

TEST_CASE("verify_bound over explicit candidates") {
  const auto psi = psi0_amplitudes(3, 2);
  const auto spec = fidelity_cost_spec(3);
  const auto dim = static_cast<Eigen::Index>(psi.size());

  const std::vector<ChiMatrix> optimum{chi_optimal(dim)};
  const auto eq = verify_bound(spec, psi, optimum);
  CHECK(std::abs(eq.min_margin) < 1e-12);
  CHECK(eq.passed());

  Eigen::MatrixXcd over = Eigen::MatrixXcd::Constant(dim, dim, 1.5);
  over.diagonal().setOnes();
  const std::vector<ChiMatrix> injected{ChiMatrix(over)};
  const auto bad = verify_bound(spec, psi, injected);
  CHECK(bad.violations == 1);
  CHECK(bad.infeasible == 1);
  CHECK_FALSE(bad.passed());

  const CostSpec negative(2, -1.0, {{{1, 0}, -0.1}, {{-1, 0}, -0.1}});
  CHECK_THROWS_AS(verify_bound(negative, psi, 10, 1), NotHolevoClass);
}

TEST_CASE("the average cost is affine in chi") {
  for (int d = 2; d <= 4; ++d) {
    const auto psi = psi0_amplitudes(d, 2);
    const auto dim = static_cast<Eigen::Index>(psi.size());
    const auto opt = chi_optimal(dim);
    const auto rnd = random_feasible_chi(dim, static_cast<std::uint64_t>(d));
    const auto spec = fidelity_cost_spec(d);
    const double c_opt = avg_cost_fourier(spec, psi, opt);
    const double c_rnd = avg_cost_fourier(spec, psi, rnd);
    for (double t : {0.0, 0.25, 0.5, 1.0}) {
      const auto mixed = mix(rnd, opt, t);
      CHECK(check_invariants(mixed));
      CHECK(std::abs(avg_cost_fourier(spec, psi, mixed) - ((1.0 - t) * c_rnd + t * c_opt)) < 1e-12);
    }
  }
}

TEST_CASE("no sampled chi beats the bound across small systems") {
  for (int d = 2; d <= 4; ++d) {
    for (int N = 1; N <= 3; ++N) {
      const auto psi = psi0_amplitudes(d, N);
      for (const auto& spec : {fidelity_cost_spec(d), variance_cost_spec(d - 1)}) {
        const auto r = verify_bound(spec, psi, 25, static_cast<std::uint64_t>(10 * d + N));
        CHECK(r.violations == 0);
        CHECK(std::abs(r.min_cost - min_cost(spec, psi)) < 1e-15);
      }
    }
  }
}
