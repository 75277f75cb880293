#include <doctest.h>

#include <array>
#include <cmath>
#include <cstring>

#include "mphase/analytic.hpp"
#include "mphase/errors.hpp"
#include "mphase/integrate.hpp"
#include "mphase/povm.hpp"
#include "test_support.hpp"

using namespace mphase;
using mphase::testing::kTwoPi;

namespace {

ChiMatrix ones_for(const AmplitudeVector& a) { return chi_optimal(static_cast<Eigen::Index>(a.size())); }

std::vector<PhaseVector> draws(const AmplitudeVector& amps, std::size_t n, std::uint64_t seed) {
  std::vector<PhaseVector> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    PhiloxStream rng(seed, i);
    out.push_back(sample_estimate(amps, rng));
  }
  return out;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

}  // namespace

TEST_CASE("avg_cost_fourier") {
  const auto psi = psi0_amplitudes(3, 1);
  const auto spec = fidelity_cost_spec(3);
  CHECK(std::abs(avg_cost_fourier(spec, psi, ones_for(psi)) - min_cost(spec, psi)) < 1e-15);
  const ChiMatrix identity(Eigen::MatrixXcd::Identity(3, 3));
  CHECK(avg_cost_fourier(spec, psi, identity) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  CHECK_THROWS_AS(avg_cost_fourier(spec, psi, chi_optimal(4)), DimensionMismatch);
  CHECK_THROWS_AS(avg_cost_fourier(fidelity_cost_spec(4), psi, ones_for(psi)), DimensionMismatch);
}

TEST_CASE("avg_cost_fourier matches quadrature for random feasible chi") {
  for (int N = 1; N <= 3; ++N) {
    const auto psi = psi0_amplitudes(3, N);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto chi = random_feasible_chi(static_cast<Eigen::Index>(psi.size()), seed);
      for (const auto& spec : {fidelity_cost_spec(3), variance_cost_spec(2)}) {
        CHECK(std::abs(avg_cost_fourier(spec, psi, chi) - avg_cost_quadrature(spec, psi, chi, 2 * N + 3)) < 1e-12);
      }
    }
  }
}

TEST_CASE("quadrature reproduces closed forms") {
  const auto one = psi0_amplitudes(3, 1);
  const auto two = psi0_amplitudes(3, 2);
  CHECK(std::abs(avg_cost_quadrature(fidelity_cost_spec(3), one, ones_for(one), 8) - 4.0 / 9.0) < 1e-12);
  CHECK(std::abs(avg_cost_quadrature(fidelity_cost_spec(3), two, ones_for(two), 8) -
                 (1.0 - (13.0 + 4.0 * std::sqrt(2.0)) / 27.0)) < 1e-11);
  CHECK(std::abs(avg_cost_quadrature(variance_cost_spec(2), one, ones_for(one), 8) - 4.0 / 3.0) < 1e-12);
}

TEST_CASE("quadrature exactness plateau") {
  for (int d = 2; d <= 4; ++d) {
    for (int N = 1; N <= 4; ++N) {
      const auto psi = psi0_amplitudes(d, N);
      const auto chi = ones_for(psi);
      for (const auto& spec : {fidelity_cost_spec(d), variance_cost_spec(d - 1)}) {
        const double coarse = avg_cost_quadrature(spec, psi, chi, 2 * N + 3);
        const double fine = avg_cost_quadrature(spec, psi, chi, 4 * N + 8);
        CHECK(std::abs(coarse - fine) < 1e-12);
        CHECK(std::abs(coarse - avg_cost_fourier(spec, psi, chi)) < 1e-10);
      }
    }
  }
}

TEST_CASE("quadrature guards") {
  const auto psi = psi0_amplitudes(3, 2);
  CHECK_THROWS_AS(avg_cost_quadrature(fidelity_cost_spec(3), psi, ones_for(psi), 6), GridTooCoarse);
  const auto wide = psi0_amplitudes(6, 1);
  CHECK_THROWS_AS(avg_cost_quadrature(fidelity_cost_spec(6), wide, ones_for(wide), 5, 1000), BudgetExceeded);
  CHECK_NOTHROW(avg_cost_quadrature(fidelity_cost_spec(6), wide, ones_for(wide), 5, 3125));
}

TEST_CASE("sampler: first Fourier moment of a single qubit") {
  const auto psi = psi0_amplitudes(2, 1);
  const auto ds = draws(psi, 100000, 99);
  double s = 0.0;
  double s2 = 0.0;
  for (const auto& d : ds) {
    const double c = std::cos(d[0]);
    s += c;
    s2 += c * c;
  }
  const double n = static_cast<double>(ds.size());
  const double mean = s / n;
  const double se = std::sqrt((s2 / n - mean * mean) / n);
  CHECK(std::abs(mean - 0.5) < 4.0 * se);
}

TEST_CASE("sampler: histogram is symmetric under delta -> -delta") {
  const auto psi = psi0_amplitudes(2, 2);
  std::array<double, 16> bins{};
  for (const auto& d : draws(psi, 50000, 5)) {
    bins[static_cast<std::size_t>(d[0] / kTwoPi * 16.0)] += 1.0;
  }
  double chi2 = 0.0;
  for (std::size_t k = 0; k < 8; ++k) {
    const double a = bins[k];
    const double b = bins[15 - k];
    chi2 += (a - b) * (a - b) / (a + b);
  }
  // 8 degrees of freedom; 26.12 is the 0.999 quantile.
  CHECK(chi2 < 26.12);
}

TEST_CASE("sampler: empirical Fourier moments match G_l") {
  const auto psi = psi0_amplitudes(3, 2);
  const auto g = density_fourier_coefficients(psi);
  const auto ds = draws(psi, 100000, 2024);
  const double n = static_cast<double>(ds.size());
  for (int l1 = -2; l1 <= 2; ++l1) {
    for (int l2 = -2; l2 <= 2; ++l2) {
      double re = 0.0;
      double re2 = 0.0;
      double im = 0.0;
      double im2 = 0.0;
      for (const auto& d : ds) {
        const double arg = l1 * d[0] + l2 * d[1];
        re += std::cos(arg);
        re2 += std::cos(arg) * std::cos(arg);
        im += std::sin(arg);
        im2 += std::sin(arg) * std::sin(arg);
      }
      re /= n;
      im /= n;
      const double se_re = std::sqrt(std::max(re2 / n - re * re, 0.0) / n);
      const double se_im = std::sqrt(std::max(im2 / n - im * im, 0.0) / n);
      const auto it = g.find({l1, l2});
      const double expect = it == g.end() ? 0.0 : it->second;
      INFO("l=(" << l1 << "," << l2 << ")");
      CHECK(std::abs(re - expect) <= 4.0 * se_re + 1e-12);
      CHECK(std::abs(im) <= 4.0 * se_im + 1e-12);
    }
  }
}

TEST_CASE("mc_average_cost") {
  const auto one = psi0_amplitudes(3, 1);
  const auto fid = mc_average_cost(fidelity_cost_spec(3), one, 100000, 7);
  CHECK(std::abs(fid.mean - 4.0 / 9.0) < 4.0 * fid.std_error);
  CHECK(fid.samples == 100000);
  CHECK(fid.seed == 7);
  // Binomial spread of the acceptance estimate from ~3e5 proposals.
  const double acc_se = std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / 3e5);
  CHECK(std::abs(fid.acceptance_rate - 1.0 / 3.0) < 4.0 * acc_se);
  CHECK(ErrorSampler(one).expected_acceptance() == doctest::Approx(1.0 / 3.0));

  const auto two = psi0_amplitudes(3, 2);
  const auto var = mc_average_cost(variance_cost_spec(2), two, 100000, 8);
  CHECK(std::abs(var.mean - avg_variance_qutrit(2)) < 4.0 * var.std_error);

  const auto pointwise = mc_average_cost([](const PhaseVector& p) { return variance_point(p); }, two, 100000, 8);
  CHECK(std::abs(pointwise.mean - var.mean) < 1e-12);

  CHECK_THROWS_AS(mc_average_cost(fidelity_cost_spec(3), one, 999, 1), InvalidArgument);
}

TEST_CASE("mc_average_cost is deterministic regardless of workers") {
  const auto psi = psi0_amplitudes(3, 2);
  const auto spec = fidelity_cost_spec(3);
  const auto a = mc_average_cost(spec, psi, 20000, 123, 1);
  const auto b = mc_average_cost(spec, psi, 20000, 123, 1);
  const auto c = mc_average_cost(spec, psi, 20000, 123, 3);
  const auto d = mc_average_cost(spec, psi, 20000, 124, 1);
  for (const auto* r : {&b, &c}) {
    CHECK(same_bits(a.mean, r->mean));
    CHECK(same_bits(a.std_error, r->std_error));
    CHECK(same_bits(a.acceptance_rate, r->acceptance_rate));
  }
  CHECK_FALSE(same_bits(a.mean, d.mean));
}

TEST_CASE("three-way agreement of Fourier, quadrature and Monte Carlo") {
  for (int d = 2; d <= 4; ++d) {
    for (int N = 1; N <= 4; ++N) {
      const auto psi = psi0_amplitudes(d, N);
      const auto chi = ones_for(psi);
      for (const auto& spec : {fidelity_cost_spec(d), variance_cost_spec(d - 1)}) {
        INFO("d=" << d << " N=" << N);
        const double fourier = avg_cost_fourier(spec, psi, chi);
        CHECK(std::abs(fourier - avg_cost_quadrature(spec, psi, chi, 2 * N + 3)) < 1e-10);
        const auto mc = mc_average_cost(spec, psi, 20000, static_cast<std::uint64_t>(100 * d + N));
        CHECK(std::abs(mc.mean - fourier) < 4.0 * mc.std_error);
      }
    }
  }
}
