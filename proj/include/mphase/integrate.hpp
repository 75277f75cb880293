#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "mphase/chioptim.hpp"
#include "mphase/costs.hpp"
#include "mphase/philox.hpp"
#include "mphase/states.hpp"

namespace mphase {

inline constexpr std::size_t kDefaultPointBudget = 10'000'000;

/// Average cost of the covariant POVM seeded by chi, as the finite Fourier
/// sum -c0 - sum_l c_l sum_{m-n=l} conj(A_n) A_m chi_nm.
double avg_cost_fourier(const CostSpec& spec, const AmplitudeVector& amps, const ChiMatrix& chi);

/// Average of C(phi) p_chi(phi) over a uniform grid on the M-torus, where
/// p_chi(phi) = sum_{n,m} conj(A_n) A_m chi_nm exp(i(m-n).phi). Exact for
/// band-limited integrands once points_per_axis >= 2N+3.
/// Throws GridTooCoarse, DimensionMismatch, or BudgetExceeded when
/// points_per_axis^M exceeds `budget`.
double avg_cost_quadrature(const CostSpec& spec, const AmplitudeVector& amps, const ChiMatrix& chi,
                           int points_per_axis, std::size_t budget = kDefaultPointBudget);

/// Exact rejection sampler for the estimation error of the optimal POVM.
/// Proposals are uniform on the torus; the envelope is the density peak
/// (sum_n |A_n|)^2 / (2pi)^M.
class ErrorSampler {
 public:
  explicit ErrorSampler(const AmplitudeVector& amps);

  struct Draw {
    PhaseVector delta;
    std::size_t proposals = 0;
  };

  Draw draw(PhiloxStream& rng) const;

  /// Expected acceptance probability 1 / (sum_n |A_n|)^2.
  double expected_acceptance() const { return 1.0 / peak_; }

 private:
  const AmplitudeVector* amps_;
  double peak_;  // (sum |A_n|)^2
};

/// One estimation error delta = phi_bar - phi drawn from conditional_density.
PhaseVector sample_estimate(const AmplitudeVector& amps, PhiloxStream& rng);

struct McReport {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(samples)
  std::size_t samples = 0;
  double acceptance_rate = 0.0;
  std::uint64_t seed = 0;
};

using PointwiseCost = std::function<double(const PhaseVector&)>;

/// Monte Carlo estimate of the average cost. Sample i uses the Philox stream
/// (seed, i), and the reduction runs in index order, so the report depends
/// only on (seed, samples) and never on `workers` (0 = hardware threads).
/// `cost` is called concurrently and must be thread-safe.
McReport mc_average_cost(const PointwiseCost& cost, const AmplitudeVector& amps, std::size_t samples,
                         std::uint64_t seed, unsigned workers = 0);

McReport mc_average_cost(const CostSpec& spec, const AmplitudeVector& amps, std::size_t samples,
                         std::uint64_t seed, unsigned workers = 0);

}  // namespace mphase
