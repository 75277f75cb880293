#include "mphase/analytic.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "mphase/errors.hpp"
#include "mphase/povm.hpp"

namespace mphase {

namespace {

void require_copies(int N) {
  if (N < 1) throw InvalidDimension("need at least one copy, got " + std::to_string(N));
}

void require_levels(int d) {
  if (d < 2) throw InvalidDimension("level count must be >= 2, got " + std::to_string(d));
}

// The shared sum S(N) = sum_{j+k <= N-1} M(N,j,k) sqrt((N-j-k)/(j+1)) over
// the qutrit double index, with factorials in floating point so it stays
// independent of the exact-integer symbasis path.
double qutrit_overlap_sum(int N) {
  std::vector<double> fact(static_cast<std::size_t>(N) + 1, 1.0);
  for (int i = 1; i <= N; ++i) fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i - 1)] * i;
  double s = 0.0;
  for (int j = 0; j <= N - 1; ++j) {
    for (int k = 0; k <= N - j - 1; ++k) {
      const int rest = N - j - k;
      const double m = fact[static_cast<std::size_t>(N)] /
                       (fact[static_cast<std::size_t>(rest)] * fact[static_cast<std::size_t>(j)] *
                        fact[static_cast<std::size_t>(k)]);
      s += m * std::sqrt(static_cast<double>(rest) / (j + 1));
    }
  }
  return s;
}

}  // namespace

double avg_fidelity_qudit(int d, int N) {
  require_levels(d);
  require_copies(N);
  double s = 0.0;
  for (const auto& occ : enumerate_occupations(d, N)) {
    if (occ[0] == 0) continue;
    s += static_cast<double>(multinomial(occ)) *
         std::sqrt(static_cast<double>(occ[0]) / (occ[1] + 1));
  }
  const double dd = d;
  return 1.0 / dd + (dd - 1.0) / std::pow(dd, N + 1) * s;
}

double avg_fidelity_qutrit(int N) {
  require_copies(N);
  return 1.0 / 3.0 + 2.0 / std::pow(3.0, N + 1) * qutrit_overlap_sum(N);
}

double avg_fidelity_single(int d) {
  require_levels(d);
  return (2.0 * d - 1.0) / (static_cast<double>(d) * d);
}

double universal_fidelity_single(int d) {
  require_levels(d);
  return 2.0 / (d + 2.0);
}

double avg_variance_qutrit(int N) {
  require_copies(N);
  return 2.0 - 2.0 / std::pow(3.0, N) * qutrit_overlap_sum(N);
}

double min_cost(const CostSpec& spec, const AmplitudeVector& amps) {
  if (!is_holevo_class(spec)) {
    throw NotHolevoClass("all-ones seed is only guaranteed optimal for nonnegative c_l");
  }
  if (spec.phase_count() != amps.levels() - 1) {
    throw DimensionMismatch("cost phase count differs from d-1");
  }
  const auto g = density_fourier_coefficients(amps);
  double s = -spec.c0();
  for (const auto& [l, c] : spec.coeffs()) {
    const auto it = g.find(l);
    if (it != g.end()) s -= c * it->second;
  }
  return s;
}

}  // namespace mphase
