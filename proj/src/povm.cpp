#include "mphase/povm.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mphase/errors.hpp"

namespace mphase {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_deltas(const AmplitudeVector& amps, const PhaseVector& deltas) {
  if (deltas.size() != static_cast<std::size_t>(amps.levels() - 1)) {
    throw DimensionMismatch("need d-1 = " + std::to_string(amps.levels() - 1) +
                            " phase errors, got " + std::to_string(deltas.size()));
  }
}

}  // namespace

Complex e_overlap(const AmplitudeVector& amps, const PhaseVector& deltas) {
  require_deltas(amps, deltas);
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const auto& occ = amps.basis()[i];
    double angle = 0.0;
    for (std::size_t j = 1; j < static_cast<std::size_t>(occ.levels()); ++j) {
      angle += occ[j] * deltas[j - 1];
    }
    s += amps[i] * std::polar(1.0, -angle);
  }
  return s;
}

double conditional_density(const AmplitudeVector& amps, const PhaseVector& deltas) {
  const double m = static_cast<double>(amps.levels() - 1);
  return std::norm(e_overlap(amps, deltas)) / std::pow(kTwoPi, m);
}

std::map<LatticeVector, double> density_fourier_coefficients(const AmplitudeVector& amps) {
  for (const auto& a : amps.amps()) {
    if (a.imag() != 0.0) {
      throw InvalidArgument("density Fourier coefficients need real amplitudes");
    }
  }
  const auto& basis = amps.basis();
  const std::size_t m = static_cast<std::size_t>(amps.levels() - 1);
  std::map<LatticeVector, double> g;
  for (std::size_t a = 0; a < amps.size(); ++a) {
    for (std::size_t b = 0; b < amps.size(); ++b) {
      LatticeVector l(m);
      for (std::size_t j = 0; j < m; ++j) l[j] = basis[b][j + 1] - basis[a][j + 1];
      g[l] += amps[a].real() * amps[b].real();
    }
  }
  return g;
}

double completeness_defect(int d, int N, int points_per_axis) {
  if (points_per_axis <= 2 * N + 1) {
    throw GridTooCoarse("completeness grid needs more than 2N+1 = " + std::to_string(2 * N + 1) +
                        " points per axis, got " + std::to_string(points_per_axis));
  }
  const auto basis = enumerate_occupations(d, N);
  const std::size_t dim = basis.size();
  const std::size_t m = static_cast<std::size_t>(d - 1);

  std::size_t total = 1;
  for (std::size_t j = 0; j < m; ++j) total *= static_cast<std::size_t>(points_per_axis);

  std::vector<Complex> acc(dim * dim, Complex{0.0, 0.0});
  std::vector<Complex> e(dim);
  std::vector<int> idx(m, 0);
  const double step = kTwoPi / points_per_axis;
  for (std::size_t p = 0; p < total; ++p) {
    for (std::size_t i = 0; i < dim; ++i) {
      double angle = 0.0;
      for (std::size_t j = 0; j < m; ++j) angle += basis[i][j + 1] * (idx[j] * step);
      e[i] = std::polar(1.0, angle);
    }
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) acc[r * dim + c] += e[r] * std::conj(e[c]);
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (++idx[j] < points_per_axis) break;
      idx[j] = 0;
    }
  }

  double defect = 0.0;
  const double inv = 1.0 / static_cast<double>(total);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      const Complex target = (r == c) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
      defect = std::max(defect, std::abs(acc[r * dim + c] * inv - target));
    }
  }
  return defect;
}

}  // namespace mphase
