#include "mphase/chioptim.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mphase/analytic.hpp"
#include "mphase/errors.hpp"
#include "mphase/integrate.hpp"
#include "mphase/philox.hpp"

namespace mphase {

namespace {

// Box-Muller on the raw Philox stream; std::normal_distribution is not
// reproducible across standard libraries.
double gaussian(PhiloxStream& rng) {
  const double u1 = 1.0 - rng.uniform();  // (0, 1]
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

ChiMatrix::ChiMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw DimensionMismatch("chi must be square");
  }
  const double dev = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (entries_.size() > 0 && dev > kHermitianTol) {
    throw NonHermitian("chi deviates from Hermitian by " + std::to_string(dev));
  }
}

ChiMatrix chi_optimal(Eigen::Index dim) {
  if (dim < 1) throw InvalidDimension("chi dimension must be >= 1");
  return ChiMatrix(Eigen::MatrixXcd::Ones(dim, dim));
}

ChiMatrix random_feasible_chi(Eigen::Index dim, std::uint64_t seed) {
  if (dim < 1) throw InvalidDimension("chi dimension must be >= 1");
  PhiloxStream rng(seed, 0);
  Eigen::MatrixXcd u(dim, dim);  // column k is the k-th vector
  for (Eigen::Index k = 0; k < dim; ++k) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double re = gaussian(rng);
      const double im = gaussian(rng);
      u(i, k) = Complex{re, im};
    }
    u.col(k).normalize();
  }
  Eigen::MatrixXcd g = u.adjoint() * u;
  for (Eigen::Index r = 0; r < dim; ++r) {
    g(r, r) = 1.0;
    for (Eigen::Index c = r + 1; c < dim; ++c) g(c, r) = std::conj(g(r, c));
  }
  return ChiMatrix(std::move(g));
}

bool psd_check(const ChiMatrix& chi, double tol) {
  if (chi.entries().cwiseAbs().maxCoeff() > 1.0 + tol) return false;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(chi.entries(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

bool check_invariants(const ChiMatrix& chi, double tol) {
  for (Eigen::Index i = 0; i < chi.dim(); ++i) {
    if (std::abs(chi(i, i) - Complex{1.0, 0.0}) > tol) return false;
  }
  return psd_check(chi, tol);
}

ChiMatrix mix(const ChiMatrix& a, const ChiMatrix& b, double t) {
  if (a.dim() != b.dim()) throw DimensionMismatch("cannot mix chi matrices of different size");
  return ChiMatrix((1.0 - t) * a.entries() + t * b.entries());
}

BoundReport verify_bound(const CostSpec& spec, const AmplitudeVector& amps,
                         std::span<const ChiMatrix> candidates) {
  BoundReport report;
  report.min_cost = min_cost(spec, amps);  // throws NotHolevoClass
  const auto dim = static_cast<Eigen::Index>(amps.size());
  report.optimal_margin = avg_cost_fourier(spec, amps, chi_optimal(dim)) - report.min_cost;
  report.min_margin = std::numeric_limits<double>::infinity();
  for (const auto& chi : candidates) {
    ++report.trials;
    if (!check_invariants(chi, kBoundSlack)) ++report.infeasible;
    const double margin = avg_cost_fourier(spec, amps, chi) - report.min_cost;
    report.min_margin = std::min(report.min_margin, margin);
    if (margin < -kBoundSlack) ++report.violations;
  }
  return report;
}

BoundReport verify_bound(const CostSpec& spec, const AmplitudeVector& amps, std::size_t trials,
                         std::uint64_t seed) {
  if (trials < 1) throw InvalidArgument("verify_bound needs at least one trial");
  const auto dim = static_cast<Eigen::Index>(amps.size());
  std::vector<ChiMatrix> candidates;
  candidates.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    // Distinct, reproducible seeds per trial.
    const auto mixed = Philox4x32::block({static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32), 0, 0},
                                         {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
    candidates.push_back(random_feasible_chi(dim, (std::uint64_t{mixed[1]} << 32) | mixed[0]));
  }
  return verify_bound(spec, amps, candidates);
}

}  // namespace mphase
