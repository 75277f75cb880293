#include "mphase/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "mphase/errors.hpp"
#include "mphase/povm.hpp"

namespace mphase {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_matching(const CostSpec& spec, const AmplitudeVector& amps, const ChiMatrix& chi) {
  if (spec.phase_count() != amps.levels() - 1) {
    throw DimensionMismatch("cost phase count differs from d-1");
  }
  if (static_cast<std::size_t>(chi.dim()) != amps.size()) {
    throw DimensionMismatch("chi dimension " + std::to_string(chi.dim()) +
                            " differs from symmetric dimension " + std::to_string(amps.size()));
  }
}

}  // namespace

double avg_cost_fourier(const CostSpec& spec, const AmplitudeVector& amps, const ChiMatrix& chi) {
  require_matching(spec, amps, chi);
  const auto& basis = amps.basis();
  const std::size_t m = static_cast<std::size_t>(spec.phase_count());
  const auto& coeffs = spec.coeffs();

  Complex s{0.0, 0.0};
  LatticeVector l(m);
  for (std::size_t a = 0; a < amps.size(); ++a) {
    for (std::size_t b = 0; b < amps.size(); ++b) {
      for (std::size_t j = 0; j < m; ++j) l[j] = basis[b][j + 1] - basis[a][j + 1];
      const auto it = coeffs.find(l);
      if (it == coeffs.end()) continue;
      s += it->second * std::conj(amps[a]) * amps[b] *
           chi(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }
  }
  // Hermitian chi and even c_l make the pair sum real.
  return -spec.c0() - s.real();
}

double avg_cost_quadrature(const CostSpec& spec, const AmplitudeVector& amps, const ChiMatrix& chi,
                           int points_per_axis, std::size_t budget) {
  require_matching(spec, amps, chi);
  const int N = amps.copies();
  if (points_per_axis < 2 * N + 3) {
    throw GridTooCoarse("quadrature needs at least 2N+3 = " + std::to_string(2 * N + 3) +
                        " points per axis, got " + std::to_string(points_per_axis));
  }
  const std::size_t m = static_cast<std::size_t>(spec.phase_count());
  std::size_t total = 1;
  for (std::size_t j = 0; j < m; ++j) {
    if (total > budget / static_cast<std::size_t>(points_per_axis)) {
      throw BudgetExceeded(std::to_string(points_per_axis) + "^" + std::to_string(m) +
                           " grid points exceed the budget of " + std::to_string(budget));
    }
    total *= static_cast<std::size_t>(points_per_axis);
  }

  const auto& basis = amps.basis();
  const std::size_t dim = amps.size();
  const Eigen::MatrixXcd& c = chi.entries();
  Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
  std::vector<int> idx(m, 0);
  std::vector<double> angles(m);
  const double step = kTwoPi / points_per_axis;

  double acc = 0.0;
  for (std::size_t p = 0; p < total; ++p) {
    for (std::size_t j = 0; j < m; ++j) angles[j] = idx[j] * step;
    for (std::size_t i = 0; i < dim; ++i) {
      double angle = 0.0;
      for (std::size_t j = 0; j < m; ++j) angle += basis[i][j + 1] * angles[j];
      v(static_cast<Eigen::Index>(i)) = amps[i] * std::polar(1.0, angle);
    }
    const double density = v.dot(c * v).real();
    acc += spec.evaluate(PhaseVector(angles)) * density;
    for (std::size_t j = 0; j < m; ++j) {
      if (++idx[j] < points_per_axis) break;
      idx[j] = 0;
    }
  }
  return acc / static_cast<double>(total);
}

ErrorSampler::ErrorSampler(const AmplitudeVector& amps) : amps_(&amps) {
  double s = 0.0;
  for (const auto& a : amps.amps()) s += std::abs(a);
  peak_ = s * s;
}

ErrorSampler::Draw ErrorSampler::draw(PhiloxStream& rng) const {
  const std::size_t m = static_cast<std::size_t>(amps_->levels() - 1);
  std::vector<double> delta(m);
  std::size_t proposals = 0;
  while (true) {
    ++proposals;
    for (auto& x : delta) x = kTwoPi * rng.uniform();
    const double u = rng.uniform();
    PhaseVector candidate(delta);
    if (u * peak_ < std::norm(e_overlap(*amps_, candidate))) {
      return {std::move(candidate), proposals};
    }
  }
}

PhaseVector sample_estimate(const AmplitudeVector& amps, PhiloxStream& rng) {
  return ErrorSampler(amps).draw(rng).delta;
}

McReport mc_average_cost(const PointwiseCost& cost, const AmplitudeVector& amps, std::size_t samples,
                         std::uint64_t seed, unsigned workers) {
  if (samples < 1000) {
    throw InvalidArgument("Monte Carlo needs at least 1000 samples, got " + std::to_string(samples));
  }
  const ErrorSampler sampler(amps);
  std::vector<double> values(samples);
  std::vector<std::size_t> proposals(samples);

  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      PhiloxStream rng(seed, i);
      auto d = sampler.draw(rng);
      values[i] = cost(d.delta);
      proposals[i] = d.proposals;
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, samples));
  if (workers == 1) {
    run(0, samples);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (samples + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(samples, w * chunk);
      const std::size_t end = std::min(samples, begin + chunk);
      pool.emplace_back(run, begin, end);
    }
  }

  double sum = 0.0;
  std::size_t total_proposals = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    sum += values[i];
    total_proposals += proposals[i];
  }
  const double mean = sum / static_cast<double>(samples);
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  const double sd = std::sqrt(sq / static_cast<double>(samples - 1));

  McReport r;
  r.mean = mean;
  r.std_error = sd / std::sqrt(static_cast<double>(samples));
  r.samples = samples;
  r.acceptance_rate = static_cast<double>(samples) / static_cast<double>(total_proposals);
  r.seed = seed;
  return r;
}

McReport mc_average_cost(const CostSpec& spec, const AmplitudeVector& amps, std::size_t samples,
                         std::uint64_t seed, unsigned workers) {
  if (spec.phase_count() != amps.levels() - 1) {
    throw DimensionMismatch("cost phase count differs from d-1");
  }
  return mc_average_cost([&spec](const PhaseVector& delta) { return spec.evaluate(delta); }, amps,
                         samples, seed, workers);
}

}  // namespace mphase
