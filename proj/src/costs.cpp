#include "mphase/costs.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "mphase/errors.hpp"

namespace mphase {

namespace {

constexpr double kEvennessTol = 1e-12;

bool is_zero(const LatticeVector& l) {
  for (int x : l) {
    if (x != 0) return false;
  }
  return true;
}

void require_phase_count(int d, const PhaseVector& phases) {
  if (d < 2) throw InvalidDimension("level count must be >= 2");
  if (phases.size() != static_cast<std::size_t>(d - 1)) {
    throw DimensionMismatch("need d-1 = " + std::to_string(d - 1) + " phases, got " +
                            std::to_string(phases.size()));
  }
}

LatticeVector unit(int m, int j, int sign) {
  LatticeVector l(static_cast<std::size_t>(m), 0);
  l[static_cast<std::size_t>(j)] = sign;
  return l;
}

}  // namespace

LatticeVector negate(const LatticeVector& l) {
  LatticeVector out(l.size());
  for (std::size_t j = 0; j < l.size(); ++j) out[j] = -l[j];
  return out;
}

CostSpec::CostSpec(int phase_count, double c0, std::map<LatticeVector, double> coeffs)
    : m_(phase_count), c0_(c0), coeffs_(std::move(coeffs)) {
  if (m_ < 1) throw InvalidDimension("cost needs at least one phase");
  for (const auto& [l, c] : coeffs_) {
    if (l.size() != static_cast<std::size_t>(m_)) {
      throw DimensionMismatch("frequency vector length differs from phase count");
    }
    if (is_zero(l)) throw InvalidArgument("the zero frequency belongs in c0");
    const auto mirror = coeffs_.find(negate(l));
    if (mirror == coeffs_.end() || std::abs(mirror->second - c) > kEvennessTol) {
      throw InvalidArgument("cost coefficients must satisfy c_l = c_{-l}");
    }
  }
}

int CostSpec::max_degree() const {
  int deg = 0;
  for (const auto& [l, c] : coeffs_) {
    for (int x : l) deg = std::max(deg, std::abs(x));
  }
  return deg;
}

double CostSpec::evaluate(const PhaseVector& phases) const {
  if (phases.size() != static_cast<std::size_t>(m_)) {
    throw DimensionMismatch("cost evaluated at wrong number of phases");
  }
  // c_l = c_{-l}, so the imaginary parts cancel pairwise.
  double s = -c0_;
  for (const auto& [l, c] : coeffs_) {
    double arg = 0.0;
    for (std::size_t j = 0; j < l.size(); ++j) arg += l[j] * phases[j];
    s -= c * std::cos(arg);
  }
  return s;
}

double fidelity_point(int d, const PhaseVector& phases) {
  require_phase_count(d, phases);
  double s = d;
  for (std::size_t j = 0; j < phases.size(); ++j) {
    s += 2.0 * std::cos(phases[j]);
    for (std::size_t k = 0; k < j; ++k) s += 2.0 * std::cos(phases[j] - phases[k]);
  }
  return s / (static_cast<double>(d) * d);
}

double variance_point(const PhaseVector& phases) {
  double s = 0.0;
  for (double a : phases.angles()) {
    const double h = std::sin(0.5 * a);
    s += 2.0 * h * h;
  }
  return s;
}

CostSpec fidelity_cost_spec(int d) {
  if (d < 2) throw InvalidDimension("level count must be >= 2");
  const int m = d - 1;
  const double w = 1.0 / (static_cast<double>(d) * d);
  std::map<LatticeVector, double> coeffs;
  for (int j = 0; j < m; ++j) {
    coeffs[unit(m, j, 1)] = w;
    coeffs[unit(m, j, -1)] = w;
    for (int k = 0; k < j; ++k) {
      LatticeVector l(static_cast<std::size_t>(m), 0);
      l[static_cast<std::size_t>(j)] = 1;
      l[static_cast<std::size_t>(k)] = -1;
      coeffs[l] = w;
      coeffs[negate(l)] = w;
    }
  }
  return CostSpec(m, -(1.0 - 1.0 / d), std::move(coeffs));
}

CostSpec variance_cost_spec(int phase_count) {
  if (phase_count < 1) throw InvalidDimension("cost needs at least one phase");
  std::map<LatticeVector, double> coeffs;
  for (int j = 0; j < phase_count; ++j) {
    coeffs[unit(phase_count, j, 1)] = 0.5;
    coeffs[unit(phase_count, j, -1)] = 0.5;
  }
  return CostSpec(phase_count, -static_cast<double>(phase_count), std::move(coeffs));
}

bool is_holevo_class(const CostSpec& spec) {
  for (const auto& [l, c] : spec.coeffs()) {
    if (c < 0.0) return false;
  }
  return true;
}

}  // namespace mphase
