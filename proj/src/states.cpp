#include "mphase/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mphase/errors.hpp"

namespace mphase {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double wrap_angle(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // -tiny + 2pi can round up to 2pi exactly.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

PhaseVector::PhaseVector(std::vector<double> angles) : angles_(std::move(angles)) {
  for (double& a : angles_) a = wrap_angle(a);
}

PhaseVector PhaseVector::minus(const PhaseVector& other) const {
  if (other.size() != size()) {
    throw DimensionMismatch("phase vectors differ in length");
  }
  std::vector<double> out(size());
  for (std::size_t j = 0; j < size(); ++j) out[j] = angles_[j] - other.angles_[j];
  return PhaseVector(std::move(out));
}

AmplitudeVector::AmplitudeVector(int d, int N, std::vector<Complex> amps)
    : d_(d), n_(N), amps_(std::move(amps)), basis_(enumerate_occupations(d, N)) {
  if (amps_.size() != basis_.size()) {
    throw DimensionMismatch("expected " + std::to_string(basis_.size()) + " amplitudes, got " +
                            std::to_string(amps_.size()));
  }
}

double AmplitudeVector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

AmplitudeVector psi0_amplitudes(int d, int N) {
  if (N < 1) throw InvalidDimension("psi0 needs at least one copy");
  const auto basis = enumerate_occupations(d, N);
  const double scale = std::pow(static_cast<double>(d), -static_cast<double>(N));
  std::vector<Complex> amps;
  amps.reserve(basis.size());
  for (const auto& occ : basis) {
    amps.emplace_back(std::sqrt(static_cast<double>(multinomial(occ)) * scale), 0.0);
  }
  return AmplitudeVector(d, N, std::move(amps));
}

AmplitudeVector apply_phases(const AmplitudeVector& amps, const PhaseVector& phases) {
  if (phases.size() != static_cast<std::size_t>(amps.levels() - 1)) {
    throw DimensionMismatch("need d-1 = " + std::to_string(amps.levels() - 1) + " phases, got " +
                            std::to_string(phases.size()));
  }
  std::vector<Complex> out(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const auto& occ = amps.basis()[i];
    double angle = 0.0;
    for (std::size_t j = 1; j < static_cast<std::size_t>(occ.levels()); ++j) {
      angle += occ[j] * phases[j - 1];
    }
    out[i] = amps[i] * std::polar(1.0, angle);
  }
  return AmplitudeVector(amps.levels(), amps.copies(), std::move(out));
}

Complex overlap(const AmplitudeVector& a, const AmplitudeVector& b) {
  if (a.levels() != b.levels() || a.copies() != b.copies()) {
    throw DimensionMismatch("overlap of states from different (d, N)");
  }
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace mphase
