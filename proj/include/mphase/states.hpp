#pragma once

#include <complex>
#include <span>
#include <vector>

#include "mphase/symbasis.hpp"

namespace mphase {

using Complex = std::complex<double>;

/// M angles, each reduced to [0, 2pi). Used for true phases, estimates and
/// estimation errors alike.
class PhaseVector {
 public:
  PhaseVector() = default;
  explicit PhaseVector(std::vector<double> angles);

  std::size_t size() const { return angles_.size(); }
  double operator[](std::size_t j) const { return angles_[j]; }
  std::span<const double> angles() const { return angles_; }

  /// Componentwise this - other, reduced to [0, 2pi).
  PhaseVector minus(const PhaseVector& other) const;

 private:
  std::vector<double> angles_;
};

/// Reduce an angle to [0, 2pi).
double wrap_angle(double angle);

/// Complex amplitudes over the symmetric basis of (d, N), in canonical
/// enumeration order.
class AmplitudeVector {
 public:
  /// Throws DimensionMismatch if amps.size() != sym_dim(d, N).
  AmplitudeVector(int d, int N, std::vector<Complex> amps);

  int levels() const { return d_; }
  int copies() const { return n_; }
  std::size_t size() const { return amps_.size(); }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  std::span<const Complex> amps() const { return amps_; }

  /// Occupations in the same order as the amplitudes.
  const std::vector<OccupationVector>& basis() const { return basis_; }

  double norm_squared() const;

 private:
  int d_;
  int n_;
  std::vector<Complex> amps_;
  std::vector<OccupationVector> basis_;
};

/// N copies of the equatorial state (|0> + ... + |d-1>)/sqrt(d), projected
/// onto the symmetric basis: amplitude sqrt(multinomial / d^N).
AmplitudeVector psi0_amplitudes(int d, int N);

/// Multiply the amplitude of each occupation n by exp(i sum_j n_j phi_j).
AmplitudeVector apply_phases(const AmplitudeVector& amps, const PhaseVector& phases);

/// <a|b>.
Complex overlap(const AmplitudeVector& a, const AmplitudeVector& b);

}  // namespace mphase
