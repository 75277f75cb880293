#pragma once

#include <map>
#include <vector>

#include "mphase/states.hpp"

namespace mphase {

/// Integer frequency vector l on the M-torus.
using LatticeVector = std::vector<int>;

LatticeVector negate(const LatticeVector& l);

/// An even, 2pi-periodic cost in Fourier form:
///   C(phi) = -c0 - sum_{l != 0} c_l exp(i l.phi)
/// Construction rejects zero or wrong-length keys and coefficient maps that
/// are not symmetric under l -> -l.
class CostSpec {
 public:
  CostSpec(int phase_count, double c0, std::map<LatticeVector, double> coeffs);

  int phase_count() const { return m_; }
  double c0() const { return c0_; }
  const std::map<LatticeVector, double>& coeffs() const { return coeffs_; }

  /// Largest |l_j| over all stored frequencies.
  int max_degree() const;

  double evaluate(const PhaseVector& phases) const;

 private:
  int m_;
  double c0_;
  std::map<LatticeVector, double> coeffs_;
};

/// |<psi0|psi(phi)>|^2 for a single equatorial qudit.
double fidelity_point(int d, const PhaseVector& phases);

/// sum_j 2 sin^2(phi_j / 2).
double variance_point(const PhaseVector& phases);

/// 1 - fidelity_point in Fourier form.
CostSpec fidelity_cost_spec(int d);

/// variance_point in Fourier form.
CostSpec variance_cost_spec(int phase_count);

/// True iff every nonzero-frequency coefficient is >= 0.
bool is_holevo_class(const CostSpec& spec);

}  // namespace mphase
