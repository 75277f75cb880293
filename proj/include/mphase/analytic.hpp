#pragma once

#include "mphase/costs.hpp"
#include "mphase/states.hpp"

namespace mphase {

// Closed-form figures of merit of the optimal covariant measurement on N
// equatorial qudits.
//
// Moving one copy from level 0 to level 1 pairs occupation n with n' where
// multinomial(n') = multinomial(n) n_0 / (n_1 + 1); every ordered pair of
// levels contributes the same overlap, which collapses the average fidelity
// to a single sum over occupations with n_0 >= 1.

/// 1/d + (d-1)/d^{N+1} sum_{n_0 >= 1} multinomial(n) sqrt(n_0 / (n_1 + 1)).
double avg_fidelity_qudit(int d, int N);

/// The d = 3 double sum, evaluated independently of avg_fidelity_qudit.
double avg_fidelity_qutrit(int N);

/// (2d - 1) / d^2.
double avg_fidelity_single(int d);

/// 2 / (d + 2): best fidelity for a completely unknown single qudit.
double universal_fidelity_single(int d);

/// 2 - (2 / 3^N) sum_{j,k} M(N,j,k) sqrt((N-j-k)/(j+1)).
double avg_variance_qutrit(int N);

/// Optimal average cost -c0 - sum_{l != 0} c_l G_l. Throws NotHolevoClass
/// or DimensionMismatch.
double min_cost(const CostSpec& spec, const AmplitudeVector& amps);

}  // namespace mphase
