#pragma once

#include <map>

#include "mphase/costs.hpp"
#include "mphase/states.hpp"

namespace mphase {

// The optimal covariant POVM is the family
//   dmu(phi_bar) = |e(phi_bar)><e(phi_bar)| dphi_bar / (2pi)^M,
//   |e(phi)> = sum_n exp(i n.phi) |n>
// over the symmetric basis. It is never materialized; outcome statistics are
// computed from overlaps with the initial amplitudes.

/// <e(phi_bar)|psi(phi)> = sum_n A_n exp(-i n.delta) with delta = phi_bar - phi.
Complex e_overlap(const AmplitudeVector& amps, const PhaseVector& deltas);

/// Outcome density |e_overlap|^2 / (2pi)^M of the estimation error delta.
double conditional_density(const AmplitudeVector& amps, const PhaseVector& deltas);

/// G_l = sum over pairs (n, m) with m - n = l of A_n A_m, for every l with a
/// nonzero contribution. Satisfies sum_l G_l exp(i l.delta) =
/// (2pi)^M conditional_density(delta). Requires real amplitudes.
std::map<LatticeVector, double> density_fourier_coefficients(const AmplitudeVector& amps);

/// Max-norm distance from the identity of the grid average of
/// |e(phi)><e(phi)| over a uniform M-torus grid. The average is exact once
/// the grid resolves every frequency, so the result measures rounding only.
/// Throws GridTooCoarse if points_per_axis <= 2N+1.
double completeness_defect(int d, int N, int points_per_axis);

}  // namespace mphase
