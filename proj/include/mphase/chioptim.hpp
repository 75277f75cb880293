#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mphase/costs.hpp"
#include "mphase/states.hpp"

namespace mphase {

/// Seed operator of a covariant POVM over the symmetric basis. Construction
/// only enforces a square Hermitian matrix; feasibility (unit diagonal, PSD,
/// |chi_nm| <= 1) is checked separately so infeasible candidates can be
/// represented and rejected.
class ChiMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;

  /// Throws NonHermitian (or DimensionMismatch for non-square input).
  explicit ChiMatrix(Eigen::MatrixXcd entries);

  Eigen::Index dim() const { return entries_.rows(); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return entries_(r, c); }

 private:
  Eigen::MatrixXcd entries_;
};

/// All-ones matrix: the optimum for every Holevo-class cost.
ChiMatrix chi_optimal(Eigen::Index dim);

/// Gram matrix of dim random unit vectors in C^dim, deterministic per seed.
ChiMatrix random_feasible_chi(Eigen::Index dim, std::uint64_t seed);

/// Smallest eigenvalue >= -tol and every |chi_nm| <= 1 + tol.
bool psd_check(const ChiMatrix& chi, double tol);

/// psd_check plus an exactly unit diagonal (within tol).
bool check_invariants(const ChiMatrix& chi, double tol = 1e-10);

/// (1 - t) a + t b.
ChiMatrix mix(const ChiMatrix& a, const ChiMatrix& b, double t);

struct BoundReport {
  std::size_t trials = 0;
  std::size_t violations = 0;
  std::size_t infeasible = 0;
  double min_cost = 0.0;      // the analytic optimum
  double min_margin = 0.0;    // min over trials of cost(chi) - min_cost
  double optimal_margin = 0.0;  // cost(chi_optimal) - min_cost

  bool passed() const { return violations == 0 && infeasible == 0; }
};

inline constexpr double kBoundSlack = 1e-10;

/// Certify that no sampled feasible chi beats the all-ones seed:
/// cost(chi) >= min_cost - kBoundSlack for `trials` Gram samples.
/// Throws NotHolevoClass for out-of-class costs.
BoundReport verify_bound(const CostSpec& spec, const AmplitudeVector& amps, std::size_t trials,
                         std::uint64_t seed);

/// Same check over explicit candidates. Candidates failing psd_check are
/// counted as infeasible and still scored against the bound.
BoundReport verify_bound(const CostSpec& spec, const AmplitudeVector& amps,
                         std::span<const ChiMatrix> candidates);

}  // namespace mphase
