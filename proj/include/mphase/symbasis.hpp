#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mphase {

/// Occupation numbers (n_0, ..., n_{d-1}) of one symmetric basis state of
/// N d-level systems. n_j is also the eigenvalue of the j-th phase generator.
class OccupationVector {
 public:
  /// Throws InvalidDimension if fewer than two levels or a negative count.
  explicit OccupationVector(std::vector<int> counts);

  int levels() const { return static_cast<int>(counts_.size()); }
  int copies() const { return copies_; }
  int operator[](std::size_t j) const { return counts_[j]; }
  std::span<const int> counts() const { return counts_; }

  /// Sum of n_1 .. n_{d-1}, i.e. the number of copies outside level 0.
  int excited() const { return copies_ - counts_[0]; }

  friend bool operator==(const OccupationVector&, const OccupationVector&) = default;

 private:
  std::vector<int> counts_;
  int copies_ = 0;
};

/// All compositions of N into d parts. Ordered lexicographically ascending on
/// (n_1, ..., n_{d-1}) with n_1 most significant; n_0 is the remainder.
std::vector<OccupationVector> enumerate_occupations(int d, int N);

/// N! / (n_0! ... n_{d-1}!) in exact integer arithmetic. Throws Overflow.
std::uint64_t multinomial(const OccupationVector& occ);

/// C(N+d-1, d-1). Throws InvalidDimension or Overflow.
std::size_t sym_dim(int d, int N);

/// Position of occ in enumerate_occupations(d, N), computed by ranking.
std::size_t index_of(const OccupationVector& occ);

/// Position of occ in the (d, N) enumeration; NotFound if counts do not
/// sum to N or the level count differs from d.
std::size_t index_of(const OccupationVector& occ, int d, int N);

}  // namespace mphase
