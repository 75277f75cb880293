#include "mphase/symbasis.hpp"

#include <numeric>
#include <string>

#include "mphase/errors.hpp"

namespace mphase {

namespace {

void require_shape(int d, int N) {
  if (d < 2) {
    throw InvalidDimension("level count must be >= 2, got " + std::to_string(d));
  }
  if (N < 0) {
    throw InvalidDimension("copy count must be >= 0, got " + std::to_string(N));
  }
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Overflow("integer overflow in combinatorial coefficient");
  }
  return out;
}

// C(n, k) by the multiplicative formula; each partial product is itself a
// binomial coefficient so the division is exact.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t g = std::gcd(result, i);
    result = checked_mul(result / g, (n - k + i) / (i / g));
  }
  return result;
}

}  // namespace

OccupationVector::OccupationVector(std::vector<int> counts) : counts_(std::move(counts)) {
  if (counts_.size() < 2) {
    throw InvalidDimension("occupation vector needs at least two levels");
  }
  for (int c : counts_) {
    if (c < 0) throw InvalidDimension("occupation numbers must be nonnegative");
    copies_ += c;
  }
}

std::vector<OccupationVector> enumerate_occupations(int d, int N) {
  require_shape(d, N);
  std::vector<OccupationVector> out;
  out.reserve(sym_dim(d, N));

  // Odometer over (n_1, ..., n_{d-1}) with the last slot varying fastest.
  std::vector<int> tail(static_cast<std::size_t>(d - 1), 0);
  int used = 0;
  while (true) {
    std::vector<int> counts;
    counts.reserve(static_cast<std::size_t>(d));
    counts.push_back(N - used);
    counts.insert(counts.end(), tail.begin(), tail.end());
    out.emplace_back(std::move(counts));

    int pos = d - 2;
    while (pos >= 0) {
      if (used < N) {
        ++tail[pos];
        ++used;
        break;
      }
      used -= tail[pos];
      tail[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

std::uint64_t multinomial(const OccupationVector& occ) {
  // Product of binomials C(n_0 + ... + n_j, n_j).
  std::uint64_t result = 1;
  std::uint64_t running = 0;
  for (int c : occ.counts()) {
    running += static_cast<std::uint64_t>(c);
    result = checked_mul(result, binomial(running, static_cast<std::uint64_t>(c)));
  }
  return result;
}

std::size_t sym_dim(int d, int N) {
  require_shape(d, N);
  return static_cast<std::size_t>(
      binomial(static_cast<std::uint64_t>(N + d - 1), static_cast<std::uint64_t>(d - 1)));
}

std::size_t index_of(const OccupationVector& occ) {
  const int d = occ.levels();
  std::size_t rank = 0;
  int remaining = occ.copies();
  for (int j = 1; j < d; ++j) {
    const int free_slots = d - 1 - j;
    // Every smaller value v at slot j precedes occ; the slots after j may
    // then hold any total up to remaining - v.
    for (int v = 0; v < occ[static_cast<std::size_t>(j)]; ++v) {
      rank += static_cast<std::size_t>(binomial(static_cast<std::uint64_t>(remaining - v + free_slots),
                                                static_cast<std::uint64_t>(free_slots)));
    }
    remaining -= occ[static_cast<std::size_t>(j)];
  }
  return rank;
}

std::size_t index_of(const OccupationVector& occ, int d, int N) {
  require_shape(d, N);
  if (occ.levels() != d || occ.copies() != N) {
    throw NotFound("occupation vector is not part of the (d=" + std::to_string(d) +
                   ", N=" + std::to_string(N) + ") basis");
  }
  return index_of(occ);
}

}  // namespace mphase
