#pragma once

#include <cstdint>
#include <vector>

#include "robinlab/errors.hpp"

namespace robinlab {

inline constexpr std::size_t kDefaultSegmentOdds = std::size_t{1} << 20;

struct PrimeTable {
  uint64_t lo = 0;
  uint64_t hi = 0;  // inclusive bounds of the sieved range
  std::vector<uint64_t> primes;
};

// Deterministic Miller-Rabin for 64-bit inputs (fixed witness set).
bool is_prime_u64(uint64_t n);

// Streams the primes of [lo, hi] one cache-resident segment at a time.
// Odd-only bitset storage; base primes are sieved once up front.
class SegmentedSieve {
 public:
  SegmentedSieve(uint64_t lo, uint64_t hi,
                 std::size_t segment_odds = kDefaultSegmentOdds);

  // Advances to the next segment; false when the range is exhausted.
  // Segment primes are available via segment_primes() afterwards.
  bool next();
  const std::vector<uint64_t>& segment_primes() const { return primes_; }

 private:
  uint64_t lo_, hi_;
  uint64_t cursor_;  // first odd value of the next segment
  std::size_t segment_odds_;
  bool two_pending_;
  std::vector<uint64_t> base_;   // odd base primes <= sqrt(hi)
  std::vector<uint64_t> words_;  // one bit per odd in the segment
  std::vector<uint64_t> primes_;
};

template <class Fn>
void for_primes(uint64_t lo, uint64_t hi, Fn&& fn,
                std::size_t segment_odds = kDefaultSegmentOdds) {
  SegmentedSieve sieve(lo, hi, segment_odds);
  while (sieve.next())
    for (uint64_t p : sieve.segment_primes()) fn(p);
}

PrimeTable sieve_range(uint64_t lo, uint64_t hi,
                       std::size_t segment_odds = kDefaultSegmentOdds);
uint64_t count_primes(uint64_t lo, uint64_t hi,
                      std::size_t segment_odds = kDefaultSegmentOdds);

// Neighbor lookups sieve a small window around x on demand; no global
// table is required.
uint64_t next_prime(uint64_t x);  // smallest prime > x
uint64_t prev_prime(uint64_t x);  // largest prime < x; requires x >= 3

struct GapCheck {
  bool ok;
  uint64_t p;
  uint64_t next;
  double margin;  // p*(1 + 1/(2 ln^2 p)) - next
};

// Checks next_prime(p) <= p*(1 + 1/(2 ln^2 p)). The bound is only claimed
// for p >= 3299; smaller p is a precondition violation.
GapCheck dusart_gap_ok(uint64_t p);

struct GapSweepResult {
  bool all_ok = true;
  uint64_t pairs = 0;
  uint64_t worst_p = 0;
  double min_margin = 0.0;
};

// Verifies the gap bound for every consecutive prime pair whose smaller
// member lies in [lo, hi]. lo is clamped to 3299.
GapSweepResult dusart_gap_sweep(uint64_t lo, uint64_t hi,
                                std::size_t segment_odds = kDefaultSegmentOdds);

}  // namespace robinlab
