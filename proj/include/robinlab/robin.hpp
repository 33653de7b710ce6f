#pragma once

#include <optional>
#include <vector>

#include "robinlab/factored.hpp"
#include "robinlab/numerics.hpp"
#include "robinlab/primes.hpp"

namespace robinlab {

enum class RobinState { Holds, Fails, Degenerate, Undecided };
const char* to_string(RobinState s);

struct RobinVerdict {
  RobinState state = RobinState::Degenerate;
  std::optional<Real> g_value;  // rho(n)/loglog(n); absent when degenerate
  std::optional<Real> margin;   // e^gamma * loglog(n) - rho(n)
};

// G(n) = rho(n) / log log n. Defined for n >= 3.
Real G(const FactoredNumber& n, const Precision& prec);

// Decides rho(n) < e^gamma * loglog(n) with adaptive precision.
// n <= 2 is Degenerate; Undecided survives only if the comparison cannot
// separate at the precision ceiling.
RobinVerdict robin_holds(const FactoredNumber& n, const Precision& prec = {});
RobinVerdict robin_holds(uint64_t n, const Precision& prec = {});

struct ScanOptions {
  std::size_t segment_size = std::size_t{1} << 20;  // integers per segment
  unsigned threads = 1;
};

struct ScanResult {
  uint64_t limit = 0;
  std::vector<uint64_t> violations;  // ascending n in [3, limit] violating RI
};

// Finds every n in [3, limit] with sigma(n) >= e^gamma * n * loglog(n) via a
// segmented multiplicative divisor-sum sieve. The hot loop compares exact
// integer sigma against precomputed per-block threshold floors; only
// near-threshold candidates pay for high-precision arithmetic.
ScanResult exhaustive_scan(uint64_t limit, const ScanOptions& opts = {});

// Per-n reference scan enumerating divisors d <= sqrt(n); used by the CLI
// --oracle-check flag. O(limit^1.5), intended for small limits.
std::vector<uint64_t> naive_scan(uint64_t limit);

struct MertensResult {
  uint64_t n = 0;
  Real sum_logs;   // sum over primes p <= n of log(p/(p-1))
  Real predicted;  // log log n + gamma
  Real remainder;  // sum_logs - predicted
  Real bound;      // 0.005586 / (log n)^2
};

struct MertensOptions {
  std::size_t segment_odds = kDefaultSegmentOdds;
  unsigned threads = 1;
  // Up to this n every term is evaluated at full precision; beyond it the
  // sum switches to compensated double summation with an explicit error
  // bound folded into sum_logs.err.
  uint64_t exact_cutoff = 2'000'000;
};

MertensResult mertens_product(uint64_t n, const Precision& prec = {},
                              const MertensOptions& opts = {});

// g(x) = log(x) * exp(0.005586/(log x)^2) for x > 1.
Real lemma4_g(const Real& x, const Precision& prec);

}  // namespace robinlab
