#include "robinlab/primes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "robinlab/numerics.hpp"

namespace robinlab {
namespace {

using u128 = unsigned __int128;

// Base sieve (and therefore sqrt(hi)) is capped so a sweep request cannot
// silently allocate gigabytes.
constexpr uint64_t kMaxBasePrime = 200'000'000;

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<u128>(a) * b) % m);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Witness set proven sufficient for all n < 3.3 * 10^24.
constexpr uint64_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

uint64_t isqrt_u64(uint64_t n) {
  uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n && (r + 1) != 0) ++r;
  return r;
}

}  // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                     23ull, 29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  uint64_t d = n - 1;
  int s = std::countr_zero(d);
  d >>= s;
  for (uint64_t a : kWitnesses) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

SegmentedSieve::SegmentedSieve(uint64_t lo, uint64_t hi,
                               std::size_t segment_odds)
    : lo_(lo), hi_(hi), segment_odds_(segment_odds) {
  if (lo > hi) throw std::invalid_argument("SegmentedSieve: lo > hi");
  if (segment_odds_ < 64) segment_odds_ = 64;
  two_pending_ = lo_ <= 2 && hi_ >= 2;
  cursor_ = std::max<uint64_t>(lo_, 3);
  if (cursor_ % 2 == 0) ++cursor_;

  uint64_t root = isqrt_u64(hi_);
  if (root > kMaxBasePrime)
    throw CapacityError("SegmentedSieve: range upper bound too large");
  if (root >= 3 && cursor_ <= hi_) {
    // Simple odd-only bit sieve for the base primes.
    std::size_t n_odds = (root - 1) / 2;  // odds 3,5,... <= root
    std::vector<uint64_t> bits((n_odds + 63) / 64, ~uint64_t{0});
    for (uint64_t v = 3; v * v <= root; v += 2) {
      std::size_t i = (v - 3) / 2;
      if (!(bits[i >> 6] >> (i & 63) & 1)) continue;
      for (uint64_t m = v * v; m <= root; m += 2 * v) {
        std::size_t j = (m - 3) / 2;
        bits[j >> 6] &= ~(uint64_t{1} << (j & 63));
      }
    }
    for (std::size_t i = 0; i < n_odds; ++i)
      if (bits[i >> 6] >> (i & 63) & 1) base_.push_back(3 + 2 * i);
  }
  words_.resize((segment_odds_ + 63) / 64);
}

bool SegmentedSieve::next() {
  primes_.clear();
  if (two_pending_) {
    primes_.push_back(2);
    two_pending_ = false;
    if (cursor_ > hi_) return true;
  } else if (cursor_ > hi_) {
    return false;
  }

  uint64_t seg_lo = cursor_;  // odd
  uint64_t seg_span = 2 * static_cast<uint64_t>(segment_odds_);
  uint64_t seg_hi = std::min(hi_, seg_lo + seg_span - 2);
  std::size_t n_odds = (seg_hi - seg_lo) / 2 + 1;

  std::fill(words_.begin(), words_.end(), ~uint64_t{0});
  for (uint64_t p : base_) {
    uint64_t start = p * p;
    if (start > seg_hi) break;
    if (start < seg_lo) {
      uint64_t k = (seg_lo + p - 1) / p;
      if (k % 2 == 0) ++k;  // odd multiples only
      start = k * p;
    }
    for (uint64_t m = start; m <= seg_hi; m += 2 * p) {
      std::size_t i = (m - seg_lo) / 2;
      words_[i >> 6] &= ~(uint64_t{1} << (i & 63));
    }
  }

  for (std::size_t w = 0; w * 64 < n_odds; ++w) {
    uint64_t bits = words_[w];
    if ((w + 1) * 64 > n_odds) bits &= (~uint64_t{0}) >> (64 - (n_odds & 63));
    while (bits) {
      int b = std::countr_zero(bits);
      bits &= bits - 1;
      primes_.push_back(seg_lo + 2 * (w * 64 + b));
    }
  }
  cursor_ = seg_hi + 2;  // seg_hi is odd or hi_; +2 keeps parity when odd
  if (cursor_ % 2 == 0) ++cursor_;
  return true;
}

PrimeTable sieve_range(uint64_t lo, uint64_t hi, std::size_t segment_odds) {
  PrimeTable table;
  table.lo = lo;
  table.hi = hi;
  try {
    for_primes(
        lo, hi, [&](uint64_t p) { table.primes.push_back(p); }, segment_odds);
  } catch (const std::bad_alloc&) {
    throw CapacityError("sieve_range: cannot allocate prime table");
  }
  return table;
}

uint64_t count_primes(uint64_t lo, uint64_t hi, std::size_t segment_odds) {
  uint64_t n = 0;
  for_primes(
      lo, hi, [&](uint64_t) { ++n; }, segment_odds);
  return n;
}

namespace {

constexpr uint64_t kWheel[] = {3,  5,  7,  11, 13, 17, 19, 23,
                               29, 31, 37, 41, 43, 47};

// Sieve the odd candidates of [lo, lo + 2*(count-1)] by the wheel primes,
// then confirm survivors deterministically.
template <class Visit>
void windowed_scan(uint64_t lo, std::size_t count, Visit&& visit) {
  std::vector<uint8_t> alive(count, 1);
  for (uint64_t p : kWheel) {
    uint64_t k = (lo + p - 1) / p;
    if (k % 2 == 0) ++k;
    uint64_t m = k * p;
    if (m == p) m += 2 * p;  // never strike p itself
    for (; m < lo + 2 * count; m += 2 * p) alive[(m - lo) / 2] = 0;
  }
  for (std::size_t i = 0; i < count; ++i)
    if (alive[i] && visit(lo + 2 * i)) return;
}

}  // namespace

uint64_t next_prime(uint64_t x) {
  if (x < 2) return 2;
  if (x == 2) return 3;
  if (x >= 18446744073709551557ull)  // largest 64-bit prime
    throw CapacityError("next_prime: beyond 64-bit primes");
  double lx = std::log(static_cast<double>(x));
  std::size_t window = static_cast<std::size_t>(std::max(64.0, 1.5 * lx * lx));
  uint64_t lo = x + 1;
  if (lo % 2 == 0) ++lo;
  for (;;) {
    uint64_t found = 0;
    windowed_scan(lo, window, [&](uint64_t cand) {
      if (is_prime_u64(cand)) {
        found = cand;
        return true;
      }
      return false;
    });
    if (found > x) return found;
    lo += 2 * window;
  }
}

uint64_t prev_prime(uint64_t x) {
  if (x <= 2) throw std::domain_error("prev_prime: no prime below x");
  if (x == 3) return 2;
  double lx = std::log(static_cast<double>(x));
  std::size_t window = static_cast<std::size_t>(std::max(64.0, 1.5 * lx * lx));
  uint64_t hi = x - 1;
  if (hi % 2 == 0) --hi;  // hi >= 3
  for (;;) {
    uint64_t lo = hi >= 2 * window + 3 ? hi - 2 * (window - 1) : 3;
    std::size_t count = (hi - lo) / 2 + 1;
    uint64_t best = 0;
    windowed_scan(lo, count, [&](uint64_t cand) {
      if (cand < x && is_prime_u64(cand)) best = cand;
      return false;  // keep the largest survivor
    });
    if (best != 0) return best;
    if (lo == 3) return 2;
    hi = lo - 2;
  }
}

GapCheck dusart_gap_ok(uint64_t p) {
  if (p < 3299) throw std::domain_error("dusart_gap_ok: bound requires p >= 3299");
  if (!is_prime_u64(p)) throw std::domain_error("dusart_gap_ok: p must be prime");
  uint64_t q = next_prime(p);
  Precision prec(30, 120);
  Real rp = Real::of_u64(p, prec);
  Real lp = ln(rp, prec);
  Real rhs = rp + rp / (Real::of_u64(2, prec) * lp * lp);
  Real margin = rhs - Real::of_u64(q, prec);
  GapCheck out{margin.certainly_positive() || margin.is_zero(), p, q,
               margin.to_double()};
  return out;
}

GapSweepResult dusart_gap_sweep(uint64_t lo, uint64_t hi,
                                std::size_t segment_odds) {
  lo = std::max<uint64_t>(lo, 3299);
  GapSweepResult out;
  out.min_margin = std::numeric_limits<double>::infinity();
  if (lo > hi) return out;
  uint64_t prev = 0;
  // Stream a little past hi so the last pair's successor is seen.
  uint64_t cushion = hi + 4096;
  for_primes(
      lo, cushion,
      [&](uint64_t q) {
        if (prev != 0 && prev <= hi) {
          double L = std::log(static_cast<double>(prev));
          double margin =
              static_cast<double>(prev) / (2.0 * L * L) -
              static_cast<double>(q - prev);
          if (margin < 1.0) {
            // Too close for double arithmetic; certify with tracked error.
            GapCheck exact = dusart_gap_ok(prev);
            margin = exact.margin;
            if (!exact.ok) out.all_ok = false;
          }
          ++out.pairs;
          if (margin < out.min_margin) {
            out.min_margin = margin;
            out.worst_p = prev;
          }
        }
        prev = q;
      },
      segment_odds);
  if (prev != 0 && prev <= hi) {
    // The final streamed prime had no successor inside the cushion.
    GapCheck exact = dusart_gap_ok(prev);
    ++out.pairs;
    if (!exact.ok) out.all_ok = false;
    if (exact.margin < out.min_margin) {
      out.min_margin = exact.margin;
      out.worst_p = prev;
    }
  }
  return out;
}

}  // namespace robinlab
