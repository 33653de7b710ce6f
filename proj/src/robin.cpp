#include "robinlab/robin.hpp"

#include <atomic>
#include <cmath>
#include <cstring>
#include <limits>
#include <thread>

namespace robinlab {
namespace {

constexpr double kExpGamma = 1.7810724179901979852;

Real mertens_constant(const Precision& prec) {
  // 0.005586 held exactly as 5586 / 10^6
  return Real::of_u64(5586, prec) / Real::of_u64(1'000'000, prec);
}

bool is_two(const FactoredNumber& n) {
  return n.factors().size() == 1 && n.factors()[0] == PrimePower{2, 1};
}

Real robin_threshold(uint64_t n, const Precision& prec) {
  return exp_gamma(prec) * loglog(Real::of_u64(n, prec), prec);
}

}  // namespace

const char* to_string(RobinState s) {
  switch (s) {
    case RobinState::Holds: return "HOLDS";
    case RobinState::Fails: return "FAILS";
    case RobinState::Degenerate: return "DEGENERATE";
    case RobinState::Undecided: return "UNDECIDED";
  }
  return "?";
}

Real G(const FactoredNumber& n, const Precision& prec) {
  if (n.is_one() || is_two(n))
    throw std::domain_error("G: requires n >= 3 (log log not positive)");
  Real ll = ln(log_value(n, prec), prec);
  return rho(n, prec) / ll;
}

RobinVerdict robin_holds(const FactoredNumber& n, const Precision& prec) {
  RobinVerdict out;
  if (n.is_one() || is_two(n)) {
    out.state = RobinState::Degenerate;
    return out;
  }
  Computation lhs = [&n](const Precision& p) { return rho(n, p); };
  Computation rhs = [&n](const Precision& p) {
    return exp_gamma(p) * ln(log_value(n, p), p);
  };
  Verdict v = cmp_adaptive(lhs, rhs, prec);
  switch (v) {
    case Verdict::Less: out.state = RobinState::Holds; break;
    case Verdict::Greater: out.state = RobinState::Fails; break;
    case Verdict::Undecided: out.state = RobinState::Undecided; break;
  }
  out.g_value = G(n, prec);
  out.margin = rhs(prec) - lhs(prec);
  return out;
}

RobinVerdict robin_holds(uint64_t n, const Precision& prec) {
  if (n == 0) throw std::domain_error("robin_holds: n must be >= 1");
  if (n <= 2) {
    RobinVerdict out;
    out.state = RobinState::Degenerate;
    return out;
  }
  return robin_holds(FactoredNumber::from_integer(n), prec);
}

namespace {

// One segment of the multiplicative sigma sieve: exact sigma(n) for every
// n in [lo, hi), plus violation detection against per-block threshold
// floors.
void scan_segment(uint64_t lo, uint64_t hi,
                  const std::vector<uint64_t>& base_primes,
                  const Precision& prec, std::vector<uint64_t>& violations) {
  const std::size_t len = static_cast<std::size_t>(hi - lo);
  std::vector<uint64_t> rem(len);
  std::vector<u128> sig(len, 1);
  for (std::size_t i = 0; i < len; ++i) rem[i] = lo + i;

  for (uint64_t p : base_primes) {
    if (p * p >= hi) break;
    uint64_t m = ((lo + p - 1) / p) * p;
    for (; m < hi; m += p) {
      std::size_t i = static_cast<std::size_t>(m - lo);
      uint64_t pe = p;
      uint64_t r = rem[i] / p;
      while (r % p == 0) {
        r /= p;
        pe *= p;
      }
      rem[i] = r;
      // sigma factor (p^(e+1) - 1)/(p - 1) = 1 + p + ... + p^e
      sig[i] *= (pe * p - 1) / (p - 1);
    }
  }

  const double eg_ll = kExpGamma;
  uint64_t block_lo = lo;
  while (block_lo < hi) {
    uint64_t width = std::max<uint64_t>(64, block_lo / 512);  // <0.2% growth
    uint64_t block_hi = std::min(hi, block_lo + width);
    // Certified floor of the threshold at the block's left edge; the
    // threshold is increasing, so sigma(n) below it clears every n here.
    uint64_t thr_floor = lower_bound_u64(robin_threshold(block_lo, prec));
    for (uint64_t n = block_lo; n < block_hi; ++n) {
      std::size_t i = static_cast<std::size_t>(n - lo);
      u128 s = sig[i];
      if (rem[i] > 1) s *= rem[i] + 1;
      if (s < thr_floor) continue;
      // Close call: per-n double estimate with a guard band.
      double nd = static_cast<double>(n);
      double t = eg_ll * nd * std::log(std::log(nd));
      double sd = static_cast<double>(s);
      if (sd < t * (1.0 - 1e-9)) continue;
      if (sd > t * (1.0 + 1e-9)) {
        violations.push_back(n);
        continue;
      }
      // Tie zone: certify with adaptive precision.
      FactoredNumber f = FactoredNumber::from_integer(n);
      Computation lhs = [&f](const Precision& p) { return rho(f, p); };
      Computation rhs = [n](const Precision& p) {
        return robin_threshold(n, p);
      };
      Verdict v = cmp_adaptive(lhs, rhs, prec);
      if (v == Verdict::Undecided)
        throw UndecidedError("exhaustive_scan: tie at n=" + std::to_string(n));
      if (v == Verdict::Greater) violations.push_back(n);
    }
    block_lo = block_hi;
  }
}

}  // namespace

ScanResult exhaustive_scan(uint64_t limit, const ScanOptions& opts) {
  if (limit > 10'000'000'000ull)
    throw CapacityError("exhaustive_scan: limit above 10^10");
  ScanResult out;
  out.limit = limit;
  if (limit < 3) return out;

  uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(limit)));
  while (root * root > limit) --root;
  while ((root + 1) * (root + 1) <= limit) ++root;
  PrimeTable base = sieve_range(2, std::max<uint64_t>(root, 2));

  Precision prec(30, 240);
  const uint64_t first = 3, last = limit;
  const uint64_t seg = std::max<std::size_t>(opts.segment_size, 1024);
  const std::size_t n_segments =
      static_cast<std::size_t>((last - first) / seg + 1);
  std::vector<std::vector<uint64_t>> partial(n_segments);

  unsigned threads = std::max(1u, opts.threads);
  std::atomic<std::size_t> next_idx{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t idx = next_idx.fetch_add(1);
      if (idx >= n_segments) return;
      uint64_t lo = first + idx * seg;
      uint64_t hi = std::min(last + 1, lo + seg);
      scan_segment(lo, hi, base.primes, prec, partial[idx]);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& v : partial)
    out.violations.insert(out.violations.end(), v.begin(), v.end());
  return out;
}

std::vector<uint64_t> naive_scan(uint64_t limit) {
  std::vector<uint64_t> out;
  for (uint64_t n = 3; n <= limit; ++n) {
    u128 sigma = 0;
    for (uint64_t d = 1; d * d <= n; ++d) {
      if (n % d) continue;
      sigma += d;
      if (d != n / d) sigma += n / d;
    }
    double nd = static_cast<double>(n);
    double t = kExpGamma * nd * std::log(std::log(nd));
    double sd = static_cast<double>(sigma);
    bool violates;
    if (sd > t * (1.0 + 1e-9)) {
      violates = true;
    } else if (sd < t * (1.0 - 1e-9)) {
      violates = false;
    } else {
      Precision prec(30, 240);
      FactoredNumber f = FactoredNumber::from_integer(n);
      Verdict v = cmp_adaptive(
          [&f](const Precision& p) { return rho(f, p); },
          [n](const Precision& p) { return robin_threshold(n, p); }, prec);
      if (v == Verdict::Undecided)
        throw UndecidedError("naive_scan: tie at n=" + std::to_string(n));
      violates = v == Verdict::Greater;
    }
    if (violates) out.push_back(n);
  }
  return out;
}

namespace {

struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

}  // namespace

MertensResult mertens_product(uint64_t n, const Precision& prec,
                              const MertensOptions& opts) {
  if (n < 3) throw std::domain_error("mertens_product: n must be >= 3");

  MertensResult out;
  out.n = n;

  if (n <= opts.exact_cutoff) {
    Real sum(prec);
    for_primes(2, n, [&](uint64_t p) {
      Real rp = Real::of_u64(p, prec);
      sum = sum + ln(rp / Real::of_u64(p - 1, prec), prec);
    });
    out.sum_logs = sum;
  } else {
    // Segment-indexed partial sums; the reduction order is fixed by the
    // segment index, so the result does not depend on the thread count.
    const uint64_t span = n - 1;  // [2, n]
    const uint64_t per_seg = 2 * static_cast<uint64_t>(opts.segment_odds);
    const std::size_t n_segments =
        static_cast<std::size_t>(span / per_seg + 1);
    std::vector<KahanSum> partial(n_segments);
    std::atomic<std::size_t> next_idx{0};
    auto worker = [&]() {
      for (;;) {
        std::size_t idx = next_idx.fetch_add(1);
        if (idx >= n_segments) return;
        uint64_t lo = 2 + idx * per_seg;
        uint64_t hi = std::min(n, lo + per_seg - 1);
        KahanSum& ks = partial[idx];
        for_primes(
            lo, hi,
            [&](uint64_t p) {
              ks.add(-std::log1p(-1.0 / static_cast<double>(p)));
            },
            opts.segment_odds);
      }
    };
    unsigned threads = std::max(1u, opts.threads);
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    KahanSum total;
    for (const KahanSum& ks : partial) {
      total.add(ks.s);
      total.add(-ks.c);
    }
    // Per-term rounding plus compensated-summation slack, all relative to
    // the all-positive term total.
    double err = 10.0 * std::numeric_limits<double>::epsilon() * total.s;
    out.sum_logs = Real::approx(total.s, err, prec);
  }

  out.predicted =
      loglog(Real::of_u64(n, prec), prec) + euler_gamma(prec);
  out.remainder = out.sum_logs - out.predicted;
  Real lnn = ln(Real::of_u64(n, prec), prec);
  out.bound = mertens_constant(prec) / (lnn * lnn);
  return out;
}

Real lemma4_g(const Real& x, const Precision& prec) {
  if (mpfr_cmp_ui(x.value(), 1) <= 0)
    throw std::domain_error("lemma4_g: requires x > 1");
  Real lx = ln(x, prec);
  Real r = mertens_constant(prec) / (lx * lx);
  return lx * exp(r, prec);
}

}  // namespace robinlab
