#include "robinlab/ca.hpp"

#include <gmpxx.h>

#include <cmath>
#include <queue>

#include "robinlab/primes.hpp"

namespace robinlab {
namespace {

constexpr uint64_t kLargestChainPrime = 1'000'000'000;

// Exact geometric sum p + p^2 + ... + p^k.
mpz_class geometric_sum(uint64_t p, unsigned k) {
  mpz_class pz(static_cast<unsigned long>(p)), sum = 0, pw = 1;
  for (unsigned j = 1; j <= k; ++j) {
    pw *= pz;
    sum += pw;
  }
  return sum;
}

double critical_eps_d(uint64_t p, unsigned k) {
  double s = 0, pw = 1;
  for (unsigned j = 1; j <= k; ++j) {
    pw *= static_cast<double>(p);
    s += pw;
  }
  return std::log1p(1.0 / s) / std::log(static_cast<double>(p));
}

}  // namespace

Real critical_eps(const Real& x, unsigned k, const Precision& prec) {
  if (k < 1) throw std::invalid_argument("critical_eps: k must be >= 1");
  if (mpfr_cmp_ui(x.value(), 1) <= 0)
    throw std::domain_error("critical_eps: requires x > 1");
  // x (x^k - 1)/(x - 1), stable for x > 1
  Real one = Real::of_u64(1, prec);
  Real sum = x * (pow_ui(x, k, prec) - one) / (x - one);
  Real inner = one + one / sum;
  return ln(inner, prec) / ln(x, prec);
}

Real critical_eps_u64(uint64_t p, unsigned k, const Precision& prec) {
  if (p < 2) throw std::domain_error("critical_eps_u64: requires p >= 2");
  if (k < 1) throw std::invalid_argument("critical_eps_u64: k must be >= 1");
  mpz_class sum = geometric_sum(p, k);
  Real s = Real::of_mpz(sum.get_mpz_t(), prec);
  Real one = Real::of_u64(1, prec);
  return ln(one + one / s, prec) / ln(Real::of_u64(p, prec), prec);
}

Real breakpoint_x(const Real& eps, unsigned k, const Precision& prec) {
  if (!eps.certainly_positive())
    throw std::domain_error("breakpoint_x: eps must be positive");
  Real one = Real::of_u64(1, prec);
  Real two = Real::of_u64(2, prec);

  // Lower bracket end: walk toward 1 until the curve exceeds eps.
  Real lo = one + one / Real::of_u64(1024, prec);
  int guard = 0;
  while (cmp_values(critical_eps(lo, k, prec), eps) != Verdict::Greater) {
    lo = one + (lo - one) / Real::of_u64(16, prec);
    if (++guard > 64)
      throw NoBracketError("breakpoint_x: cannot bracket below");
  }
  // Upper end: expand geometrically until the curve drops under eps.
  Real hi = two;
  guard = 0;
  while (cmp_values(critical_eps(hi, k, prec), eps) != Verdict::Less) {
    hi = hi * two;
    if (++guard > 128)
      throw NoBracketError("breakpoint_x: cannot bracket above");
  }

  // Bisection to relative width 10^-(digits-10).
  Real tol = Real::of_u64(1, prec);
  for (int i = 0; i < prec.digits - 10; ++i)
    tol = tol / Real::of_u64(10, prec);
  for (int it = 0; it < 4 * prec.digits + 64; ++it) {
    Real width = hi - lo;
    if (cmp_values(width, tol * lo) == Verdict::Less) break;
    Real mid = (lo + hi) / two;
    if (cmp_values(critical_eps(mid, k, prec), eps) == Verdict::Greater)
      lo = mid;
    else
      hi = mid;
  }
  Real mid = (lo + hi) / two;
  return mid.with_extra_err(hi - lo);
}

CAParams ca_params(const Real& eps, const Precision& prec) {
  CAParams params{eps, {}};
  for (unsigned k = 1;; ++k) {
    Real xk = breakpoint_x(eps, k, prec);
    if (mpfr_cmp_ui(xk.value(), 2) < 0) break;
    params.x.push_back(xk);
    if (k > 10'000) throw CapacityError("ca_params: breakpoint list too long");
  }
  return params;
}

uint32_t prime_exponent(uint64_t p, const Real& eps, const Precision& prec) {
  if (!eps.certainly_positive())
    throw std::domain_error("prime_exponent: eps must be positive");
  Precision cur = prec;
  for (;;) {
    Real rp = Real::of_u64(p, cur);
    Real one = Real::of_u64(1, cur);
    Real lp = ln(rp, cur);
    Real e = eps;  // evaluated value is precision-independent input
    Real num = exp((one + e) * lp, cur) - one;  // p^(1+eps) - 1
    Real den = exp(e * lp, cur) - one;          // p^eps - 1
    Real y = ln(num / den, cur) / lp;
    if (auto fl = floor_certain(y)) {
      if (*fl < 1)
        throw std::domain_error("prime_exponent: formula below 1");
      return static_cast<uint32_t>(*fl - 1);
    }
    if (cur.at_ceiling())
      throw TieError("prime_exponent: floor boundary within error at p=" +
                     std::to_string(p));
    cur = cur.escalated();
  }
}

FactoredNumber n_epsilon(const Real& eps, const Precision& prec) {
  Real x1 = breakpoint_x(eps, 1, prec);
  mpfr_t hi;
  mpfr_init2(hi, mpfr_get_prec(x1.value()));
  mpfr_add(hi, x1.value(), x1.err(), MPFR_RNDU);
  if (mpfr_cmp_ui(hi, kLargestChainPrime) > 0) {
    mpfr_clear(hi);
    throw CapacityError("n_epsilon: x_1 exceeds the supported prime range");
  }
  uint64_t x1_ceiling = mpfr_get_uj(hi, MPFR_RNDU);
  mpfr_clear(hi);

  std::vector<PrimePower> factors;
  for_primes(2, x1_ceiling + 1, [&](uint64_t p) {
    uint32_t a = prime_exponent(p, eps, prec);
    if (a > 0) factors.push_back({p, a});
  });
  return FactoredNumber::from_factors(std::move(factors));
}

namespace {

struct Move {
  double eps;
  uint64_t p;
  uint32_t k;  // exponent the move raises p to
};

struct MoveWorse {
  bool operator()(const Move& a, const Move& b) const {
    if (a.eps != b.eps) return a.eps < b.eps;
    return a.p > b.p;  // equal keys: smaller prime first
  }
};

// Shared chain driver: applies greedy moves, maintains aggregates, calls
// the visitor after each move.
class ChainDriver {
 public:
  explicit ChainDriver(const Precision& prec)
      : prec_(prec),
        log_n_(prec),
        rho_n_(Real::of_u64(1, prec)),
        mertens_prod_(Real::of_u64(1, prec)) {
    queue_.push({critical_eps_d(2, 1), 2, 1});
    next_new_prime_ = 3;
  }

  // Applies one move; returns the visitor-facing step description.
  ChainStep step() {
    Move mv = pop_best();
    bool tie = tie_flag_;
    apply(mv);
    ++index_;
    return ChainStep{index_,          mv.p,
                     mv.k,            mv.eps,
                     primes_,         exponents_,
                     log_n_,          rho_n_,
                     mertens_prod_,   tie};
  }

  Real exact_eps(const Move& mv) const {
    return critical_eps_u64(mv.p, mv.k, prec_);
  }

 private:
  Move pop_best() {
    Move top = queue_.top();
    queue_.pop();
    tie_flag_ = false;
    if (!queue_.empty()) {
      Move runner = queue_.top();
      if (std::abs(top.eps - runner.eps) <=
          1e-11 * std::max(top.eps, runner.eps)) {
        // Too close for the double keys; separate exactly.
        Verdict v = cmp_values(exact_eps(top), exact_eps(runner));
        if (v == Verdict::Less) {
          queue_.pop();
          queue_.push(top);
          top = runner;
        } else if (v == Verdict::Undecided) {
          tie_flag_ = true;
          if (runner.p < top.p) {
            queue_.pop();
            queue_.push(top);
            top = runner;
          }
        }
      }
    }
    return top;
  }

  void apply(const Move& mv) {
    if (mv.k == 1) {
      // new prime enters; primes arrive in ascending order
      primes_.push_back(mv.p);
      exponents_.push_back(1);
      Real rp = Real::of_u64(mv.p, prec_);
      Real rp1 = Real::of_u64(mv.p - 1, prec_);
      mertens_prod_ = mertens_prod_ * (rp / rp1);
      rho_n_ = rho_n_ * (Real::of_u64(mv.p + 1, prec_) / rp);
      if (next_new_prime_ > kLargestChainPrime)
        throw CapacityError("ca_chain: prime range exhausted");
      queue_.push({critical_eps_d(next_new_prime_, 1), next_new_prime_, 1});
      next_new_prime_ = next_prime(next_new_prime_);
    } else {
      auto it = std::lower_bound(primes_.begin(), primes_.end(), mv.p);
      std::size_t i = static_cast<std::size_t>(it - primes_.begin());
      exponents_[i] = mv.k;
      // rho factor ratio: (p^(k+1) - 1) / (p (p^k - 1))
      mpz_class pz(static_cast<unsigned long>(mv.p)), num, den;
      mpz_pow_ui(num.get_mpz_t(), pz.get_mpz_t(), mv.k + 1);
      num -= 1;
      mpz_pow_ui(den.get_mpz_t(), pz.get_mpz_t(), mv.k);
      den -= 1;
      den *= pz;
      rho_n_ = rho_n_ * (Real::of_mpz(num.get_mpz_t(), prec_) /
                         Real::of_mpz(den.get_mpz_t(), prec_));
    }
    log_n_ = log_n_ + ln(Real::of_u64(mv.p, prec_), prec_);
    queue_.push({critical_eps_d(mv.p, mv.k + 1), mv.p, mv.k + 1});
  }

  Precision prec_;
  std::priority_queue<Move, std::vector<Move>, MoveWorse> queue_;
  uint64_t next_new_prime_;
  uint64_t index_ = 0;
  bool tie_flag_ = false;
  std::vector<uint64_t> primes_;
  std::vector<uint32_t> exponents_;
  Real log_n_;
  Real rho_n_;
  Real mertens_prod_;
};

}  // namespace

void ca_chain_walk(const std::function<bool(const ChainStep&)>& visit,
                   const Precision& prec) {
  ChainDriver driver(prec);
  for (;;) {
    ChainStep s = driver.step();
    if (!visit(s)) return;
  }
}

std::vector<ChainEntry> ca_chain(std::size_t steps, const Precision& prec) {
  if (steps < 1) throw std::invalid_argument("ca_chain: steps must be >= 1");
  std::vector<ChainEntry> entries;
  entries.reserve(steps);
  FactoredNumber cur;
  ca_chain_walk(
      [&](const ChainStep& s) {
        cur = cur.mul_prime(s.added_prime);
        ChainEntry e;
        e.index = s.index;
        e.n = cur;
        e.added_prime = s.added_prime;
        e.new_exponent = s.new_exponent;
        e.critical_eps = critical_eps_u64(s.added_prime, s.new_exponent, prec);
        e.tie = s.tie;
        entries.push_back(std::move(e));
        return entries.size() < steps;
      },
      prec);
  return entries;
}

Thm4Report thm4_check(const Real& eps, unsigned kmax, const Precision& prec,
                      bool exploratory) {
  if (kmax < 2) throw std::invalid_argument("thm4_check: kmax must be >= 2");
  Thm4Report report;
  report.eps = eps;
  report.x1 = breakpoint_x(eps, 1, prec);

  auto fl = floor_certain(report.x1);
  if (!fl || *fl < 2)
    throw std::domain_error("thm4_check: x_1 not resolvable to an integer floor");
  report.p = prev_prime(static_cast<uint64_t>(*fl) + 1);
  if (report.p < 3299 && !exploratory)
    throw std::domain_error(
        "thm4_check: bound requires p >= 3299 (use exploratory mode below)");

  Real one = Real::of_u64(1, prec);
  report.all_positive = true;
  report.cns_all_positive = true;
  for (unsigned k = 2; k <= kmax; ++k) {
    Thm4Row row;
    row.k = k;
    row.xk = breakpoint_x(eps, k, prec);
    Real inv_k = one / Real::of_u64(k, prec);
    row.bound = pow(Real::of_u64(k * report.p, prec), inv_k, prec);
    row.cns_bound = pow(Real::of_u64(k, prec) * report.x1, inv_k, prec);
    row.margin = row.bound - row.xk;
    row.vacuous = mpfr_cmp_ui(row.xk.value(), 2) < 0;
    if (!row.margin.certainly_positive()) report.all_positive = false;
    if (!(row.cns_bound - row.xk).certainly_positive())
      report.cns_all_positive = false;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace robinlab
