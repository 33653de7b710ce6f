#include "robinlab/theorems.hpp"

#include <algorithm>
#include <cmath>

#include "robinlab/primes.hpp"
#include "robinlab/robin.hpp"
#include "robinlab/ca.hpp"

namespace robinlab {
namespace {

using u128 = unsigned __int128;

bool n_below_3(const FactoredNumber& n) {
  return n.is_one() ||
         (n.factors().size() == 1 && n.factors()[0] == PrimePower{2, 1});
}

Real c_00995(const Precision& prec) {
  return Real::of_u64(995, prec) / Real::of_u64(100'000, prec);
}
Real c_005587(const Precision& prec) {
  return Real::of_u64(5587, prec) / Real::of_u64(1'000'000, prec);
}
Real c_005589(const Precision& prec) {
  return Real::of_u64(5589, prec) / Real::of_u64(1'000'000, prec);
}

// 10^-(digits-5), the relative series cutoff.
Real series_cutoff(const Precision& prec) {
  return Real::of_u64(1, prec) /
         pow_ui(Real::of_u64(10, prec), prec.digits - 5, prec);
}

// 1 + sum_{k>=1} q^k/(k+1) with the geometric tail folded into err.
Real series_factor_plus(const Real& q, const Precision& prec) {
  Real one = Real::of_u64(1, prec);
  Real cutoff = series_cutoff(prec);
  Real sum = one;
  Real qk = q;
  for (unsigned k = 1;; ++k) {
    sum = sum + qk / Real::of_u64(k + 1, prec);
    qk = qk * q;
    Real next = qk / Real::of_u64(k + 2, prec);
    if (cmp_values(next, cutoff * sum) == Verdict::Less) {
      // tail: sum_{j>k} q^j/(j+1) <= q^(k+1)/((k+2)(1-q))
      Real tail = next / (one - q);
      return sum.with_extra_err(tail);
    }
    if (k > 200'000)
      throw std::runtime_error("series_factor_plus: no convergence");
  }
}

// 1 + sum_{k>=1} (-1)^k q^k/(k+1); alternating, tail bounded by the first
// omitted term.
Real series_factor_alt(const Real& q, const Precision& prec) {
  Real one = Real::of_u64(1, prec);
  Real cutoff = series_cutoff(prec);
  Real sum = one;
  Real qk = q;
  int sign = -1;
  for (unsigned k = 1;; ++k) {
    Real term = qk / Real::of_u64(k + 1, prec);
    sum = sign > 0 ? sum + term : sum - term;
    sign = -sign;
    qk = qk * q;
    Real next = qk / Real::of_u64(k + 2, prec);
    if (cmp_values(next, cutoff * sum) == Verdict::Less)
      return sum.with_extra_err(next);
    if (k > 200'000)
      throw std::runtime_error("series_factor_alt: no convergence");
  }
}

Real loglog_from_log(const Real& log_n, const Precision& prec) {
  return ln(log_n, prec);
}

}  // namespace

const char* to_string(AuditVerdict v) {
  switch (v) {
    case AuditVerdict::Holds: return "HOLDS";
    case AuditVerdict::Fails: return "FAILS";
    case AuditVerdict::NotApplicable: return "NOT_APPLICABLE";
    case AuditVerdict::Undecided: return "UNDECIDED";
  }
  return "?";
}

MoveGap move_gap(uint64_t p, const Real& log_n, const Precision& prec) {
  MoveGap g;
  g.p = p;
  g.log_n = log_n;
  Real rp = Real::of_u64(p, prec);
  Real half_lp = ln(rp, prec) / Real::of_u64(2, prec);
  g.d_minus = log_n - rp - half_lp;
  g.d_plus = log_n - rp + half_lp;
  return g;
}

uint32_t L_bound(uint64_t p_i, uint64_t p_r) {
  if (p_i > p_r) throw std::domain_error("L_bound: requires p_i <= p_r");
  u128 pw = p_i;
  uint32_t m = 1;
  while (pw <= static_cast<u128>(p_r) / p_i) {
    pw *= p_i;
    ++m;
  }
  // pw = p_i^m <= p_r < p_i^(m+1)
  return m;
}

uint32_t U_bound(uint64_t p_i, uint64_t p_r) {
  if (p_i > p_r) throw std::domain_error("U_bound: requires p_i <= p_r");
  // Find k with p_i^k <= k p_r and p_i^(k+1) > (k+1) p_r; the bracket
  // bounds (k p_r)^(1/k) decrease in k, so scan upward.
  uint64_t k = 1;
  u128 pw = p_i;  // p_i^k
  for (;;) {
    bool next_pw_overflows = pw > (~u128{0}) / p_i;
    u128 next_pw = next_pw_overflows ? ~u128{0} : pw * p_i;
    if (next_pw_overflows ||
        next_pw > static_cast<u128>(k + 1) * p_r)
      break;
    pw = next_pw;
    ++k;
  }
  // U = largest m with p_i^m <= k p_r
  u128 cap = static_cast<u128>(k) * p_r;
  u128 q = p_i;
  uint32_t m = 1;
  while (q <= cap / p_i) {
    q *= p_i;
    ++m;
  }
  return m;
}

TheoremReport check_exponents(const FactoredNumber& n) {
  TheoremReport report;
  report.id = "exponent_curves";
  if (n_below_3(n)) {
    report.verdict = AuditVerdict::NotApplicable;
    report.notes = "requires n >= 3";
    return report;
  }
  uint64_t p_r = n.largest_prime();
  int64_t min_slack = std::numeric_limits<int64_t>::max();
  std::string first_violation;
  for (const auto& [p, a] : n.factors()) {
    int64_t lo = L_bound(p, p_r);
    int64_t hi = U_bound(p, p_r);
    int64_t slack = std::min<int64_t>(a - lo, hi - a);
    if (slack < min_slack) min_slack = slack;
    if (slack < 0 && first_violation.empty())
      first_violation = "p=" + std::to_string(p) + " a=" + std::to_string(a) +
                        " L=" + std::to_string(lo) + " U=" + std::to_string(hi);
  }
  report.verdict =
      min_slack >= 0 ? AuditVerdict::Holds : AuditVerdict::Fails;
  report.margin = Real::of_i64(min_slack, Precision{});
  report.notes = first_violation;
  return report;
}

Real ratio_div(const FactoredNumber& n, uint64_t p, const Precision& prec) {
  if (n.exponent_of(p) != 1)
    throw std::domain_error("ratio_div: p must divide n with exponent 1");
  FactoredNumber m = n.div_prime(p);
  return G(n, prec) / G(m, prec);
}

Real ratio_mul(const FactoredNumber& n, uint64_t p, const Precision& prec) {
  if (n.exponent_of(p) != 0)
    throw std::domain_error("ratio_mul: p must not divide n");
  FactoredNumber m = n.mul_prime(p);
  return G(n, prec) / G(m, prec);
}

namespace {

// One evaluation of the lemma-1 comparison at a fixed precision:
// (p+1) log p (1 + sum) vs log N log log N. Less means G(N) > G(N/p).
Verdict lemma1_eval(const FactoredNumber& n, uint64_t p,
                    const Precision& prec) {
  Real log_n = log_value(n, prec);
  Real lp = ln(Real::of_u64(p, prec), prec);
  Real q = lp / log_n;
  Real one = Real::of_u64(1, prec);
  if (cmp_values(q, one) != Verdict::Less)
    throw std::domain_error("lemma1: requires log p < log N");
  if (cmp_values(log_n - lp, one) != Verdict::Greater)
    throw std::domain_error("lemma1: requires log log(N/p) > 0");
  Real lhs = Real::of_u64(p + 1, prec) * lp * series_factor_plus(q, prec);
  Real rhs = log_n * loglog_from_log(log_n, prec);
  return cmp_values(lhs, rhs);
}

Verdict lemma2_eval(const FactoredNumber& n, uint64_t p,
                    const Precision& prec) {
  Real log_n = log_value(n, prec);
  Real lp = ln(Real::of_u64(p, prec), prec);
  Real one = Real::of_u64(1, prec);
  if (cmp_values(lp, log_n) != Verdict::Less)
    throw std::domain_error("lemma2: requires p < N");
  if (cmp_values(log_n, one) != Verdict::Greater)
    throw std::domain_error("lemma2: requires log log N > 0");
  Real q = lp / log_n;
  Real lhs = Real::of_u64(p, prec) * lp * series_factor_alt(q, prec);
  Real rhs = log_n * loglog_from_log(log_n, prec);
  return cmp_values(lhs, rhs);
}

}  // namespace

Verdict lemma1_verdict(const FactoredNumber& n, uint64_t p,
                       const Precision& prec) {
  if (n.exponent_of(p) != 1)
    throw std::domain_error("lemma1: p must divide n with exponent 1");
  if (n_below_3(n)) throw std::domain_error("lemma1: requires n >= 3");
  Precision cur = prec;
  for (;;) {
    Verdict v = lemma1_eval(n, p, cur);
    // condition lhs < rhs is equivalent to G(N) > G(N/p)
    if (v == Verdict::Less) return Verdict::Greater;
    if (v == Verdict::Greater) return Verdict::Less;
    if (cur.at_ceiling()) return Verdict::Undecided;
    cur = cur.escalated();
  }
}

Verdict lemma2_verdict(const FactoredNumber& n, uint64_t p,
                       const Precision& prec) {
  if (n.exponent_of(p) != 0)
    throw std::domain_error("lemma2: p must not divide n");
  if (n_below_3(n)) throw std::domain_error("lemma2: requires n >= 3");
  Precision cur = prec;
  for (;;) {
    Verdict v = lemma2_eval(n, p, cur);
    // condition lhs > rhs is equivalent to G(N) > G(Np)
    if (v == Verdict::Greater) return Verdict::Greater;
    if (v == Verdict::Less) return Verdict::Less;
    if (cur.at_ceiling()) return Verdict::Undecided;
    cur = cur.escalated();
  }
}

bool lemma1_holds(const FactoredNumber& n, uint64_t p, const Precision& prec) {
  Verdict v = lemma1_verdict(n, p, prec);
  if (v == Verdict::Undecided)
    throw UndecidedError("lemma1: margin inside error at precision ceiling");
  return v == Verdict::Greater;
}

bool lemma2_holds(const FactoredNumber& n, uint64_t p, const Precision& prec) {
  Verdict v = lemma2_verdict(n, p, prec);
  if (v == Verdict::Undecided)
    throw UndecidedError("lemma2: margin inside error at precision ceiling");
  return v == Verdict::Greater;
}

Real thm6_lower(uint64_t p, const Precision& prec) {
  Real rp = Real::of_u64(p, prec);
  Real lp = ln(rp, prec);
  Real half = Real::of_u64(1, prec) / Real::of_u64(2, prec);
  return rp + half * lp + half - half / lp;
}

Real thm7_upper(uint64_t p, const Precision& prec) {
  Real rp = Real::of_u64(p, prec);
  Real lp = ln(rp, prec);
  Real one = Real::of_u64(1, prec);
  Real half = one / Real::of_u64(2, prec);
  return rp - half * lp + half - half / lp + one / (lp * (lp + one));
}

Real thm10_lower(uint64_t p, const Precision& prec) {
  Real rp = Real::of_u64(p, prec);
  Real lp = ln(rp, prec);
  Real one = Real::of_u64(1, prec);
  Real half = one / Real::of_u64(2, prec);
  return rp + half * lp + half - half / lp + one / (lp * (lp + one));
}

Real thm11_upper(uint64_t p, const Precision& prec) {
  Real rp = Real::of_u64(p, prec);
  Real lp = ln(rp, prec);
  Real one = Real::of_u64(1, prec);
  Real half = one / Real::of_u64(2, prec);
  return rp - half * lp + half - one / (lp + one);
}

Real mertens_partial_product(uint64_t p, const Precision& prec) {
  Real prod = Real::of_u64(1, prec);
  for_primes(2, p, [&](uint64_t q) {
    prod = prod * (Real::of_u64(q, prec) / Real::of_u64(q - 1, prec));
  });
  return prod;
}

TheoremReport thm8_bound(const FactoredNumber& n, const Precision& prec) {
  TheoremReport report;
  report.id = "thm8_g_bound";
  if (n_below_3(n)) {
    report.verdict = AuditVerdict::NotApplicable;
    report.notes = "requires n >= 3";
    return report;
  }
  Computation lhs = [&n](const Precision& p) { return G(n, p); };
  Computation rhs = [&n](const Precision& p) {
    Real ll = loglog_from_log(log_value(n, p), p);
    return exp_gamma(p) + c_00995(p) / (ll * ll);
  };
  Verdict v = cmp_adaptive(lhs, rhs, prec);
  switch (v) {
    case Verdict::Less: report.verdict = AuditVerdict::Holds; break;
    case Verdict::Greater: report.verdict = AuditVerdict::Fails; break;
    case Verdict::Undecided: report.verdict = AuditVerdict::Undecided; break;
  }
  report.margin = rhs(prec) - lhs(prec);
  report.notes = "empirical probe; stated hypothesis N > 10^(10^13) unmet";
  return report;
}

Thm9Result thm9_check(const FactoredNumber& n, const Precision& prec) {
  if (n_below_3(n)) throw std::domain_error("thm9_check: requires n >= 3");
  Thm9Result res;
  uint64_t p_r = n.largest_prime();
  Real rp = Real::of_u64(p_r, prec);
  Real log_n = log_value(n, prec);
  Real ll = loglog_from_log(log_n, prec);
  Real lp = ln(rp, prec);
  Real one = Real::of_u64(1, prec);

  Real rhs91 = log_n * (one - c_005587(prec) / ll);
  res.r91.id = "thm9_1_pr_lower";
  res.r91.verdict = AuditVerdict::NotApplicable;
  res.r91.margin = rp - rhs91;
  res.r91.notes = std::string("empirical probe (hypothesis unmet): p_r > ") +
                  "log N (1 - 0.005587/loglog N) " +
                  (res.r91.margin->certainly_positive() ? "held" : "failed");

  Real rhs92m = rp * (one - c_005589(prec) / lp);
  res.r92_minus.id = "thm9_2_minus";
  res.r92_minus.verdict = AuditVerdict::NotApplicable;
  res.r92_minus.margin = rhs92m - log_n;
  res.r92_minus.notes =
      std::string("sign variant as stated; margin ") +
      (res.r92_minus.margin->certainly_positive() ? "positive" : "negative");

  Real rhs92p = rp * (one + c_005589(prec) / lp);
  res.r92_plus.id = "thm9_2_plus";
  res.r92_plus.verdict = AuditVerdict::NotApplicable;
  res.r92_plus.margin = rhs92p - log_n;
  res.r92_plus.notes =
      std::string("sign variant used by the overview list; margin ") +
      (res.r92_plus.margin->certainly_positive() ? "positive" : "negative");
  return res;
}

TheoremReport thm5_constant_c(const Precision& prec) {
  TheoremReport report;
  report.id = "thm5_constant_c";
  Real one = Real::of_u64(1, prec);
  Real base = Real::of_u64(23'000'000'000'000ull, prec);  // 2.3e13
  Real lb = ln(base, prec);
  Real expr = one - one / (Real::of_u64(2, prec) * lb * lb);
  Real quoted = Real::of_u64(1'000'528, prec) / Real::of_u64(1'000'000, prec);
  Real recip = one / expr;
  report.margin = expr - quoted;
  bool matches_direct = !(expr - quoted).certainly_positive() &&
                        !(expr - quoted).certainly_negative();
  Real recip_gap = recip - quoted;
  bool matches_recip =
      std::abs(recip_gap.to_double()) < 1e-6;
  report.verdict = matches_direct ? AuditVerdict::Holds : AuditVerdict::Fails;
  report.notes = "expression value " + expr.to_string(10) +
                 " vs quoted 1.000528; reciprocal " + recip.to_string(10) +
                 (matches_recip ? " matches the quoted decimal" : "");
  return report;
}

bool AuditResult::any_implication_failure() const {
  return std::any_of(reports.begin(), reports.end(), [](const auto& r) {
    return r.implication && r.verdict == AuditVerdict::Fails;
  });
}

namespace {

AuditVerdict from_cmp(Verdict v) {
  switch (v) {
    case Verdict::Less: return AuditVerdict::Fails;
    case Verdict::Greater: return AuditVerdict::Holds;
    default: return AuditVerdict::Undecided;
  }
}

}  // namespace

AuditResult audit(const FactoredNumber& n, const Precision& prec) {
  if (n_below_3(n)) throw std::domain_error("audit: requires n >= 3");
  AuditResult out;
  uint64_t p_r = n.largest_prime();
  Real log_n = log_value(n, prec);
  Real ll = loglog_from_log(log_n, prec);
  Real rp = Real::of_u64(p_r, prec);
  out.gap = move_gap(p_r, log_n, prec);

  {  // p_r < log N
    TheoremReport r;
    r.id = "thm2_pr_below_logN";
    r.margin = log_n - rp;
    r.verdict = from_cmp(cmp_values(log_n, rp));
    out.reports.push_back(std::move(r));
  }

  std::optional<uint64_t> below;  // largest prime < log N
  {
    TheoremReport r;
    r.id = "thm3_pr_largest_below_logN";
    auto fl = floor_certain(log_n);
    if (!fl || *fl < 2) {
      r.verdict = AuditVerdict::NotApplicable;
      r.notes = "no prime below log N";
    } else {
      below = prev_prime(static_cast<uint64_t>(*fl) + 1);
      r.verdict =
          *below == p_r ? AuditVerdict::Holds : AuditVerdict::Fails;
      r.notes = "largest prime below log N is " + std::to_string(*below);
      r.margin = log_n - rp;
    }
    out.reports.push_back(std::move(r));
  }

  out.reports.push_back(check_exponents(n));

  const bool pr_is_neighbor = below && *below == p_r;
  const bool pr_exp1 = n.exponent_of(p_r) == 1;
  const bool n_gt_5040 = [&] {
    auto v = n.value_u128();
    return !v || *v > 5040;
  }();

  {  // Theorem 6 contrapositive: G(N) > G(N/p_r) forces log N > lower bound.
    TheoremReport r;
    r.id = "thm6_contrapositive";
    r.implication = true;
    if (!pr_is_neighbor || !pr_exp1) {
      r.verdict = AuditVerdict::NotApplicable;
      r.notes = "side conditions unmet (p_r neighbor/exponent)";
    } else {
      Real lower = thm6_lower(p_r, prec);
      r.margin = log_n - lower;
      Verdict move = cmp_adaptive(
          [&](const Precision& pp) { return G(n, pp); },
          [&](const Precision& pp) { return G(n.div_prime(p_r), pp); }, prec);
      if (move != Verdict::Greater) {
        r.verdict = AuditVerdict::NotApplicable;
        r.notes = "premise G(N) > G(N/p_r) does not hold";
      } else {
        r.verdict = from_cmp(cmp_values(log_n, lower));
        if (p_r < 89693)
          r.notes = "probe only: bound stated for p >= 89693";
      }
    }
    out.reports.push_back(std::move(r));
  }

  uint64_t p_above = 0;
  if (auto fl = floor_certain(log_n)) {
    p_above = next_prime(static_cast<uint64_t>(std::max<int64_t>(*fl, 1)));
  }

  {  // Theorem 7 contrapositive: G(N) > G(Np) forces log N < upper bound.
    TheoremReport r;
    r.id = "thm7_contrapositive";
    r.implication = true;
    if (p_above == 0 || n.exponent_of(p_above) != 0 || !n_gt_5040) {
      r.verdict = AuditVerdict::NotApplicable;
      r.notes = p_above == 0 ? "log N floor unresolved"
                             : (!n_gt_5040 ? "requires N > 5040"
                                           : "p above log N divides N");
    } else {
      Real upper = thm7_upper(p_above, prec);
      r.margin = upper - log_n;
      Verdict move = cmp_adaptive(
          [&](const Precision& pp) { return G(n, pp); },
          [&](const Precision& pp) { return G(n.mul_prime(p_above), pp); },
          prec);
      if (move != Verdict::Greater) {
        r.verdict = AuditVerdict::NotApplicable;
        r.notes = "premise G(N) > G(Np) does not hold";
      } else {
        r.verdict = from_cmp(cmp_values(upper, log_n));
      }
    }
    out.reports.push_back(std::move(r));
  }

  {  // Theorem 10 implication: log N > lower bound forces G(N) > G(N/p_r).
    TheoremReport r;
    r.id = "thm10_implication";
    r.implication = true;
    if (!pr_is_neighbor || !pr_exp1) {
      r.verdict = AuditVerdict::NotApplicable;
      r.notes = "side conditions unmet (p_r neighbor/exponent)";
    } else if (p_r < 89693) {
      r.verdict = AuditVerdict::NotApplicable;
      r.notes = "bound stated for p >= 89693";
      r.margin = log_n - thm10_lower(p_r, prec);
    } else {
      Real lower = thm10_lower(p_r, prec);
      r.margin = log_n - lower;
      if (cmp_values(log_n, lower) != Verdict::Greater) {
        r.verdict = AuditVerdict::NotApplicable;
        r.notes = "premise log N > bound does not hold";
      } else {
        Verdict move = cmp_adaptive(
            [&](const Precision& pp) { return G(n, pp); },
            [&](const Precision& pp) { return G(n.div_prime(p_r), pp); },
            prec);
        r.verdict = from_cmp(move);
      }
    }
    out.reports.push_back(std::move(r));
  }

  {  // Theorem 11 implication: log N < upper bound forces G(N) > G(Np).
    TheoremReport r;
    r.id = "thm11_implication";
    r.implication = true;
    if (p_above == 0 || n.exponent_of(p_above) != 0 || !n_gt_5040) {
      r.verdict = AuditVerdict::NotApplicable;
      r.notes = p_above == 0 ? "log N floor unresolved"
                             : (!n_gt_5040 ? "requires N > 5040"
                                           : "p above log N divides N");
    } else {
      Real upper = thm11_upper(p_above, prec);
      r.margin = upper - log_n;
      if (cmp_values(log_n, upper) != Verdict::Less) {
        r.verdict = AuditVerdict::NotApplicable;
        r.notes = "premise log N < bound does not hold";
      } else {
        Verdict move = cmp_adaptive(
            [&](const Precision& pp) { return G(n, pp); },
            [&](const Precision& pp) { return G(n.mul_prime(p_above), pp); },
            prec);
        r.verdict = from_cmp(move);
      }
    }
    out.reports.push_back(std::move(r));
  }

  out.reports.push_back(thm8_bound(n, prec));

  {  // intermediate bound: rho(N) < prod_{p <= p_r} p/(p-1)
    TheoremReport r;
    r.id = "thm8_intermediate";
    Real prod = mertens_partial_product(p_r, prec);
    Real rho_n = rho(n, prec);
    r.margin = prod - rho_n;
    r.verdict = from_cmp(cmp_values(prod, rho_n));
    out.reports.push_back(std::move(r));
  }

  Thm9Result t9 = thm9_check(n, prec);
  out.reports.push_back(std::move(t9.r91));
  out.reports.push_back(std::move(t9.r92_minus));
  out.reports.push_back(std::move(t9.r92_plus));
  out.reports.push_back(thm5_constant_c(prec));
  return out;
}

OrderingSweepResult threshold_ordering_sweep(uint64_t lo, uint64_t hi,
                                             std::size_t count,
                                             const Precision& prec) {
  if (lo < 3 || hi <= lo)
    throw std::invalid_argument("threshold_ordering_sweep: bad range");
  OrderingSweepResult out;
  double ratio = std::log(static_cast<double>(hi) / static_cast<double>(lo)) /
                 static_cast<double>(count > 1 ? count - 1 : 1);
  uint64_t last_p = 0;
  for (std::size_t i = 0; i < count; ++i) {
    double target = static_cast<double>(lo) * std::exp(ratio * i);
    uint64_t t = static_cast<uint64_t>(target);
    uint64_t p = next_prime(std::max<uint64_t>(t, 2));
    if (p == last_p) continue;
    last_p = p;
    ++out.checked;
    Real t6 = thm6_lower(p, prec);
    Real t7 = thm7_upper(p, prec);
    Real t10 = thm10_lower(p, prec);
    Real t11 = thm11_upper(p, prec);
    Real rp = Real::of_u64(p, prec);
    bool ok = cmp_values(t6, t10) == Verdict::Less &&
              cmp_values(t11, t7) == Verdict::Less &&
              cmp_values(t7, rp) == Verdict::Less &&
              cmp_values(rp, t6) == Verdict::Less;
    if (!ok) ++out.failures;
  }
  return out;
}

ChainSweepSummary chain_implication_sweep(uint64_t pr_stop,
                                          const Precision& prec) {
  ChainSweepSummary sum;
  Real eg = exp_gamma(prec);
  Real c8 = c_00995(prec);
  Real fifty = Real::of_u64(50, prec);

  ca_chain_walk(
      [&](const ChainStep& s) {
        ++sum.entries;
        uint64_t p_r = s.primes.back();

        // rho(N) < prod_{p <= p_r} p/(p-1), every entry
        if (cmp_values(s.rho_n, s.mertens_prod) == Verdict::Less)
          ++sum.rho_below_product;
        else
          ++sum.rho_product_failures;

        if (s.exponents.back() != 1) ++sum.exponent_lower_failures;

        if (cmp_values(s.log_n, fifty) == Verdict::Greater) {
          ++sum.thm8_probe_entries;
          Real ll = ln(s.log_n, prec);
          Real g = s.rho_n / ll;
          Real bound = eg + c8 / (ll * ll);
          if (cmp_values(g, bound) != Verdict::Less)
            ++sum.thm8_probe_failures;
        }

        if (p_r >= 89693) {
          ++sum.entries_tested;
          auto fl = floor_certain(s.log_n);
          if (!fl) {
            ++sum.thm10_undecided;
            ++sum.thm11_undecided;
          } else {
            Real ll = ln(s.log_n, prec);
            uint64_t below = prev_prime(static_cast<uint64_t>(*fl) + 1);
            if (below == p_r && s.exponents.back() == 1) {
              Verdict premise =
                  cmp_values(s.log_n, thm10_lower(p_r, prec));
              if (premise == Verdict::Greater) {
                ++sum.thm10_applicable;
                Real rpp = Real::of_u64(p_r, prec);
                Real lp = ln(rpp, prec);
                Real ll_div = ln(s.log_n - lp, prec);
                // G(N) > G(N/p_r)  <=>  (p_r+1) ll(N/p_r) > p_r ll(N)
                Verdict concl = cmp_values(
                    Real::of_u64(p_r + 1, prec) * ll_div, rpp * ll);
                if (concl == Verdict::Greater)
                  ++sum.thm10_holds;
                else if (concl == Verdict::Less)
                  ++sum.thm10_fails;
                else
                  ++sum.thm10_undecided;
              } else if (premise == Verdict::Undecided) {
                ++sum.thm10_undecided;
              }
            }
            uint64_t above = next_prime(static_cast<uint64_t>(*fl));
            if (above > p_r) {  // p does not divide N
              Verdict premise =
                  cmp_values(s.log_n, thm11_upper(above, prec));
              if (premise == Verdict::Less) {
                ++sum.thm11_applicable;
                Real rpp = Real::of_u64(above, prec);
                Real lp = ln(rpp, prec);
                Real ll_mul = ln(s.log_n + lp, prec);
                // G(N) > G(Np)  <=>  p ll(Np) > (p+1) ll(N)
                Verdict concl = cmp_values(
                    rpp * ll_mul, Real::of_u64(above + 1, prec) * ll);
                if (concl == Verdict::Greater)
                  ++sum.thm11_holds;
                else if (concl == Verdict::Less)
                  ++sum.thm11_fails;
                else
                  ++sum.thm11_undecided;
              } else if (premise == Verdict::Undecided) {
                ++sum.thm11_undecided;
              }
            }
          }
        }
        return p_r <= pr_stop;
      },
      prec);
  return sum;
}

}  // namespace robinlab
