#pragma once

#include <string>
#include <vector>

#include "robinlab/factored.hpp"
#include "robinlab/numerics.hpp"

namespace robinlab {

enum class AuditVerdict { Holds, Fails, NotApplicable, Undecided };
const char* to_string(AuditVerdict v);

struct TheoremReport {
  std::string id;
  AuditVerdict verdict = AuditVerdict::NotApplicable;
  std::optional<Real> margin;
  std::string notes;
  // True for the implication-style checks whose failures make the audit
  // exit nonzero; empirical probes never do.
  bool implication = false;
};

// Decomposition log N = p + 1/2 log p + d_minus = p - 1/2 log p + d_plus.
struct MoveGap {
  uint64_t p = 0;
  Real log_n;
  Real d_minus;
  Real d_plus;
};

MoveGap move_gap(uint64_t p, const Real& log_n, const Precision& prec);

// Exponent curves, exact in integer arithmetic.
// L: largest m with p_i^m <= p_r, i.e. floor(log p_r / log p_i).
uint32_t L_bound(uint64_t p_i, uint64_t p_r);
// U: floor(log(k p_r)/log p_i) for the k with
// ((k+1) p_r)^(1/(k+1)) < p_i <= (k p_r)^(1/k).
uint32_t U_bound(uint64_t p_i, uint64_t p_r);

// L(p_i) <= a_i <= U(p_i) for every factor; margin is the minimum slack.
TheoremReport check_exponents(const FactoredNumber& n);

// G(N)/G(N/p) for a prime p dividing N with exponent 1.
Real ratio_div(const FactoredNumber& n, uint64_t p, const Precision& prec);
// G(N)/G(Np) for a prime p not dividing N.
Real ratio_mul(const FactoredNumber& n, uint64_t p, const Precision& prec);

// Exact iff-comparators for the two G-move inequalities. The series is
// truncated once the next term drops below 10^-(digits-5) of the partial
// sum; the geometric tail bound is folded into the error, so verdicts are
// certified. Undecided survives only past the precision ceiling.
Verdict lemma1_verdict(const FactoredNumber& n, uint64_t p,
                       const Precision& prec);
Verdict lemma2_verdict(const FactoredNumber& n, uint64_t p,
                       const Precision& prec);
// Boolean forms; throw UndecidedError when the margin stays inside err.
bool lemma1_holds(const FactoredNumber& n, uint64_t p, const Precision& prec);
bool lemma2_holds(const FactoredNumber& n, uint64_t p, const Precision& prec);

// d-threshold bounds on log N around a prime p.
Real thm6_lower(uint64_t p, const Precision& prec);
Real thm7_upper(uint64_t p, const Precision& prec);
Real thm10_lower(uint64_t p, const Precision& prec);
Real thm11_upper(uint64_t p, const Precision& prec);

// prod over primes q <= p of q/(q-1).
Real mertens_partial_product(uint64_t p, const Precision& prec);

// G(N) < e^gamma + 0.00995/(log log N)^2, evaluated as an empirical probe.
TheoremReport thm8_bound(const FactoredNumber& n, const Precision& prec);

struct Thm9Result {
  TheoremReport r91;        // p_r > log N (1 - 0.005587/loglog N)
  TheoremReport r92_minus;  // log N <= p_r (1 - 0.005589/log p_r)
  TheoremReport r92_plus;   // log N <= p_r (1 + 0.005589/log p_r)
};

// Both sign variants of the companion bound are evaluated and reported;
// neither is asserted.
Thm9Result thm9_check(const FactoredNumber& n, const Precision& prec);

// Recomputes the constant of the exponent-curve argument from its defining
// expression and cross-checks the quoted decimal 1.000528.
TheoremReport thm5_constant_c(const Precision& prec);

struct AuditResult {
  MoveGap gap;  // populated from p_r and log N
  std::vector<TheoremReport> reports;
  bool any_implication_failure() const;
};

AuditResult audit(const FactoredNumber& n, const Precision& prec = {});

// Certified orderings thm6 < thm10, thm11 < thm7, thm7 < p < thm6 on
// log-spaced primes in [lo, hi].
struct OrderingSweepResult {
  uint64_t checked = 0;
  uint64_t failures = 0;
};
OrderingSweepResult threshold_ordering_sweep(uint64_t lo, uint64_t hi,
                                             std::size_t count,
                                             const Precision& prec = {});

// Walks the greedy chain until p_r exceeds pr_stop, running the
// Theorem 10/11 implication instances (p_r >= 89693), the partial-product
// comparison for every entry, and the Theorem 8 probe for log N > 50.
struct ChainSweepSummary {
  uint64_t entries = 0;
  uint64_t entries_tested = 0;  // p_r >= 89693
  uint64_t thm10_applicable = 0, thm10_holds = 0, thm10_fails = 0;
  uint64_t thm10_undecided = 0;
  uint64_t thm11_applicable = 0, thm11_holds = 0, thm11_fails = 0;
  uint64_t thm11_undecided = 0;
  uint64_t rho_below_product = 0, rho_product_failures = 0;
  uint64_t thm8_probe_entries = 0, thm8_probe_failures = 0;
  uint64_t exponent_lower_failures = 0;  // a_r == 1 violations etc.
};
ChainSweepSummary chain_implication_sweep(uint64_t pr_stop,
                                          const Precision& prec = {});

}  // namespace robinlab
