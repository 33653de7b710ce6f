#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "robinlab/ca.hpp"
#include "robinlab/primes.hpp"
#include "robinlab/robin.hpp"
#include "robinlab/theorems.hpp"

using namespace robinlab;

namespace {
const Precision kPrec(50, 400);

FactoredNumber random_factored(oracles::RandomFactored& gen, double max_log2) {
  for (;;) {
    auto fs = gen.next(max_log2);
    if (fs.size() < 2) continue;
    std::vector<PrimePower> pp;
    for (auto& [p, e] : fs) pp.push_back({p, e});
    return FactoredNumber::from_factors(std::move(pp));
  }
}

}  // namespace

TEST_SUITE("theorems") {

TEST_CASE("exponent curve values") {
  CHECK(L_bound(2, 7) == 2);
  CHECK(L_bound(7, 7) == 1);
  CHECK(L_bound(2, 89699) == 16);  // 2^16 = 65536 <= 89699 < 2^17
  CHECK(U_bound(7, 7) == 1);
  CHECK(U_bound(89699, 89699) == 1);
  CHECK(U_bound(2, 89699) == 20);  // k = 20 bracket, floor(log(20 p)/log 2)
  CHECK(U_bound(2, 89699) >= L_bound(2, 89699));
  CHECK_THROWS_AS(L_bound(11, 7), std::domain_error);
}

TEST_CASE("U dominates L everywhere in range") {
  PrimeTable t = sieve_range(2, 20000);
  for (uint64_t pr : t.primes)
    for (uint64_t pi : t.primes) {
      if (pi > pr) break;
      CHECK(U_bound(pi, pr) >= L_bound(pi, pr));
    }
  // log-spaced sample up to 10^6
  for (uint64_t pr :
       {100003ull, 200003ull, 400009ull, 611953ull, 999983ull})
    for (uint64_t pi : sieve_range(2, 1000).primes)
      CHECK(U_bound(pi, pr) >= L_bound(pi, pr));
}

TEST_CASE("check_exponents verdicts") {
  TheoremReport ok = check_exponents(FactoredNumber::from_integer(5040));
  CHECK(ok.verdict == AuditVerdict::Holds);
  CHECK(ok.margin->to_double() == 0.0);

  TheoremReport bad = check_exponents(FactoredNumber::from_integer(14));
  CHECK(bad.verdict == AuditVerdict::Fails);  // a_1 = 1 < L(2,7) = 2
  CHECK(bad.margin->to_double() == -1.0);

  // L-side holds along the chain
  for (const ChainEntry& e : ca_chain(25, kPrec)) {
    if (e.n.factors().empty()) continue;
    uint64_t pr = e.n.largest_prime();
    for (const auto& [p, a] : e.n.factors())
      CHECK(a >= L_bound(p, pr));
  }
}

TEST_CASE("move ratios at 5040 and 720") {
  // both G values via independent divisor sums: G(5040) > G(720)
  long double g5040 =
      (19344.0L / 5040) / std::log(std::log(5040.0L));
  long double g720 = (2418.0L / 720) / std::log(std::log(720.0L));
  CHECK(g5040 > g720);

  Real rd = ratio_div(FactoredNumber::from_integer(5040), 7, kPrec);
  CHECK(rd.to_double() ==
        doctest::Approx(static_cast<double>(g5040 / g720)).epsilon(1e-12));
  CHECK(rd.to_double() > 1.0);

  Real rm = ratio_mul(FactoredNumber::from_integer(720), 7, kPrec);
  CHECK(rm.to_double() ==
        doctest::Approx(static_cast<double>(g720 / g5040)).epsilon(1e-12));
  CHECK(rm.to_double() < 1.0);

  // reciprocal identity
  Real prod = rd * ratio_mul(FactoredNumber::from_integer(720), 7, kPrec);
  CHECK(std::fabs(prod.to_double() - 1.0) < 1e-30);

  CHECK_THROWS_AS(ratio_div(FactoredNumber::from_integer(720), 7, kPrec),
                  std::domain_error);
  CHECK_THROWS_AS(ratio_div(FactoredNumber::from_integer(5040), 2, kPrec),
                  std::domain_error);
  CHECK_THROWS_AS(ratio_mul(FactoredNumber::from_integer(5040), 7, kPrec),
                  std::domain_error);
}

TEST_CASE("ratio_mul exceeds 1 when p is at least N") {
  FactoredNumber n = FactoredNumber::from_integer(5544);
  uint64_t p = next_prime(5544);
  Real r = ratio_mul(n, p, kPrec);
  CHECK((r - Real::of_u64(1, kPrec)).certainly_positive());
}

TEST_CASE("lemma comparators match direct G comparisons") {
  oracles::RandomFactored gen(0xfeedbeef);
  int checked1 = 0, checked2 = 0;
  while (checked1 < 300) {
    FactoredNumber n = random_factored(gen, 100.0);  // up to ~10^30
    // need an exponent-1 prime with loglog(N/p) > 0
    uint64_t p = 0;
    for (const auto& [q, e] : n.factors())
      if (e == 1) p = q;
    if (p == 0) continue;
    FactoredNumber m = n.div_prime(p);
    if (m.is_one() || m.log2_value() < 4) continue;
    ++checked1;
    bool lemma = lemma1_holds(n, p, kPrec);
    Verdict direct = cmp_adaptive(
        [&](const Precision& pp) { return G(n, pp); },
        [&](const Precision& pp) { return G(m, pp); }, kPrec);
    REQUIRE(direct != Verdict::Undecided);
    CHECK(lemma == (direct == Verdict::Greater));
  }
  while (checked2 < 300) {
    FactoredNumber n = random_factored(gen, 100.0);
    if (n.log2_value() < 13) continue;  // N > 5040 territory
    uint64_t p = next_prime(3 + (gen.rng() % 4000));
    if (n.exponent_of(p) != 0) continue;
    if (std::log2(static_cast<double>(p)) >= n.log2_value()) continue;
    ++checked2;
    bool lemma = lemma2_holds(n, p, kPrec);
    FactoredNumber m = n.mul_prime(p);
    Verdict direct = cmp_adaptive(
        [&](const Precision& pp) { return G(n, pp); },
        [&](const Precision& pp) { return G(m, pp); }, kPrec);
    REQUIRE(direct != Verdict::Undecided);
    CHECK(lemma == (direct == Verdict::Greater));
  }
}

TEST_CASE("lemma values at the 5040 reference point") {
  // G(5040) > G(720), so removing 7 lowers G
  CHECK(lemma1_holds(FactoredNumber::from_integer(5040), 7, kPrec));
  // and adding 7 to 720 raises G, so G(720) > G(5040) is false
  CHECK(!lemma2_holds(FactoredNumber::from_integer(720), 7, kPrec));
  CHECK_THROWS_AS(lemma1_holds(FactoredNumber::from_integer(720), 7, kPrec),
                  std::domain_error);
  CHECK_THROWS_AS(lemma2_holds(FactoredNumber::from_integer(5040), 7, kPrec),
                  std::domain_error);
}

TEST_CASE("threshold formulas at 89693") {
  CHECK(thm6_lower(89693, kPrec).to_double() ==
        doctest::Approx(89699.158230307405).epsilon(1e-12));
  CHECK(thm7_upper(89693, kPrec).to_double() ==
        doctest::Approx(89687.761151499437).epsilon(1e-12));
  CHECK(thm10_lower(89693, kPrec).to_double() ==
        doctest::Approx(89699.165299506534).epsilon(1e-12));
  CHECK(thm11_upper(89693, kPrec).to_double() ==
        doctest::Approx(89687.717307803293).epsilon(1e-12));

  // thm10 - thm6 equals 1/(log p (log p + 1)) exactly as written
  Real lp = ln(Real::of_u64(89693, kPrec), kPrec);
  Real gap = thm10_lower(89693, kPrec) - thm6_lower(89693, kPrec);
  Real expect = Real::of_u64(1, kPrec) / (lp * (lp + Real::of_u64(1, kPrec)));
  CHECK(std::fabs((gap - expect).to_double()) < 1e-40);
}

TEST_CASE("threshold orderings on sampled primes") {
  OrderingSweepResult r = threshold_ordering_sweep(89693, 1000000, 200, kPrec);
  CHECK(r.checked > 150);
  CHECK(r.failures == 0);

  // p + log(p)/2 < thm6_lower and thm7_upper < p for p >= 11
  for (uint64_t p : {11ull, 97ull, 3299ull, 89693ull}) {
    Real rp = Real::of_u64(p, kPrec);
    Real half_lp = ln(rp, kPrec) / Real::of_u64(2, kPrec);
    CHECK(cmp_values(rp + half_lp, thm6_lower(p, kPrec)) == Verdict::Less);
    CHECK(cmp_values(thm7_upper(p, kPrec), rp) == Verdict::Less);
  }
}

TEST_CASE("move gap identity") {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<uint64_t> pd(2, 1000000);
  std::uniform_real_distribution<double> ld(10.0, 1e6);
  for (int i = 0; i < 200; ++i) {
    uint64_t p = next_prime(pd(rng));
    Real log_n = Real::of_double(ld(rng), kPrec);
    MoveGap g = move_gap(p, log_n, kPrec);
    Real lp = ln(Real::of_u64(p, kPrec), kPrec);
    Real diff = (g.d_plus - g.d_minus) - lp;
    CHECK(std::fabs(diff.to_double()) <= diff.err_double() + 1e-40);
  }
}

TEST_CASE("thm8 bound at 5040 and along larger entries") {
  TheoremReport r = thm8_bound(FactoredNumber::from_integer(5040), kPrec);
  CHECK(r.verdict == AuditVerdict::Fails);  // bound 1.78324 < G = 1.79097
  CHECK(r.margin->to_double() == doctest::Approx(-0.0077344).epsilon(1e-4));

  std::vector<ChainEntry> chain = ca_chain(30, kPrec);
  for (const auto& e : chain) {
    if (e.n.log2_value() < 73) continue;  // log N > 50
    TheoremReport probe = thm8_bound(e.n, kPrec);
    CHECK(probe.verdict == AuditVerdict::Holds);
  }
}

TEST_CASE("thm9 margins at 5040") {
  Thm9Result r = thm9_check(FactoredNumber::from_integer(5040), kPrec);
  CHECK(r.r91.verdict == AuditVerdict::NotApplicable);
  CHECK(r.r91.margin->to_double() == doctest::Approx(-1.5029).epsilon(1e-3));
  CHECK(r.r92_minus.margin->to_double() < 0);
  CHECK(r.r92_plus.margin->to_double() < 0);
  // algebraic rearrangement of the first bound, checked numerically:
  // margin > 0 iff log N < p_r / (1 - 0.005587/loglog N)
  FactoredNumber big = ca_chain(28, kPrec).back().n;
  Thm9Result rb = thm9_check(big, kPrec);
  Real log_n = log_value(big, kPrec);
  Real ll = ln(log_n, kPrec);
  Real c = Real::of_u64(5587, kPrec) / Real::of_u64(1000000, kPrec);
  Real rhs = Real::of_u64(big.largest_prime(), kPrec) /
             (Real::of_u64(1, kPrec) - c / ll);
  CHECK((rb.r91.margin->to_double() > 0) ==
        (cmp_values(log_n, rhs) == Verdict::Less));
}

TEST_CASE("constant-c cross-check reports the mismatch") {
  TheoremReport r = thm5_constant_c(kPrec);
  CHECK(r.verdict == AuditVerdict::Fails);
  CHECK(r.notes.find("reciprocal") != std::string::npos);
  CHECK(r.margin->to_double() == doctest::Approx(-0.0010562).epsilon(1e-4));
}

TEST_CASE("audit of 5040") {
  AuditResult res = audit(FactoredNumber::from_integer(5040), kPrec);
  auto find = [&](const std::string& id) -> const TheoremReport& {
    for (const auto& r : res.reports)
      if (r.id == id) return r;
    throw std::runtime_error("missing report " + id);
  };
  CHECK(find("thm2_pr_below_logN").verdict == AuditVerdict::Holds);
  CHECK(find("thm2_pr_below_logN").margin->to_double() ==
        doctest::Approx(1.5251614).epsilon(1e-6));
  CHECK(find("thm3_pr_largest_below_logN").verdict == AuditVerdict::Holds);
  CHECK(find("exponent_curves").verdict == AuditVerdict::Holds);
  CHECK(find("thm10_implication").verdict == AuditVerdict::NotApplicable);
  CHECK(find("thm8_intermediate").verdict == AuditVerdict::Holds);
  CHECK(find("thm8_intermediate").margin->to_double() ==
        doctest::Approx(4.375 - 19344.0 / 5040).epsilon(1e-10));
  CHECK(!res.any_implication_failure());
  // MoveGap populated from p_r and log N
  CHECK(res.gap.p == 7);
  Real lp = ln(Real::of_u64(7, kPrec), kPrec);
  CHECK(std::fabs((res.gap.d_plus - res.gap.d_minus - lp).to_double()) <
        1e-40);
}

TEST_CASE("audit of a large primorial records the expected probe failure") {
  FactoredNumber primo;
  {
    std::vector<PrimePower> fs;
    for (uint64_t p : sieve_range(2, 29).primes) fs.push_back({p, 1});
    primo = FactoredNumber::from_factors(fs);
  }
  // log(29#) = 22.55..., below p_r = 29: the size predicate fails here
  AuditResult res = audit(primo, kPrec);
  bool found = false;
  for (const auto& r : res.reports)
    if (r.id == "thm2_pr_below_logN") {
      CHECK(r.verdict == AuditVerdict::Fails);
      found = true;
    }
  CHECK(found);
  CHECK(!res.any_implication_failure());  // probes never gate the exit
}

TEST_CASE("chain sweep of modest depth") {
  ChainSweepSummary s = chain_implication_sweep(300, kPrec);
  CHECK(s.entries > 50);
  CHECK(s.entries_tested == 0);  // p_r stays below 89693
  CHECK(s.rho_below_product == s.entries);
  CHECK(s.rho_product_failures == 0);
  CHECK(s.exponent_lower_failures == 0);
  CHECK(s.thm8_probe_failures == 0);
  CHECK(s.thm8_probe_entries > 0);
}

}  // TEST_SUITE
