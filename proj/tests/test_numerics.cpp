#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "robinlab/numerics.hpp"

using namespace robinlab;

namespace {

Real oracle_real(const mpz_class& scaled, int digits, const Precision& prec) {
  Real v = Real::of_mpz(scaled.get_mpz_t(), prec);
  Real s = Real::of_mpz(oracles::pow10_z(digits).get_mpz_t(), prec);
  // scaled-integer oracles truncate; allow their last few digits
  return (v / s).with_extra_err(
      Real::of_double(1.0, prec) / pow_ui(Real::of_u64(10, prec), digits - 5, prec));
}

bool within(const Real& a, const Real& b, double tol) {
  return std::fabs((a - b).to_double()) <= tol;
}

}  // namespace

TEST_SUITE("numerics") {

TEST_CASE("precision validation") {
  CHECK_THROWS_AS(Precision(10, 100), std::invalid_argument);
  CHECK_THROWS_AS(Precision(50, 40), std::invalid_argument);
  Precision p(30, 30);
  CHECK(p.at_ceiling());
  CHECK(Precision(50, 2000).escalated().digits == 100);
  CHECK(Precision(1500, 2000).escalated().digits == 2000);
}

TEST_CASE("ln identities") {
  Precision prec(50, 200);
  Real one = Real::of_u64(1, prec);
  CHECK(ln(one, prec).is_zero());

  Real e = exp(one, prec);
  Real back = ln(e, prec);
  CHECK(within(back, one, 1e-40));

  CHECK_THROWS_AS(ln(Real::of_i64(-3, prec), prec), std::domain_error);
  CHECK_THROWS_AS(ln(Real(prec), prec), std::domain_error);
}

TEST_CASE("ln(2) against the series oracle") {
  Precision prec(50, 200);
  const int od = 60;
  Real expect = oracle_real(oracles::ln2_scaled(od), od, prec);
  Real got = ln(Real::of_u64(2, prec), prec);
  CHECK(within(got, expect, 1e-50));
  // frozen leading digits from the same oracle
  CHECK(got.to_string(30) == "0.693147180559945309417232121458");
}

TEST_CASE("loglog values") {
  Precision prec(50, 200);
  Real one = Real::of_u64(1, prec);
  Real ee = exp(exp(one, prec), prec);  // e^e
  CHECK(within(loglog(ee, prec), one, 1e-40));

  const int od = 60;
  mpz_class y = 5040 * oracles::pow10_z(od);
  mpz_class ll = oracles::ln_scaled(oracles::ln_scaled(y, od), od);
  Real expect = oracle_real(ll, od, prec);
  Real got = loglog(Real::of_u64(5040, prec), prec);
  CHECK(within(got, expect, 1e-50));
  CHECK(got.to_string(20) == "2.1430219509746612755");

  Real neg = loglog(Real::of_u64(2, prec), prec);
  CHECK(neg.sign() < 0);
  CHECK(neg.to_double() == doctest::Approx(-0.3665129205816643).epsilon(1e-12));

  CHECK_THROWS_AS(loglog(one, prec), std::domain_error);
}

TEST_CASE("euler gamma against the Bessel-sum oracle") {
  const int od = 45;
  Precision wide(50, 200);
  Real expect = oracle_real(oracles::gamma_scaled(od), od, wide);
  CHECK(within(euler_gamma(wide), expect, 1e-39));

  Precision prec(30, 120);
  Real got = euler_gamma(prec);
  CHECK(got.to_string(30) == "0.577215664901532860606512090082");

  Real eg = exp_gamma(prec);
  CHECK(eg.to_string(30) == "1.78107241799019798523650410311");

  // refinement consistency: 30 and 60 digit runs agree on the first 30
  Real lo = euler_gamma(Precision(30, 120));
  Real hi = euler_gamma(Precision(60, 240));
  CHECK(std::fabs((lo - hi).to_double()) < 1e-30);
}

TEST_CASE("cmp_adaptive basics") {
  Precision prec(30, 120);
  Computation two = [](const Precision& p) { return Real::of_u64(2, p); };
  Computation three = [](const Precision& p) { return Real::of_u64(3, p); };
  CHECK(cmp_adaptive(two, three, prec) == Verdict::Less);
  CHECK(cmp_adaptive(three, two, prec) == Verdict::Greater);

  // identical computations can never separate
  Computation x = [](const Precision& p) {
    return ln(Real::of_u64(7, p), p);
  };
  CHECK(cmp_adaptive(x, x, prec) == Verdict::Undecided);

  // analytically equal: ln 2 + ln 3 vs ln 6
  Computation lhs = [](const Precision& p) {
    return ln(Real::of_u64(2, p), p) + ln(Real::of_u64(3, p), p);
  };
  Computation rhs = [](const Precision& p) {
    return ln(Real::of_u64(6, p), p);
  };
  CHECK(cmp_adaptive(lhs, rhs, prec) == Verdict::Undecided);

  // determinism across repeated calls
  for (int i = 0; i < 5; ++i)
    CHECK(cmp_adaptive(lhs, rhs, prec) == Verdict::Undecided);
}

TEST_CASE("precision refinement shrinks error") {
  for (uint64_t v : {3ull, 17ull, 5040ull}) {
    Real a = ln(Real::of_u64(v, Precision(40, 200)), Precision(40, 200));
    Real b = ln(Real::of_u64(v, Precision(80, 200)), Precision(80, 200));
    CHECK(b.err_double() <= a.err_double());
    CHECK(std::fabs((a - b).to_double()) <= a.err_double() + b.err_double());
  }
}

TEST_CASE("exp(ln(x)) round trip over log-spaced sample") {
  Precision prec(40, 160);
  for (int i = -6; i <= 6; ++i) {
    double x = std::pow(10.0, i) * 1.37;
    Real rx = Real::of_double(x, prec);
    Real rt = exp(ln(rx, prec), prec);
    Real diff = rt - rx;
    CHECK(std::fabs(diff.to_double()) <= 1e-30 * std::fabs(x));
  }
}

TEST_CASE("tracked error dominates interval brute force on products") {
  Precision prec(40, 160);
  std::mt19937_64 rng(987654321);
  std::uniform_real_distribution<double> val(0.5, 2.0);
  std::uniform_real_distribution<double> relerr(1e-12, 1e-10);
  for (int trial = 0; trial < 100; ++trial) {
    mpfr_t lo, hi, tmp;
    mpfr_init2(lo, 96);
    mpfr_init2(hi, 96);
    mpfr_init2(tmp, 96);
    mpfr_set_ui(lo, 1, MPFR_RNDD);
    mpfr_set_ui(hi, 1, MPFR_RNDU);
    Real prod = Real::of_u64(1, prec);
    for (int f = 0; f < 10; ++f) {
      double v = val(rng);
      double e = v * relerr(rng);
      Real factor = Real::approx(v, e, prec);
      prod = prod * factor;
      // interval endpoints with directed rounding (v and e are exact
      // doubles; the subtraction happens inside mpfr)
      mpfr_set_d(tmp, v, MPFR_RNDD);
      mpfr_sub_d(tmp, tmp, e, MPFR_RNDD);
      mpfr_mul(lo, lo, tmp, MPFR_RNDD);
      mpfr_set_d(tmp, v, MPFR_RNDU);
      mpfr_add_d(tmp, tmp, e, MPFR_RNDU);
      mpfr_mul(hi, hi, tmp, MPFR_RNDU);
    }
    // [prod - err, prod + err] must contain [lo, hi]
    mpfr_t plo, phi;
    mpfr_init2(plo, 96);
    mpfr_init2(phi, 96);
    mpfr_sub(plo, prod.value(), prod.err(), MPFR_RNDD);
    mpfr_add(phi, prod.value(), prod.err(), MPFR_RNDU);
    CHECK(mpfr_cmp(plo, lo) <= 0);
    CHECK(mpfr_cmp(phi, hi) >= 0);
    mpfr_clears(lo, hi, tmp, plo, phi, static_cast<mpfr_ptr>(nullptr));
  }
}

TEST_CASE("floor_certain and lower_bound_u64") {
  Precision prec(30, 120);
  CHECK(floor_certain(Real::of_double(2.5, prec)) == 2);
  CHECK(floor_certain(Real::of_double(-1.5, prec)) == -2);
  CHECK(floor_certain(Real::of_u64(7, prec)) == 7);
  // error interval straddling an integer is not resolvable
  CHECK(!floor_certain(Real::approx(2.0, 1e-3, prec)).has_value());
  CHECK(lower_bound_u64(Real::of_double(100.7, prec)) == 100);
  CHECK(lower_bound_u64(Real::of_double(-3.0, prec)) == 0);
}

TEST_CASE("division guards") {
  Precision prec(30, 120);
  Real zero(prec);
  CHECK_THROWS_AS(Real::of_u64(1, prec) / zero, std::domain_error);
  // divisor whose error interval covers zero
  Real fuzzy = Real::approx(1e-9, 1e-8, prec);
  CHECK_THROWS_AS(Real::of_u64(1, prec) / fuzzy, std::domain_error);
}

}  // TEST_SUITE
