#include "robinlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace robinlab {
namespace {

// Error bounds only need a short mantissa; mpfr's exponent range keeps
// them meaningful far below double's underflow threshold.
constexpr mpfr_prec_t kErrBits = 32;

mpfr_prec_t max_prec(const Real& a, const Real& b) {
  return std::max(mpfr_get_prec(a.value()), mpfr_get_prec(b.value()));
}

Real make_at_bits(mpfr_prec_t bits) {
  Precision p;  // digits field unused here; allocate directly
  Real r(p);
  mpfr_set_prec(r.mut_value(), bits);
  mpfr_set_ui(r.mut_value(), 0, MPFR_RNDN);
  return r;
}

// err := err + |x| * e (rounded up), where e is an error magnitude.
void add_scaled_err(mpfr_ptr err, mpfr_srcptr x, mpfr_srcptr e) {
  if (mpfr_zero_p(e)) return;
  mpfr_t t;
  mpfr_init2(t, kErrBits);
  mpfr_abs(t, x, MPFR_RNDU);
  mpfr_mul(t, t, e, MPFR_RNDU);
  mpfr_add(err, err, t, MPFR_RNDU);
  mpfr_clear(t);
}

}  // namespace

Precision::Precision(int digits_, int max_digits_)
    : digits(digits_), max_digits(max_digits_) {
  if (digits < kMinDigits)
    throw std::invalid_argument("Precision: digits must be >= 30");
  if (max_digits < digits)
    throw std::invalid_argument("Precision: max_digits must be >= digits");
}

mpfr_prec_t Precision::bits() const {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 16;
}

Precision Precision::escalated() const {
  Precision p(*this);
  p.digits = std::min(digits * 2, max_digits);
  return p;
}

Real::Real() : Real(Precision{}) {}

Real::Real(const Precision& prec) {
  mpfr_init2(v_, prec.bits());
  mpfr_set_ui(v_, 0, MPFR_RNDN);
  mpfr_init2(e_, kErrBits);
  mpfr_set_ui(e_, 0, MPFR_RNDU);
}

Real::Real(const Real& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
  mpfr_init2(e_, kErrBits);
  mpfr_set(e_, other.e_, MPFR_RNDU);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_init2(e_, kErrBits);
  mpfr_swap(v_, other.v_);
  mpfr_swap(e_, other.e_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
    mpfr_set(e_, other.e_, MPFR_RNDU);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) {
    mpfr_swap(v_, other.v_);
    mpfr_swap(e_, other.e_);
  }
  return *this;
}

Real::~Real() {
  mpfr_clear(v_);
  mpfr_clear(e_);
}

void Real::bump_err_ulp() {
  if (mpfr_zero_p(v_) || !mpfr_number_p(v_)) return;
  mpfr_t u;
  mpfr_init2(u, kErrBits);
  mpfr_set_ui_2exp(u, 1, mpfr_get_exp(v_) - mpfr_get_prec(v_), MPFR_RNDU);
  mpfr_add(e_, e_, u, MPFR_RNDU);
  mpfr_clear(u);
}

void Real::bump_err_if_inexact(int tern) {
  if (tern != 0) bump_err_ulp();
}

Real Real::of_u64(uint64_t n, const Precision& prec) {
  Real r(prec);
  int t = mpfr_set_uj(r.v_, n, MPFR_RNDN);
  r.bump_err_if_inexact(t);
  return r;
}

Real Real::of_i64(int64_t n, const Precision& prec) {
  Real r(prec);
  int t = mpfr_set_sj(r.v_, n, MPFR_RNDN);
  r.bump_err_if_inexact(t);
  return r;
}

Real Real::of_double(double x, const Precision& prec) {
  if (!std::isfinite(x)) throw std::domain_error("Real: non-finite double");
  Real r(prec);
  int t = mpfr_set_d(r.v_, x, MPFR_RNDN);
  r.bump_err_if_inexact(t);
  return r;
}

Real Real::of_mpz(mpz_srcptr z, const Precision& prec) {
  Real r(prec);
  int t = mpfr_set_z(r.v_, z, MPFR_RNDN);
  r.bump_err_if_inexact(t);
  return r;
}

Real Real::parse(const std::string& s, const Precision& prec) {
  Real r(prec);
  int t = mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN);
  if (t == -1 && mpfr_nan_p(r.v_))
    throw std::invalid_argument("Real: unparsable number: " + s);
  r.bump_err_ulp();  // decimal strings generally round
  return r;
}

Real Real::approx(double value, double abs_err, const Precision& prec) {
  if (abs_err < 0 || !std::isfinite(abs_err))
    throw std::invalid_argument("Real: error bound must be finite and >= 0");
  Real r = of_double(value, prec);
  mpfr_t e;
  mpfr_init2(e, kErrBits);
  mpfr_set_d(e, abs_err, MPFR_RNDU);
  mpfr_add(r.e_, r.e_, e, MPFR_RNDU);
  mpfr_clear(e);
  return r;
}

Real Real::with_extra_err(const Real& bound) const {
  Real r(*this);
  mpfr_t t;
  mpfr_init2(t, kErrBits);
  mpfr_abs(t, bound.v_, MPFR_RNDU);
  mpfr_add(t, t, bound.e_, MPFR_RNDU);
  mpfr_add(r.e_, r.e_, t, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

double Real::to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

double Real::err_double() const { return mpfr_get_d(e_, MPFR_RNDU); }

std::string Real::to_string(int digits) const {
  if (digits <= 0)
    digits = static_cast<int>(mpfr_get_prec(v_) / 3.3219280948873623);
  char* s = nullptr;
  if (mpfr_asprintf(&s, "%.*Rg", digits, v_) < 0)
    throw std::runtime_error("mpfr_asprintf failed");
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

bool Real::certainly_positive() const {
  if (mpfr_sgn(v_) <= 0) return false;
  mpfr_t t;
  mpfr_init2(t, kErrBits);
  mpfr_sub(t, v_, e_, MPFR_RNDD);
  bool pos = mpfr_sgn(t) > 0;
  mpfr_clear(t);
  return pos;
}

bool Real::certainly_negative() const {
  if (mpfr_sgn(v_) >= 0) return false;
  mpfr_t t;
  mpfr_init2(t, kErrBits);
  mpfr_add(t, v_, e_, MPFR_RNDU);
  bool neg = mpfr_sgn(t) < 0;
  mpfr_clear(t);
  return neg;
}

Real operator+(const Real& a, const Real& b) {
  Real r = make_at_bits(max_prec(a, b));
  int t = mpfr_add(r.mut_value(), a.value(), b.value(), MPFR_RNDN);
  mpfr_add(r.mut_err(), a.err(), b.err(), MPFR_RNDU);
  r.bump_err_if_inexact(t);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r = make_at_bits(max_prec(a, b));
  int t = mpfr_sub(r.mut_value(), a.value(), b.value(), MPFR_RNDN);
  mpfr_add(r.mut_err(), a.err(), b.err(), MPFR_RNDU);
  r.bump_err_if_inexact(t);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r = make_at_bits(max_prec(a, b));
  int t = mpfr_mul(r.mut_value(), a.value(), b.value(), MPFR_RNDN);
  // |a|eb + |b|ea + ea*eb
  add_scaled_err(r.mut_err(), a.value(), b.err());
  add_scaled_err(r.mut_err(), b.value(), a.err());
  if (!mpfr_zero_p(a.err()) && !mpfr_zero_p(b.err())) {
    mpfr_t u;
    mpfr_init2(u, kErrBits);
    mpfr_mul(u, a.err(), b.err(), MPFR_RNDU);
    mpfr_add(r.mut_err(), r.mut_err(), u, MPFR_RNDU);
    mpfr_clear(u);
  }
  r.bump_err_if_inexact(t);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  if (mpfr_zero_p(b.value()))
    throw std::domain_error("Real division by zero");
  // Denominator magnitude lower bound must clear its own error.
  mpfr_t den;
  mpfr_init2(den, kErrBits);
  mpfr_abs(den, b.value(), MPFR_RNDD);
  mpfr_sub(den, den, b.err(), MPFR_RNDD);
  if (mpfr_sgn(den) <= 0) {
    mpfr_clear(den);
    throw std::domain_error("Real division: divisor not certified nonzero");
  }
  Real r = make_at_bits(max_prec(a, b));
  int t = mpfr_div(r.mut_value(), a.value(), b.value(), MPFR_RNDN);
  // (ea + |q| eb) / (|b| - eb)
  mpfr_t num;
  mpfr_init2(num, kErrBits);
  mpfr_abs(num, r.value(), MPFR_RNDU);
  mpfr_mul(num, num, b.err(), MPFR_RNDU);
  mpfr_add(num, num, a.err(), MPFR_RNDU);
  mpfr_div(num, num, den, MPFR_RNDU);
  mpfr_add(r.mut_err(), r.mut_err(), num, MPFR_RNDU);
  mpfr_clear(num);
  mpfr_clear(den);
  r.bump_err_if_inexact(t);
  return r;
}

Real operator-(const Real& a) {
  Real r(a);
  mpfr_neg(r.mut_value(), r.value(), MPFR_RNDN);  // exact
  return r;
}

Real abs(const Real& a) {
  Real r(a);
  mpfr_abs(r.mut_value(), r.value(), MPFR_RNDN);  // exact
  return r;
}

Real ln(const Real& x, const Precision& prec) {
  if (mpfr_sgn(x.value()) <= 0)
    throw std::domain_error("ln: argument must be positive");
  // Lower bound of the argument interval must stay positive.
  mpfr_t lo;
  mpfr_init2(lo, kErrBits);
  mpfr_sub(lo, x.value(), x.err(), MPFR_RNDD);
  if (mpfr_sgn(lo) <= 0) {
    mpfr_clear(lo);
    throw std::domain_error("ln: argument not certified positive");
  }
  Real r(prec);
  int t = mpfr_log(r.mut_value(), x.value(), MPFR_RNDN);
  // |ln(x+-e) - ln(x)| <= e / (x - e)
  mpfr_t d;
  mpfr_init2(d, kErrBits);
  mpfr_div(d, x.err(), lo, MPFR_RNDU);
  mpfr_add(r.mut_err(), r.mut_err(), d, MPFR_RNDU);
  mpfr_clear(d);
  mpfr_clear(lo);
  r.bump_err_if_inexact(t);
  return r;
}

Real exp(const Real& x, const Precision& prec) {
  Real r(prec);
  int t = mpfr_exp(r.mut_value(), x.value(), MPFR_RNDN);
  if (!mpfr_zero_p(x.err())) {
    // exp(x) * (exp(e) - 1), rounded up
    mpfr_t f;
    mpfr_init2(f, kErrBits);
    mpfr_expm1(f, x.err(), MPFR_RNDU);
    add_scaled_err(r.mut_err(), r.value(), f);
    // the scaled bound used the rounded value; one extra ulp of slack
    mpfr_clear(f);
    r.bump_err_ulp();
  }
  r.bump_err_if_inexact(t);
  return r;
}

Real loglog(const Real& x, const Precision& prec) {
  if (mpfr_cmp_ui(x.value(), 1) <= 0)
    throw std::domain_error("loglog: argument must exceed 1");
  Real inner = ln(x, prec);
  if (mpfr_sgn(inner.value()) <= 0)
    throw std::domain_error("loglog: inner log not positive");
  return ln(inner, prec);
}

Real pow_ui(const Real& x, unsigned long k, const Precision& prec) {
  Real r(prec);
  int t = mpfr_pow_ui(r.mut_value(), x.value(), k, MPFR_RNDN);
  if (!mpfr_zero_p(x.err()) && k > 0) {
    // derivative bound: k * (|x| + e)^(k-1) * e
    mpfr_t b;
    mpfr_init2(b, kErrBits);
    mpfr_abs(b, x.value(), MPFR_RNDU);
    mpfr_add(b, b, x.err(), MPFR_RNDU);
    mpfr_pow_ui(b, b, k - 1, MPFR_RNDU);
    mpfr_mul_ui(b, b, k, MPFR_RNDU);
    mpfr_mul(b, b, x.err(), MPFR_RNDU);
    mpfr_add(r.mut_err(), r.mut_err(), b, MPFR_RNDU);
    mpfr_clear(b);
  }
  r.bump_err_if_inexact(t);
  return r;
}

Real pow(const Real& base, const Real& expo, const Precision& prec) {
  return exp(expo * ln(base, prec), prec);
}

Real euler_gamma(const Precision& prec) {
  Real r(prec);
  int t = mpfr_const_euler(r.mut_value(), MPFR_RNDN);
  r.bump_err_if_inexact(t);
  return r;
}

Real exp_gamma(const Precision& prec) { return exp(euler_gamma(prec), prec); }

Verdict cmp_values(const Real& a, const Real& b) {
  Real d = a - b;
  if (d.certainly_negative()) return Verdict::Less;
  if (d.certainly_positive()) return Verdict::Greater;
  return Verdict::Undecided;
}

Verdict cmp_adaptive(const Computation& lhs, const Computation& rhs,
                     const Precision& prec) {
  Precision cur = prec;
  for (;;) {
    Verdict v = cmp_values(lhs(cur), rhs(cur));
    if (v != Verdict::Undecided) return v;
    if (cur.at_ceiling()) return Verdict::Undecided;
    cur = cur.escalated();
  }
}

std::optional<int64_t> floor_certain(const Real& x) {
  mpfr_t lo, hi;
  mpfr_init2(lo, mpfr_get_prec(x.value()));
  mpfr_init2(hi, mpfr_get_prec(x.value()));
  mpfr_sub(lo, x.value(), x.err(), MPFR_RNDD);
  mpfr_add(hi, x.value(), x.err(), MPFR_RNDU);
  mpfr_floor(lo, lo);
  mpfr_floor(hi, hi);
  std::optional<int64_t> out;
  if (mpfr_cmp(lo, hi) == 0 && mpfr_fits_intmax_p(lo, MPFR_RNDD))
    out = static_cast<int64_t>(mpfr_get_sj(lo, MPFR_RNDD));
  mpfr_clear(lo);
  mpfr_clear(hi);
  return out;
}

uint64_t lower_bound_u64(const Real& x) {
  mpfr_t lo;
  mpfr_init2(lo, mpfr_get_prec(x.value()));
  mpfr_sub(lo, x.value(), x.err(), MPFR_RNDD);
  mpfr_floor(lo, lo);
  uint64_t out = 0;
  if (mpfr_sgn(lo) > 0) {
    if (!mpfr_fits_uintmax_p(lo, MPFR_RNDD))
      throw std::overflow_error("lower_bound_u64: value exceeds uint64");
    out = static_cast<uint64_t>(mpfr_get_uj(lo, MPFR_RNDD));
  }
  mpfr_clear(lo);
  return out;
}

}  // namespace robinlab
