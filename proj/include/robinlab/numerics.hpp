#pragma once

#include <stdint.h>
#include <inttypes.h>

#define MPFR_USE_INTMAX_T
#include <mpfr.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "robinlab/errors.hpp"

namespace robinlab {

// Decimal working precision plus the ceiling adaptive comparisons may
// escalate to.
struct Precision {
  static constexpr int kMinDigits = 30;
  static constexpr int kDefaultDigits = 50;
  static constexpr int kDefaultMaxDigits = 2000;

  int digits = kDefaultDigits;
  int max_digits = kDefaultMaxDigits;

  Precision() = default;
  Precision(int digits_, int max_digits_);

  // mpfr mantissa bits for `digits` decimal digits, with guard bits.
  mpfr_prec_t bits() const;

  // Doubled digits, clamped to max_digits.
  Precision escalated() const;
  bool at_ceiling() const { return digits >= max_digits; }
};

enum class Verdict { Less, Greater, Undecided };

// An arbitrary-precision value together with an upper bound on its absolute
// error. Every operation propagates worst-case error bounds, so an interval
// [value - err, value + err] always contains the exact result.
//
// Immutable after construction; safe to share across threads.
class Real {
 public:
  Real();  // 0 with err 0 at default precision
  explicit Real(const Precision& prec);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  static Real of_u64(uint64_t n, const Precision& prec);
  static Real of_i64(int64_t n, const Precision& prec);
  static Real of_double(double x, const Precision& prec);
  static Real of_mpz(mpz_srcptr z, const Precision& prec);
  // Value from decimal string, rounding error accounted for.
  static Real parse(const std::string& s, const Precision& prec);
  // A value with an externally supplied absolute error bound.
  static Real approx(double value, double abs_err, const Precision& prec);

  mpfr_srcptr value() const { return v_; }
  mpfr_srcptr err() const { return e_; }
  mpfr_prec_t prec_bits() const { return mpfr_get_prec(v_); }

  double to_double() const;
  double err_double() const;  // may underflow to 0; upper bound otherwise
  std::string to_string(int digits = 0) const;  // 0: value's own precision

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  // True when the whole error interval lies on one side of zero.
  bool certainly_positive() const;
  bool certainly_negative() const;

  // Copy with |bound.value| + bound.err added to the error bound.
  Real with_extra_err(const Real& bound) const;

  // Internal: value/err mutable access for the implementation.
  mpfr_ptr mut_value() { return v_; }
  mpfr_ptr mut_err() { return e_; }
  void bump_err_ulp();                  // add one ulp of value to err
  void bump_err_if_inexact(int tern);   // add one ulp if mpfr reported inexact

 private:
  mpfr_t v_;
  mpfr_t e_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator-(const Real& a);

Real abs(const Real& a);

// Transcendentals evaluate at the requested precision and fold both the
// input error (via a derivative bound) and their own rounding into err.
Real ln(const Real& x, const Precision& prec);      // domain: x > 0 certified
Real exp(const Real& x, const Precision& prec);
Real loglog(const Real& x, const Precision& prec);  // domain: x > 1 certified
Real pow_ui(const Real& x, unsigned long k, const Precision& prec);
Real pow(const Real& base, const Real& expo, const Precision& prec);  // base > 0

Real euler_gamma(const Precision& prec);
Real exp_gamma(const Precision& prec);  // e^gamma

// Certified interval comparison of two already-computed values: Less/Greater
// only when the error intervals do not overlap.
Verdict cmp_values(const Real& a, const Real& b);

// A quantity recomputable at any requested precision.
using Computation = std::function<Real(const Precision&)>;

// Compares two recomputable quantities. Returns Less/Greater only when the
// separation exceeds the combined error bounds; otherwise doubles the digit
// count up to prec.max_digits and finally reports Undecided.
Verdict cmp_adaptive(const Computation& lhs, const Computation& rhs,
                     const Precision& prec);

// Floor of a value whose error interval must not straddle an integer
// boundary; nullopt when it does (caller escalates or reports a tie).
std::optional<int64_t> floor_certain(const Real& x);

// Largest uint64 certainly <= x (0 when x may be negative). Used for
// integer-vs-threshold comparisons.
uint64_t lower_bound_u64(const Real& x);

}  // namespace robinlab
