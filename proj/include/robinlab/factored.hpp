#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "robinlab/numerics.hpp"

namespace robinlab {

using u128 = unsigned __int128;

struct PrimePower {
  uint64_t prime;
  uint32_t exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// An integer held purely as its prime factorization, sorted by prime.
// The integer 1 is the empty factor list. Values are never materialized
// unless they fit in 128 bits; size comparisons go through log_value.
class FactoredNumber {
 public:
  FactoredNumber() = default;  // the integer 1

  static FactoredNumber one() { return FactoredNumber(); }
  static FactoredNumber from_integer(uint64_t n);
  // Validating constructor from explicit (prime, exponent) pairs.
  static FactoredNumber from_factors(std::vector<PrimePower> factors);
  // Text form "2^4*3^2*5*7"; "1" parses to the empty product.
  static FactoredNumber parse(std::string_view text);

  std::string to_string() const;

  bool is_one() const { return factors_.empty(); }
  const std::vector<PrimePower>& factors() const { return factors_; }
  std::size_t distinct_primes() const { return factors_.size(); }
  uint32_t exponent_of(uint64_t p) const;
  uint64_t largest_prime() const;   // p_r; throws for 1
  uint64_t smallest_prime() const;  // throws for 1

  FactoredNumber mul_prime(uint64_t p) const;
  FactoredNumber div_prime(uint64_t p) const;  // p must divide the value

  // Exact value when it fits; nullopt otherwise.
  std::optional<u128> value_u128() const;
  std::optional<uint64_t> value_u64() const;
  double log2_value() const;  // cheap double estimate

  friend bool operator==(const FactoredNumber&, const FactoredNumber&) =
      default;

 private:
  std::vector<PrimePower> factors_;
};

// Sum of exponents-weighted prime logs with propagated error. Requires a
// value of at least 2 (log log of 1 downstream would be meaningless).
Real log_value(const FactoredNumber& n, const Precision& prec);

// Abundancy sigma(n)/n as a product of per-prime factors, each formed from
// exact integer numerator and denominator.
Real rho(const FactoredNumber& n, const Precision& prec);

// Exact divisor sum. The represented value must fit in 128 bits.
mpz_class sigma_exact(const FactoredNumber& n);

// Exact value as a big integer (same 128-bit precondition as sigma_exact).
mpz_class value_exact(const FactoredNumber& n);

}  // namespace robinlab
