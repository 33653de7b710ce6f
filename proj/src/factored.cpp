#include "robinlab/factored.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "robinlab/primes.hpp"

namespace robinlab {
namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<u128>(a) * b) % m);
}

// Pollard-Brent rho; n must be composite and odd.
uint64_t pollard_brent(uint64_t n, uint64_t seed) {
  uint64_t x = seed % n, c = 1 + seed % (n - 1);
  uint64_t y = x, d = 1;
  uint64_t q = 1;
  uint64_t ys = 0;
  const uint64_t m = 128;
  uint64_t r = 1;
  while (d == 1) {
    x = y;
    for (uint64_t i = 0; i < r; ++i) y = (mulmod_u64(y, y, n) + c) % n;
    for (uint64_t k = 0; k < r && d == 1; k += m) {
      ys = y;
      uint64_t lim = std::min(m, r - k);
      for (uint64_t i = 0; i < lim; ++i) {
        y = (mulmod_u64(y, y, n) + c) % n;
        q = mulmod_u64(q, x > y ? x - y : y - x, n);
      }
      d = std::gcd(q, n);
    }
    r *= 2;
  }
  if (d == n) {
    do {
      ys = (mulmod_u64(ys, ys, n) + c) % n;
      d = std::gcd(x > ys ? x - ys : ys - x, n);
    } while (d == 1);
  }
  return d;
}

void factor_into(uint64_t n, std::vector<uint64_t>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  uint64_t d = n;
  for (uint64_t seed = 2; d == n; ++seed) d = pollard_brent(n, seed);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

FactoredNumber FactoredNumber::from_integer(uint64_t n) {
  if (n == 0) throw std::domain_error("FactoredNumber: zero has no factorization");
  FactoredNumber f;
  for (uint64_t p : {2ull, 3ull, 5ull}) {
    uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) f.factors_.push_back({p, e});
  }
  std::vector<uint64_t> rest;
  factor_into(n, rest);
  std::sort(rest.begin(), rest.end());
  for (std::size_t i = 0; i < rest.size();) {
    std::size_t j = i;
    while (j < rest.size() && rest[j] == rest[i]) ++j;
    f.factors_.push_back({rest[i], static_cast<uint32_t>(j - i)});
    i = j;
  }
  return f;
}

FactoredNumber FactoredNumber::from_factors(std::vector<PrimePower> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const PrimePower& a, const PrimePower& b) {
              return a.prime < b.prime;
            });
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].exponent == 0)
      throw std::invalid_argument("FactoredNumber: zero exponent");
    if (i > 0 && factors[i].prime == factors[i - 1].prime)
      throw std::invalid_argument("FactoredNumber: duplicate prime");
    if (!is_prime_u64(factors[i].prime))
      throw std::invalid_argument("FactoredNumber: " +
                                  std::to_string(factors[i].prime) +
                                  " is not prime");
  }
  FactoredNumber f;
  f.factors_ = std::move(factors);
  return f;
}

FactoredNumber FactoredNumber::parse(std::string_view text) {
  if (text == "1") return FactoredNumber();
  std::vector<PrimePower> factors;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t star = text.find('*', pos);
    std::string_view term = text.substr(
        pos, star == std::string_view::npos ? text.size() - pos : star - pos);
    if (term.empty()) throw std::invalid_argument("FactoredNumber: empty term");
    std::size_t caret = term.find('^');
    std::string_view p_str = term.substr(0, caret);
    uint64_t p = 0;
    auto [pp, pe] = std::from_chars(p_str.data(), p_str.data() + p_str.size(), p);
    if (pe != std::errc{} || pp != p_str.data() + p_str.size())
      throw std::invalid_argument("FactoredNumber: bad prime in '" +
                                  std::string(term) + "'");
    uint32_t e = 1;
    if (caret != std::string_view::npos) {
      std::string_view e_str = term.substr(caret + 1);
      auto [ep, ee] = std::from_chars(e_str.data(), e_str.data() + e_str.size(), e);
      if (ee != std::errc{} || ep != e_str.data() + e_str.size() || e == 0)
        throw std::invalid_argument("FactoredNumber: bad exponent in '" +
                                    std::string(term) + "'");
    }
    factors.push_back({p, e});
    if (star == std::string_view::npos) break;
    pos = star + 1;
  }
  // Require canonical (ascending) order so printing round-trips bit-exactly.
  for (std::size_t i = 1; i < factors.size(); ++i)
    if (factors[i].prime <= factors[i - 1].prime)
      throw std::invalid_argument("FactoredNumber: primes not ascending");
  return from_factors(std::move(factors));
}

std::string FactoredNumber::to_string() const {
  if (factors_.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += '*';
    out += std::to_string(factors_[i].prime);
    if (factors_[i].exponent != 1) {
      out += '^';
      out += std::to_string(factors_[i].exponent);
    }
  }
  return out;
}

uint32_t FactoredNumber::exponent_of(uint64_t p) const {
  auto it = std::lower_bound(
      factors_.begin(), factors_.end(), p,
      [](const PrimePower& f, uint64_t v) { return f.prime < v; });
  return it != factors_.end() && it->prime == p ? it->exponent : 0;
}

uint64_t FactoredNumber::largest_prime() const {
  if (factors_.empty())
    throw std::domain_error("FactoredNumber: 1 has no prime factor");
  return factors_.back().prime;
}

uint64_t FactoredNumber::smallest_prime() const {
  if (factors_.empty())
    throw std::domain_error("FactoredNumber: 1 has no prime factor");
  return factors_.front().prime;
}

FactoredNumber FactoredNumber::mul_prime(uint64_t p) const {
  if (!is_prime_u64(p))
    throw std::invalid_argument("mul_prime: " + std::to_string(p) +
                                " is not prime");
  FactoredNumber f(*this);
  auto it = std::lower_bound(
      f.factors_.begin(), f.factors_.end(), p,
      [](const PrimePower& a, uint64_t v) { return a.prime < v; });
  if (it != f.factors_.end() && it->prime == p)
    ++it->exponent;
  else
    f.factors_.insert(it, {p, 1});
  return f;
}

FactoredNumber FactoredNumber::div_prime(uint64_t p) const {
  FactoredNumber f(*this);
  auto it = std::lower_bound(
      f.factors_.begin(), f.factors_.end(), p,
      [](const PrimePower& a, uint64_t v) { return a.prime < v; });
  if (it == f.factors_.end() || it->prime != p)
    throw std::domain_error("div_prime: " + std::to_string(p) +
                            " does not divide the value");
  if (--it->exponent == 0) f.factors_.erase(it);
  return f;
}

std::optional<u128> FactoredNumber::value_u128() const {
  constexpr u128 kMax = ~u128{0};
  u128 v = 1;
  for (const auto& [p, e] : factors_) {
    for (uint32_t i = 0; i < e; ++i) {
      if (v > kMax / p) return std::nullopt;
      v *= p;
    }
  }
  return v;
}

std::optional<uint64_t> FactoredNumber::value_u64() const {
  auto v = value_u128();
  if (!v || *v > ~uint64_t{0}) return std::nullopt;
  return static_cast<uint64_t>(*v);
}

double FactoredNumber::log2_value() const {
  double s = 0;
  for (const auto& [p, e] : factors_)
    s += e * std::log2(static_cast<double>(p));
  return s;
}

Real log_value(const FactoredNumber& n, const Precision& prec) {
  if (n.is_one())
    throw std::domain_error("log_value: undefined for the integer 1");
  Real sum(prec);
  for (const auto& [p, e] : n.factors()) {
    Real lp = ln(Real::of_u64(p, prec), prec);
    sum = sum + Real::of_u64(e, prec) * lp;
  }
  return sum;
}

Real rho(const FactoredNumber& n, const Precision& prec) {
  Real result = Real::of_u64(1, prec);
  mpz_class num, den, pz;
  for (const auto& [p, e] : n.factors()) {
    // (p^(e+1) - 1) / ((p - 1) * p^e), both sides exact integers
    pz = static_cast<unsigned long>(p);
    mpz_pow_ui(num.get_mpz_t(), pz.get_mpz_t(), e + 1);
    num -= 1;
    mpz_pow_ui(den.get_mpz_t(), pz.get_mpz_t(), e);
    den *= pz - 1;
    result = result * (Real::of_mpz(num.get_mpz_t(), prec) /
                       Real::of_mpz(den.get_mpz_t(), prec));
  }
  return result;
}

mpz_class value_exact(const FactoredNumber& n) {
  mpz_class v = 1, pz;
  for (const auto& [p, e] : n.factors()) {
    pz = static_cast<unsigned long>(p);
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), pz.get_mpz_t(), e);
    v *= pw;
    if (mpz_sizeinbase(v.get_mpz_t(), 2) > 128)
      throw std::overflow_error("value_exact: value exceeds 128 bits");
  }
  return v;
}

mpz_class sigma_exact(const FactoredNumber& n) {
  value_exact(n);  // enforce the 128-bit precondition
  mpz_class sigma = 1, pz;
  for (const auto& [p, e] : n.factors()) {
    pz = static_cast<unsigned long>(p);
    mpz_class num;
    mpz_pow_ui(num.get_mpz_t(), pz.get_mpz_t(), e + 1);
    num -= 1;
    sigma *= num / (pz - 1);
  }
  return sigma;
}

}  // namespace robinlab
