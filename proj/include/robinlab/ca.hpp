#pragma once

#include <functional>
#include <vector>

#include "robinlab/factored.hpp"
#include "robinlab/numerics.hpp"

namespace robinlab {

// The parameter value at which the exponent of x steps up to k:
//   log(1 + 1/(x + x^2 + ... + x^k)) / log(x),  x > 1.
// Strictly decreasing in x and in k.
Real critical_eps(const Real& x, unsigned k, const Precision& prec);
// Same with an exact integer geometric sum.
Real critical_eps_u64(uint64_t p, unsigned k, const Precision& prec);

// Inverse of critical_eps in x for fixed k: the x with critical_eps(x,k) =
// eps, found by bisection on a geometrically expanded bracket. The
// returned err covers the final bracket width.
Real breakpoint_x(const Real& eps, unsigned k, const Precision& prec);

struct CAParams {
  Real eps;
  std::vector<Real> x;  // x[k-1] = k-th breakpoint; kept while >= 2
};

CAParams ca_params(const Real& eps, const Precision& prec);

// Exponent of p in the number built from eps:
//   floor(log((p^(1+eps)-1)/(p^eps-1))/log p) - 1.
// The floor is tie-guarded; a boundary inside the error bound at the
// precision ceiling raises TieError.
uint32_t prime_exponent(uint64_t p, const Real& eps, const Precision& prec);

// Product over all primes p <= x_1 of p^prime_exponent(p, eps).
FactoredNumber n_epsilon(const Real& eps, const Precision& prec);

struct ChainEntry {
  uint64_t index = 0;  // 1-based
  FactoredNumber n;
  uint64_t added_prime = 0;
  uint32_t new_exponent = 0;
  Real critical_eps;
  bool tie = false;  // a runner-up move was inseparable within error
};

// First `steps` numbers of the greedy chain: each step applies the
// exponent bump with the largest critical eps (ties to the smaller prime).
std::vector<ChainEntry> ca_chain(std::size_t steps,
                                 const Precision& prec = {});

// Streaming walk over the same chain with incrementally maintained
// aggregates; nothing is stored per step. The visitor returns false to
// stop. References inside ChainStep are valid only during the visit.
struct ChainStep {
  uint64_t index;
  uint64_t added_prime;
  uint32_t new_exponent;
  double critical_eps;
  const std::vector<uint64_t>& primes;     // present primes, ascending
  const std::vector<uint32_t>& exponents;  // parallel to primes
  const Real& log_n;
  const Real& rho_n;
  const Real& mertens_prod;  // prod over p <= p_r of p/(p-1)
  bool tie;
};

void ca_chain_walk(const std::function<bool(const ChainStep&)>& visit,
                   const Precision& prec = {});

struct Thm4Row {
  unsigned k = 0;
  Real xk;
  Real bound;      // (k p)^(1/k)
  Real cns_bound;  // (k x_1)^(1/k), the weaker comparison bound
  Real margin;     // bound - xk
  bool vacuous = false;  // xk < 2: no prime reaches exponent k
};

struct Thm4Report {
  Real eps;
  Real x1;
  uint64_t p = 0;  // largest prime <= x_1
  bool all_positive = false;
  bool cns_all_positive = false;
  std::vector<Thm4Row> rows;  // k = 2..kmax
};

// Margins of x_k < (k p)^(1/k) for k = 2..kmax. The bound is only claimed
// for p >= 3299; smaller p requires exploratory mode.
Thm4Report thm4_check(const Real& eps, unsigned kmax, const Precision& prec,
                      bool exploratory = false);

}  // namespace robinlab
