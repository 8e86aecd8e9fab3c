#pragma once

// Exact arithmetic-function layer: smallest-prime-factor sieve, factorized
// integers, the classical multiplicative functions and Dirichlet convolution.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace resonance::arith {

struct PrimePower {
  std::uint64_t prime = 0;
  int exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// n together with its prime powers in increasing prime order.
class Factorization {
 public:
  Factorization() = default;
  Factorization(std::uint64_t n, std::vector<PrimePower> factors);

  std::uint64_t n() const noexcept { return n_; }
  std::span<const PrimePower> factors() const noexcept { return factors_; }
  int omega() const noexcept { return static_cast<int>(factors_.size()); }
  bool squarefree() const noexcept;

 private:
  std::uint64_t n_ = 1;
  std::vector<PrimePower> factors_;
};

// Trial division; for isolated integers beyond any table.
Factorization factorize_trial(std::uint64_t n);

class PrimeTable {
 public:
  // Linear sieve over [2, limit]. Throws std::invalid_argument for limit < 2.
  explicit PrimeTable(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }
  std::uint32_t smallest_factor(std::uint64_t n) const;
  bool is_prime(std::uint64_t n) const;
  std::span<const std::uint32_t> primes() const noexcept { return primes_; }
  Factorization factorize(std::uint64_t n) const;

 private:
  void check_range(std::uint64_t n) const;

  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

PrimeTable build_prime_table(std::uint64_t limit);

// ---------------------------------------------------------------------------
// Pointwise functions. The PrimeTable overloads require 1 <= n <= limit and
// throw std::out_of_range otherwise.
// ---------------------------------------------------------------------------

int mobius(const Factorization& f);
int mobius(const PrimeTable& table, std::uint64_t n);

// Coefficient of n^{-s} in zeta(s)^k; tau_k(p^e) = C(e+k-1, k-1).
// Throws std::overflow_error if the value leaves uint64.
std::uint64_t tau_k(const Factorization& f, int k);
std::uint64_t tau_k(const PrimeTable& table, std::uint64_t n, int k);

// (mu * log^k)(n). Exactly 0 when omega(n) > k or n = 1.
double lambda_k(const Factorization& f, int k);
double lambda_k(const PrimeTable& table, std::uint64_t n, int k);

enum class ShiftKind { F1 = 1, F2 = 2 };

// Local factor of f_1 / f_2 at p^e:
//   f_1: sum_j tau_r(p^{e+j}) p^{-j}           / sum_j tau_r(p^j) p^{-j}
//   f_2: sum_j tau_r(p^{e+j}) tau_r(p^j) p^{-j} / sum_j tau_r(p^j)^2 p^{-j}
// Each series is cut once its geometric tail bound drops below 1e-14 of the
// running sum.
double shift_local_factor(std::uint64_t p, int e, int r, ShiftKind which);

double f_shift(const Factorization& f, int r, ShiftKind which);
double f_shift(const PrimeTable& table, std::uint64_t n, int r, ShiftKind which);

// Sum of a local power series sum_{j>=0} term(j), where term(j+1)/term(j) is
// eventually decreasing below 1. Exposed for the Euler-product constants.
double sum_local_series(const std::function<double(int)>& term,
                        double rel_tol = 1e-14, int max_terms = 4000);

// C(m, k) in double precision; exact for the small arguments used here.
double binomial(int m, int k);

// ---------------------------------------------------------------------------
// Tables indexed 1..N (index 0 unused).
// ---------------------------------------------------------------------------

struct ArithFunctionTable {
  std::string name;
  std::string support;
  std::vector<double> values;

  std::uint64_t limit() const noexcept {
    return values.empty() ? 0 : values.size() - 1;
  }
  double operator[](std::uint64_t n) const noexcept { return values[n]; }
  double at(std::uint64_t n) const;
};

ArithFunctionTable make_table(std::string name, std::uint64_t limit,
                              const std::function<double(std::uint64_t)>& fn);

ArithFunctionTable delta_table(std::uint64_t limit);  // indicator of {1}
ArithFunctionTable unit_table(std::uint64_t limit);   // constant 1
ArithFunctionTable log_power_table(std::uint64_t limit, int k);
ArithFunctionTable mobius_table(const PrimeTable& table, std::uint64_t limit);
ArithFunctionTable tau_table(const PrimeTable& table, std::uint64_t limit, int k);
// Built as mu * log^k, then zeroed on omega(n) > k.
ArithFunctionTable lambda_table(const PrimeTable& table, std::uint64_t limit, int k);
ArithFunctionTable f_shift_table(const PrimeTable& table, std::uint64_t limit,
                                 int r, ShiftKind which);

// c[n] = sum_{d | n} a[d] b[n/d] for n <= limit. Throws std::invalid_argument
// when either table is shorter than limit.
ArithFunctionTable dirichlet_convolve(const ArithFunctionTable& a,
                                      const ArithFunctionTable& b,
                                      std::uint64_t limit);

// ---------------------------------------------------------------------------
// Segmented sieve over arbitrary ranges.
// ---------------------------------------------------------------------------

// Calls block(primes) with the primes of [lo, hi] in increasing order, one
// segment at a time.
void for_each_prime_block(std::uint64_t lo, std::uint64_t hi,
                          const std::function<void(std::span<const std::uint64_t>)>& block);

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);
std::uint64_t count_primes(std::uint64_t lo, std::uint64_t hi);

// Sums fn(p) over the primes of [lo, hi]. The range is cut into fixed
// segments, each summed with compensation, and the segment totals are
// combined pairwise in segment order, so the result does not depend on the
// number of worker threads. fn(p, out) adds its contributions into out,
// which has n_outputs slots.
std::vector<double> sum_over_primes(std::uint64_t lo, std::uint64_t hi,
                                    std::size_t n_outputs,
                                    const std::function<void(std::uint64_t, std::span<double>)>& fn);

}  // namespace resonance::arith
