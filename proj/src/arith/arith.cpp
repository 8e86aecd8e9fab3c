#include "resonance/arith.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace resonance::arith {

Factorization::Factorization(std::uint64_t n, std::vector<PrimePower> factors)
    : n_(n), factors_(std::move(factors)) {}

bool Factorization::squarefree() const noexcept {
  for (const auto& pp : factors_) {
    if (pp.exponent > 1) return false;
  }
  return true;
}

Factorization factorize_trial(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize_trial: n must be positive");
  std::vector<PrimePower> out;
  std::uint64_t m = n;
  for (std::uint64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p != 0) continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (m > 1) out.push_back({m, 1});
  return Factorization(n, std::move(out));
}

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit) {
  if (limit < 2) {
    throw std::invalid_argument("PrimeTable: limit must be at least 2, got " +
                                std::to_string(limit));
  }
  if (limit > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("PrimeTable: limit exceeds 32-bit factor storage");
  }
  spf_.assign(limit + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    const std::uint32_t si = spf_[i];
    for (std::uint32_t p : primes_) {
      if (p > si || static_cast<std::uint64_t>(p) * i > limit) break;
      spf_[p * i] = p;
    }
  }
}

void PrimeTable::check_range(std::uint64_t n) const {
  if (n < 1 || n > limit_) {
    throw std::out_of_range("PrimeTable: " + std::to_string(n) +
                            " outside [1, " + std::to_string(limit_) + "]");
  }
}

std::uint32_t PrimeTable::smallest_factor(std::uint64_t n) const {
  check_range(n);
  if (n < 2) throw std::out_of_range("PrimeTable: 1 has no prime factor");
  return spf_[n];
}

bool PrimeTable::is_prime(std::uint64_t n) const {
  check_range(n);
  return n >= 2 && spf_[n] == n;
}

Factorization PrimeTable::factorize(std::uint64_t n) const {
  check_range(n);
  std::vector<PrimePower> out;
  std::uint64_t m = n;
  while (m > 1) {
    const std::uint64_t p = spf_[m];
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  return Factorization(n, std::move(out));
}

PrimeTable build_prime_table(std::uint64_t limit) { return PrimeTable(limit); }

int mobius(const Factorization& f) {
  if (!f.squarefree()) return 0;
  return (f.omega() % 2 == 0) ? 1 : -1;
}

int mobius(const PrimeTable& table, std::uint64_t n) {
  return mobius(table.factorize(n));
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("tau_k: value exceeds 64-bit range");
  }
  return out;
}

// C(e + k - 1, k - 1) with overflow checks.
std::uint64_t tau_prime_power(int e, int k) {
  std::uint64_t c = 1;
  for (int i = 1; i <= k - 1; ++i) {
    // c = C(e + i - 1, i - 1) -> C(e + i, i)
    const std::uint64_t num = static_cast<std::uint64_t>(e + i);
    const std::uint64_t g = std::gcd(c, static_cast<std::uint64_t>(i));
    c = checked_mul(c / g, num / (static_cast<std::uint64_t>(i) / g));
  }
  return c;
}

}  // namespace

std::uint64_t tau_k(const Factorization& f, int k) {
  if (k < 1) throw std::invalid_argument("tau_k: k must be positive");
  std::uint64_t out = 1;
  for (const auto& pp : f.factors()) out = checked_mul(out, tau_prime_power(pp.exponent, k));
  return out;
}

std::uint64_t tau_k(const PrimeTable& table, std::uint64_t n, int k) {
  return tau_k(table.factorize(n), k);
}

double lambda_k(const Factorization& f, int k) {
  if (k < 1) throw std::invalid_argument("lambda_k: k must be positive");
  const int w = f.omega();
  if (f.n() == 1 || w > k) return 0.0;
  // Only squarefree divisors d contribute to sum_{d|n} mu(d) log^k(n/d).
  std::vector<long double> logs;
  logs.reserve(w);
  long double log_n = 0.0L;
  for (const auto& pp : f.factors()) {
    const long double lp = std::log(static_cast<long double>(pp.prime));
    logs.push_back(lp);
    log_n += pp.exponent * lp;
  }
  long double acc = 0.0L;
  for (unsigned mask = 0; mask < (1u << w); ++mask) {
    long double l = log_n;
    int bits = 0;
    for (int i = 0; i < w; ++i) {
      if (mask & (1u << i)) {
        l -= logs[i];
        ++bits;
      }
    }
    const long double term = std::pow(l, k);
    acc += (bits % 2 == 0) ? term : -term;
  }
  return static_cast<double>(acc);
}

double lambda_k(const PrimeTable& table, std::uint64_t n, int k) {
  return lambda_k(table.factorize(n), k);
}

double binomial(int m, int k) {
  if (k < 0 || k > m) return 0.0;
  k = std::min(k, m - k);
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (m - k + i) / i;
  return c;
}

double sum_local_series(const std::function<double(int)>& term, double rel_tol,
                        int max_terms) {
  double sum = 0.0;
  double comp = 0.0;
  double prev = term(0);
  sum = prev;
  for (int j = 1; j < max_terms; ++j) {
    const double t = term(j);
    {
      const double y = t - comp;
      const double s = sum + y;
      comp = (s - sum) - y;
      sum = s;
    }
    if (prev > 0.0) {
      const double ratio = t / prev;
      // Once the ratio is below 1 and shrinking, the tail is dominated by a
      // geometric series with that ratio.
      if (ratio < 1.0 && t * ratio / (1.0 - ratio) <= rel_tol * std::abs(sum)) {
        return sum;
      }
    }
    if (t == 0.0 && prev == 0.0) return sum;
    prev = t;
  }
  return sum;
}

double shift_local_factor(std::uint64_t p, int e, int r, ShiftKind which) {
  if (r < 1) throw std::invalid_argument("shift_local_factor: r must be positive");
  if (e == 0) return 1.0;
  const double inv_p = 1.0 / static_cast<double>(p);
  auto tau = [r](int m) { return binomial(m + r - 1, r - 1); };
  double num = 0.0;
  double den = 0.0;
  if (which == ShiftKind::F1) {
    num = sum_local_series([&](int j) { return tau(e + j) * std::pow(inv_p, j); });
    den = sum_local_series([&](int j) { return tau(j) * std::pow(inv_p, j); });
  } else {
    num = sum_local_series([&](int j) { return tau(e + j) * tau(j) * std::pow(inv_p, j); });
    den = sum_local_series([&](int j) { return tau(j) * tau(j) * std::pow(inv_p, j); });
  }
  return num / den;
}

double f_shift(const Factorization& f, int r, ShiftKind which) {
  double out = 1.0;
  for (const auto& pp : f.factors()) out *= shift_local_factor(pp.prime, pp.exponent, r, which);
  return out;
}

double f_shift(const PrimeTable& table, std::uint64_t n, int r, ShiftKind which) {
  return f_shift(table.factorize(n), r, which);
}

double ArithFunctionTable::at(std::uint64_t n) const {
  if (n < 1 || n > limit()) {
    throw std::out_of_range("ArithFunctionTable '" + name + "': index " +
                            std::to_string(n) + " outside [1, " +
                            std::to_string(limit()) + "]");
  }
  return values[n];
}

ArithFunctionTable make_table(std::string name, std::uint64_t limit,
                              const std::function<double(std::uint64_t)>& fn) {
  ArithFunctionTable t;
  t.name = std::move(name);
  t.values.assign(limit + 1, 0.0);
  for (std::uint64_t n = 1; n <= limit; ++n) t.values[n] = fn(n);
  return t;
}

ArithFunctionTable delta_table(std::uint64_t limit) {
  auto t = make_table("delta", limit, [](std::uint64_t n) { return n == 1 ? 1.0 : 0.0; });
  t.support = "{1}";
  return t;
}

ArithFunctionTable unit_table(std::uint64_t limit) {
  auto t = make_table("one", limit, [](std::uint64_t) { return 1.0; });
  t.support = "all n";
  return t;
}

ArithFunctionTable log_power_table(std::uint64_t limit, int k) {
  auto t = make_table("log^" + std::to_string(k), limit, [k](std::uint64_t n) {
    return std::pow(std::log(static_cast<double>(n)), k);
  });
  t.support = "n >= 2";
  return t;
}

ArithFunctionTable mobius_table(const PrimeTable& table, std::uint64_t limit) {
  auto t = make_table("mu", limit, [&](std::uint64_t n) {
    return static_cast<double>(mobius(table, n));
  });
  t.support = "squarefree n";
  return t;
}

ArithFunctionTable tau_table(const PrimeTable& table, std::uint64_t limit, int k) {
  auto t = make_table("tau_" + std::to_string(k), limit, [&](std::uint64_t n) {
    return static_cast<double>(tau_k(table, n, k));
  });
  t.support = "all n";
  return t;
}

ArithFunctionTable lambda_table(const PrimeTable& table, std::uint64_t limit, int k) {
  if (k < 1) throw std::invalid_argument("lambda_table: k must be positive");
  auto t = dirichlet_convolve(mobius_table(table, limit), log_power_table(limit, k), limit);
  for (std::uint64_t n = 1; n <= limit; ++n) {
    if (n == 1 || table.factorize(n).omega() > k) t.values[n] = 0.0;
  }
  t.name = "Lambda_" + std::to_string(k);
  t.support = "omega(n) <= " + std::to_string(k);
  return t;
}

ArithFunctionTable f_shift_table(const PrimeTable& table, std::uint64_t limit, int r,
                                 ShiftKind which) {
  if (limit > table.limit()) throw std::invalid_argument("f_shift_table: limit exceeds prime table");
  ArithFunctionTable t;
  t.name = std::string(which == ShiftKind::F1 ? "f1" : "f2") + "_r" + std::to_string(r);
  t.support = "all n";
  t.values.assign(limit + 1, 0.0);
  if (limit >= 1) t.values[1] = 1.0;
  std::unordered_map<std::uint64_t, double> local;  // key p * 64 + e
  for (std::uint64_t n = 2; n <= limit; ++n) {
    const std::uint64_t p = table.smallest_factor(n);
    std::uint64_t m = n;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    const std::uint64_t key = p * 64 + static_cast<std::uint64_t>(e);
    auto it = local.find(key);
    if (it == local.end()) it = local.emplace(key, shift_local_factor(p, e, r, which)).first;
    t.values[n] = t.values[m] * it->second;
  }
  return t;
}

ArithFunctionTable dirichlet_convolve(const ArithFunctionTable& a,
                                      const ArithFunctionTable& b, std::uint64_t limit) {
  if (a.limit() < limit || b.limit() < limit) {
    throw std::invalid_argument("dirichlet_convolve: tables '" + a.name + "' (" +
                                std::to_string(a.limit()) + ") and '" + b.name + "' (" +
                                std::to_string(b.limit()) + ") do not reach " +
                                std::to_string(limit));
  }
  ArithFunctionTable c;
  c.name = "(" + a.name + "*" + b.name + ")";
  c.support = "derived";
  c.values.assign(limit + 1, 0.0);
  for (std::uint64_t d = 1; d <= limit; ++d) {
    const double ad = a.values[d];
    if (ad == 0.0) continue;
    for (std::uint64_t m = 1, n = d; n <= limit; ++m, n += d) {
      c.values[n] += ad * b.values[m];
    }
  }
  return c;
}

}  // namespace resonance::arith
