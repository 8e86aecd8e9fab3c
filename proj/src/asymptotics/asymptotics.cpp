#include "resonance/asymptotics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "resonance/numeric.hpp"

namespace resonance::asym {

namespace {

constexpr double kPi = std::numbers::pi;

double factorial(int n) { return std::tgamma(static_cast<double>(n) + 1.0); }

double tau_prime_power(int r, int e) { return arith::binomial(e + r - 1, r - 1); }

// tau_r(mn) from the factorizations of m and n.
double tau_of_product(const arith::Factorization& m, const arith::Factorization& n, int r) {
  auto fm = m.factors();
  auto fn = n.factors();
  double v = 1.0;
  std::size_t i = 0, j = 0;
  while (i < fm.size() || j < fn.size()) {
    if (j == fn.size() || (i < fm.size() && fm[i].prime < fn[j].prime)) {
      v *= tau_prime_power(r, fm[i++].exponent);
    } else if (i == fm.size() || fn[j].prime < fm[i].prime) {
      v *= tau_prime_power(r, fn[j++].exponent);
    } else {
      v *= tau_prime_power(r, fm[i++].exponent + fn[j++].exponent);
    }
  }
  return v;
}

// log of each constant's local factor at p:
// [C0, C0 first form, C1, C2].
std::array<double, 4> local_logs(std::uint64_t p, int r) {
  const double pd = static_cast<double>(p);
  const double l1p = std::log1p(-1.0 / pd);
  auto series = [&](auto&& term) {
    return arith::sum_local_series([&](int j) { return term(j + 1) / std::pow(pd, j + 1); });
  };
  const double d1 = series([&](int j) { return tau_prime_power(r, j) * tau_prime_power(r + 1, j); });
  const double d2 = series([&](int j) { return tau_prime_power(r, j) * tau_prime_power(r, j); });
  const double f1 = series([&](int j) {
    return tau_prime_power(r, j) * arith::shift_local_factor(p, j, r, arith::ShiftKind::F1);
  });
  const double rr = static_cast<double>(r);
  return {(rr * rr + rr) * l1p + std::log1p(d1), rr * rr * l1p + std::log1p(f1),
          rr * l1p + std::log1p(d1) - std::log1p(d2), rr * rr * l1p + std::log1p(d2)};
}

double check_x(double x) {
  if (!(x >= 2.0)) throw std::invalid_argument("mult_sum_check: x must be at least 2");
  if (x > 1e8) throw std::invalid_argument("mult_sum_check: x above 10^8");
  return std::floor(x);
}

}  // namespace

BetaCx beta_cx(int u, int v, double X) {
  if (u < 0 || v < 0 || u > 60 || v > 60) {
    throw std::invalid_argument("beta_cx: u and v must lie in [0, 60]");
  }
  if (!(X >= 1.0)) throw std::invalid_argument("beta_cx: X must be at least 1");
  // u! v! / (u+v+1)! = 1 / ((u+v+1) C(u+v, u)).
  long double binom = 1.0L;
  for (int k = 1; k <= u; ++k) binom = binom * (v + k) / k;
  BetaCx out;
  out.i_uv = static_cast<double>(1.0L / ((u + v + 1) * binom));
  out.c_X = std::pow(std::log(X), u + v + 1) * out.i_uv;
  return out;
}

ConstantSet constants(int r, std::uint64_t P) {
  if (r < 1 || r > 6) throw std::invalid_argument("constants: r must lie in [1, 6]");
  if (P < 2 || P > 100000000) throw std::invalid_argument("constants: P must lie in [2, 1e8]");
  const auto sums = arith::sum_over_primes(2, P, 4, [r](std::uint64_t p, std::span<double> acc) {
    const auto l = local_logs(p, r);
    for (int k = 0; k < 4; ++k) acc[k] += l[k];
  });
  ConstantSet c;
  c.r = r;
  c.prime_cutoff = P;
  c.C0 = std::exp(sums[0]);
  c.C0_first = std::exp(sums[1]);
  c.C1 = std::exp(sums[2]);
  c.C2 = std::exp(sums[3]);
  // Tail: local factors are 1 + O(1/p^2), so sum_{p > P} is about the first
  // omitted term times P / log P; doubled for safety.
  std::uint64_t next = P + 1;
  while (arith::factorize_trial(next).factors()[0].exponent != 1 ||
         arith::factorize_trial(next).omega() != 1) {
    ++next;
  }
  const auto l = local_logs(next, r);
  const double scale = 2.0 * static_cast<double>(next) / std::log(static_cast<double>(next));
  const double vals[4] = {c.C0, c.C0_first, c.C1, c.C2};
  for (int k = 0; k < 4; ++k) {
    c.truncation_error_estimate =
        std::max(c.truncation_error_estimate, vals[k] * std::expm1(std::abs(l[k]) * scale));
  }
  return c;
}

std::string mult_kind_name(MultKind kind) {
  static const char* names[] = {"i", "ii", "iii", "iv", "v", "vi", "vii"};
  return names[static_cast<int>(kind) - 1];
}

PredictionReport mult_sum_check(MultKind kind, int r, double x_in, const MultExtra& extra,
                                double tolerance) {
  if (r < 1 || r > 6) throw std::invalid_argument("mult_sum_check: r must lie in [1, 6]");
  const double x = check_x(x_in);
  const auto X = static_cast<std::uint64_t>(x);
  const double lx = std::log(x);
  const auto table = arith::build_prime_table(X);
  const auto which = extra.i == 2 ? arith::ShiftKind::F2 : arith::ShiftKind::F1;
  if ((kind == MultKind::VI || kind == MultKind::VII) && extra.i != 1 && extra.i != 2) {
    throw std::invalid_argument("mult_sum_check: i must be 1 or 2");
  }
  CompensatedSum<double> acc;
  double predicted = 0.0;
  std::ostringstream detail;
  detail << "kind " << mult_kind_name(kind) << ", r=" << r << ", x=" << x;
  const double rr = r;

  switch (kind) {
    case MultKind::I: {
      if (extra.u < 1) throw std::invalid_argument("mult_sum_check: u must be positive");
      const auto fu = arith::factorize_trial(extra.u);
      for (std::uint64_t n = 1; n <= X; ++n) acc += tau_of_product(table.factorize(n), fu, r);
      predicted = arith::f_shift(fu, r, arith::ShiftKind::F1) * x * std::pow(lx, r - 1) / factorial(r - 1);
      detail << ", u=" << extra.u;
      break;
    }
    case MultKind::II: {
      const auto f1 = arith::f_shift_table(table, X, r, arith::ShiftKind::F1);
      for (std::uint64_t n = 1; n <= X; ++n) {
        acc += static_cast<double>(arith::tau_k(table, n, r)) * f1[n];
      }
      const auto c = constants(r, extra.prime_cutoff);
      predicted = c.C0 * x * std::pow(lx, r * r - 1) / factorial(r * r - 1);
      break;
    }
    case MultKind::III: {
      const auto f2 = arith::f_shift_table(table, X, r, arith::ShiftKind::F2);
      for (std::uint64_t n = 1; n <= X; ++n) acc += f2[n];
      const auto c = constants(r, extra.prime_cutoff);
      predicted = c.C1 * x * std::pow(lx, r - 1) / factorial(r - 1);
      break;
    }
    case MultKind::IV: {
      if (extra.a < 1 || extra.b < 1 || std::gcd(extra.a, extra.b) != 1) {
        throw std::invalid_argument("mult_sum_check: kind iv needs coprime a, b >= 1");
      }
      const auto fa = arith::factorize_trial(extra.a);
      const auto fb = arith::factorize_trial(extra.b);
      for (std::uint64_t n = 1; n <= X; ++n) {
        const auto fn = table.factorize(n);
        acc += tau_of_product(fn, fa, r) * tau_of_product(fn, fb, r) / static_cast<double>(n);
      }
      const auto c = constants(r, extra.prime_cutoff);
      predicted = c.C2 * arith::f_shift(fa, r, arith::ShiftKind::F2) *
                  arith::f_shift(fb, r, arith::ShiftKind::F2) * std::pow(lx, r * r) /
                  factorial(r * r);
      detail << ", a=" << extra.a << ", b=" << extra.b;
      break;
    }
    case MultKind::V: {
      if (extra.k < 1) throw std::invalid_argument("mult_sum_check: k must be positive");
      const auto lam = arith::lambda_table(table, X, extra.k);
      for (std::uint64_t n = 1; n <= X; ++n) acc += lam[n];
      predicted = extra.k * x * std::pow(lx, extra.k - 1);
      detail << ", k=" << extra.k;
      break;
    }
    case MultKind::VI: {
      for (const auto p32 : table.primes()) {
        const std::uint64_t p = p32;
        const double lp = std::log(static_cast<double>(p));
        int e = 1;
        for (std::uint64_t q = p; q <= X; ++e) {
          acc += lp * arith::shift_local_factor(p, e, r, which);
          if (q > X / p) break;
          q *= p;
        }
      }
      predicted = rr * x;
      detail << ", f_" << extra.i;
      break;
    }
    case MultKind::VII: {
      const auto fi = arith::f_shift_table(table, X, r, which);
      for (std::uint64_t n = 2; n <= X; ++n) {
        const auto fn = table.factorize(n);
        if (fn.omega() > 2) continue;
        acc += arith::lambda_k(fn, 2) * fi[n];
      }
      predicted = (rr * rr + rr) * x * lx;
      detail << ", f_" << extra.i;
      break;
    }
  }
  return make_ratio_report("lemma_mult_" + mult_kind_name(kind), acc.value(), predicted, tolerance,
                           detail.str());
}

MainTermModel make_main_term_model(double T, double theta, int r) {
  if (!(T > 2.0 * kPi)) throw std::invalid_argument("MainTermModel: T must exceed 2 pi");
  if (!(theta > 0.0 && theta < 0.5)) throw std::invalid_argument("MainTermModel: need 0 < theta < 1/2");
  if (r < 1) throw std::invalid_argument("MainTermModel: r must be positive");
  return {T, theta, r, theta * std::log(T), true};
}

double n_smooth(double T) { return T / (2.0 * kPi) * std::log(T / (2.0 * kPi * std::numbers::e)) + 0.875; }

double r0_weight(double T, std::uint64_t n, const arith::PrimeTable& table) {
  const double L = std::log(T / (2.0 * kPi));
  const double ln = std::log(static_cast<double>(n));
  // (Lambda * log)(n) = sum over p^k | n of log p log(n / p^k).
  double conv = 0.0;
  const auto f = table.factorize(n);
  for (const auto& pp : f.factors()) {
    const double lp = std::log(static_cast<double>(pp.prime));
    for (int k = 1; k <= pp.exponent; ++k) conv += lp * (ln - k * lp);
  }
  return 0.5 * L * L - L * ln - 0.5 * ln * ln + conv;
}

double g_weight(double T, std::uint64_t d, const arith::PrimeTable& table) {
  const double L = std::log(T / (2.0 * kPi));
  const auto f = table.factorize(d);
  return -(L + std::log(static_cast<double>(d))) * arith::lambda_k(f, 1) +
         0.5 * arith::lambda_k(f, 2);
}

double r1_weight(double T, std::uint64_t a, std::uint64_t b, const arith::PrimeTable& table) {
  const auto f = table.factorize(a);
  return 0.5 * arith::lambda_k(f, 2) - std::log(T / static_cast<double>(b)) * arith::lambda_k(f, 1);
}

double predict_S2(const arith::ArithFunctionTable& x, double T, std::uint64_t M) {
  if (x.limit() < M || M < 1) throw std::invalid_argument("predict_S2: table shorter than M");
  CompensatedSum<double> diag, twist;
  for (std::uint64_t m = 1; m <= M; ++m) diag += x[m] * x[m] / static_cast<double>(m);
  if (M >= 2) {
    const auto table = arith::build_prime_table(M);
    const auto lam = arith::lambda_table(table, M, 1);
    const auto conv = arith::dirichlet_convolve(lam, x, M);
    for (std::uint64_t m = 2; m <= M; ++m) twist += conv[m] * x[m] / static_cast<double>(m);
  }
  return n_smooth(T) * diag.value() - T / kPi * twist.value();
}

double predict_S1(const arith::ArithFunctionTable& x, double T, std::uint64_t M, double theta) {
  if (!(theta > 0.0 && theta < 0.5)) throw std::invalid_argument("predict_S1: need 0 < theta < 1/2");
  if (x.limit() < M || M < 1) throw std::invalid_argument("predict_S1: table shorter than M");
  const auto table = arith::build_prime_table(std::max<std::uint64_t>(M, 2));
  std::vector<double> r0(M + 1);
  for (std::uint64_t n = 1; n <= M; ++n) r0[n] = r0_weight(T, n, table);

  CompensatedSum<double> first;
  for (std::uint64_t u = 1; u <= M; ++u) {
    if (x[u] == 0.0) continue;
    for (std::uint64_t n = 1; n <= M / u; ++n) {
      const double xnu = x[n * u];
      if (xnu != 0.0) first += x[u] * xnu * r0[n] / static_cast<double>(n * u);
    }
  }

  // a runs over the support of Lambda and Lambda_2 (omega(a) <= 2).
  CompensatedSum<double> second;
  for (std::uint64_t a = 2; a <= M; ++a) {
    const auto fa = table.factorize(a);
    if (fa.omega() > 2) continue;
    const double lam1 = arith::lambda_k(fa, 1);
    const double lam2 = arith::lambda_k(fa, 2);
    for (std::uint64_t g = 1; g <= M / a; ++g) {
      const double xag = x[a * g];
      if (xag == 0.0) continue;
      for (std::uint64_t b = 1; b <= M / g; ++b) {
        const double xbg = x[b * g];
        if (xbg == 0.0 || std::gcd(a, b) != 1) continue;
        const double r1 = 0.5 * lam2 - std::log(T / static_cast<double>(b)) * lam1;
        second += r1 * xag * xbg / (static_cast<double>(a) * static_cast<double>(b) *
                                    static_cast<double>(g));
      }
    }
  }
  return T / (2.0 * kPi) * (first.value() + second.value());
}

double predict_S3(const arith::ArithFunctionTable& x, double T1, double T2, std::uint64_t M) {
  if (!(T1 < T2)) throw std::invalid_argument("predict_S3: need T1 < T2");
  if (x.limit() < M || M < 1) throw std::invalid_argument("predict_S3: table shorter than M");
  const auto table = arith::build_prime_table(std::max<std::uint64_t>(M, 2));
  CompensatedSum<double> s;
  for (std::uint64_t h = 1; h <= M; ++h) {
    if (x[h] == 0.0) continue;
    for (std::uint64_t n = 1; n <= M / h; ++n) {
      const double xnh = x[n * h];
      if (xnh == 0.0) continue;
      const int mu = arith::mobius(table, n);
      if (mu != 0) s += mu * x[h] * xnh / static_cast<double>(n * h);
    }
  }
  return (T2 - T1) / (2.0 * kPi) * s.value();
}

Theorem1Bound theorem1_bound(int r, double theta, double logM, const ConstantSet& c) {
  if (!(theta > 0.0 && theta < 0.5)) throw std::invalid_argument("theorem1_bound: need 0 < theta < 1/2");
  if (r < 1) throw std::invalid_argument("theorem1_bound: r must be positive");
  if (!(logM > 0.0)) throw std::invalid_argument("theorem1_bound: logM must be positive");
  const double R = r;
  const double q = R * R + R + 2.0;  // r^2 + r + 2
  Theorem1Bound b;
  b.r = r;
  b.theta = theta;
  b.logM = logM;
  b.T1_term = q * (R * R + R + 1.0) / (theta * theta);
  b.T2_term = (R * R - R) / 2.0 - R / theta * q;
  b.T3p_term = (R * R + 5.0 * R) * (R + 1.0) * R / 4.0 - R * R * q / theta;
  b.T3pp_term = ((R * R + R) * (R + 1.0) / 2.0 + R * R) - R * q / theta;
  b.assembled = b.T1_term + b.T2_term + b.T3p_term + b.T3pp_term;
  b.lower = q / (theta * theta) * (R * R + R + 1.0 - theta * (R * R + 2.0 * R));
  b.S1_lower_coeff = c.C0 * b.lower / factorial(r * r + r + 2);
  b.S2_upper_coeff = c.C2 / (2.0 * kPi * theta * factorial(r * r));
  b.ratio_exponent = r + 1;
  b.ratio_lower = b.S1_lower_coeff / b.S2_upper_coeff * std::pow(logM, r + 1);
  return b;
}

Theorem1Bound theorem1_bound(int r, double theta, double logM) {
  return theorem1_bound(r, theta, logM, constants(r, 1000000));
}

}  // namespace resonance::asym
