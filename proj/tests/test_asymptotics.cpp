#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "resonance/asymptotics.hpp"

using namespace resonance;
using namespace resonance::asym;

namespace {

constexpr double kPi = std::numbers::pi;

arith::ArithFunctionTable vec_table(const std::vector<double>& v) {
  arith::ArithFunctionTable t;
  t.name = "x";
  t.values.push_back(0.0);
  t.values.insert(t.values.end(), v.begin(), v.end());
  return t;
}

arith::ArithFunctionTable scaled(arith::ArithFunctionTable t, double c) {
  for (auto& v : t.values) v *= c;
  return t;
}

// Direct prime-by-prime product, no logs, no shared helpers.
double naive_C2(int r, std::uint64_t P) {
  double prod = 1.0;
  for (auto p : arith::primes_in_range(2, P)) {
    const double pd = static_cast<double>(p);
    double local = 0.0;
    for (int j = 0; j < 200; ++j) {
      const double t = arith::binomial(j + r - 1, r - 1);
      local += t * t * std::pow(pd, -j);
    }
    prod *= std::pow(1.0 - 1.0 / pd, r * r) * local;
  }
  return prod;
}

}  // namespace

TEST_CASE("beta integrals") {
  CHECK(beta_cx(0, 0, 10.0).i_uv == 1.0);
  CHECK(beta_cx(1, 1, 10.0).i_uv == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(beta_cx(1, 1, std::numbers::e).c_X == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  using boost::math::quadrature::gauss_kronrod;
  for (int u = 0; u <= 10; ++u) {
    for (int v = 0; v <= 10; ++v) {
      const double q = gauss_kronrod<double, 61>::integrate(
          [&](double t) { return std::pow(t, u) * std::pow(1.0 - t, v); }, 0.0, 1.0, 10, 1e-14);
      CHECK(std::abs(beta_cx(u, v, 1.0).i_uv - q) <= 1e-10 * std::max(1.0, q) + 1e-16);
      CHECK(beta_cx(u, v, 5.0).c_X == doctest::Approx(std::pow(std::log(5.0), u + v + 1) * q).epsilon(1e-10));
    }
  }
  CHECK(beta_cx(7, 3, 2.0).i_uv == doctest::Approx(beta_cx(3, 7, 2.0).i_uv).epsilon(1e-15));
  CHECK_THROWS_AS(beta_cx(61, 0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(beta_cx(0, 0, 0.5), std::invalid_argument);
}

TEST_CASE("Euler-product constants") {
  const auto c1 = constants(1, 1000000);
  CHECK(c1.C0 == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(c1.C1 == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(c1.C2 == doctest::Approx(1.0).epsilon(1e-6));
  for (int r = 1; r <= 4; ++r) {
    const auto c = constants(r, 1000000);
    CHECK(c.C0 > 0.0);
    CHECK(c.C1 > 0.0);
    CHECK(c.C2 > 0.0);
    CHECK(std::abs(c.C0 - c.C1 * c.C2) <= std::max(c.truncation_error_estimate, 1e-12 * c.C0));
    CHECK(c.C0 / (c.C1 * c.C2) == doctest::Approx(1.0).epsilon(1e-3));
  }
  const auto c3 = constants(3, 1000000);
  CHECK(c3.C0_first == doctest::Approx(c3.C0).epsilon(1e-3));
  // r = 2: C2 = prod (1-1/p)^4 (1+1/p)/(1-1/p)^3 = 6/pi^2.
  const auto c2 = constants(2, 1000000);
  CHECK(c2.C2 == doctest::Approx(6.0 / (kPi * kPi)).epsilon(1e-5));
  CHECK(constants(3, 2000).C2 == doctest::Approx(naive_C2(3, 2000)).epsilon(1e-10));
  CHECK(constants(2, 1000).truncation_error_estimate > constants(2, 100000).truncation_error_estimate);
  CHECK_THROWS_AS(constants(7, 1000), std::invalid_argument);
  CHECK_THROWS_AS(constants(2, 1), std::invalid_argument);
}

TEST_CASE("multiplicative sums against main terms") {
  const auto v = mult_sum_check(MultKind::V, 1, 1e6, MultExtra{.k = 2});
  CHECK(v.pass);
  CHECK(v.label == "lemma_mult_v");
  const auto i = mult_sum_check(MultKind::I, 2, 1e6, MultExtra{.u = 1});
  CHECK(i.pass);
  const auto iv = mult_sum_check(MultKind::IV, 2, 1e6, MultExtra{.a = 1, .b = 1}, 0.20);
  INFO("kind iv ratio " << iv.ratio);
  // Lower-order terms of degree 3 in log x still dominate at 10^6.
  CHECK(iv.ratio > 1.0);
  CHECK_THROWS_AS(mult_sum_check(MultKind::IV, 2, 1e4, MultExtra{.a = 2, .b = 4}),
                  std::invalid_argument);
  CHECK_THROWS_AS(mult_sum_check(MultKind::V, 2, 2e8), std::invalid_argument);

  // r = 1 collapses kinds i, ii, iii to sum 1 = floor(x).
  for (auto k : {MultKind::I, MultKind::II, MultKind::III}) {
    CHECK(mult_sum_check(k, 1, 12345.0).numeric == doctest::Approx(12345.0).epsilon(1e-14));
  }
  // sum_{n <= 10} tau(n) = 27.
  CHECK(mult_sum_check(MultKind::I, 2, 10.0).numeric == doctest::Approx(27.0).epsilon(1e-14));
  // sum_{n <= 10} Lambda(n) = log 2520.
  CHECK(mult_sum_check(MultKind::V, 1, 10.0, MultExtra{.k = 1}).numeric ==
        doctest::Approx(std::log(2520.0)).epsilon(1e-14));

  // Approach to 1 for the kinds that converge like 1/log x at small degree.
  for (auto [kind, r] : std::vector<std::pair<MultKind, int>>{
           {MultKind::I, 2}, {MultKind::I, 3}, {MultKind::VI, 2}, {MultKind::VII, 2}}) {
    double prev = 1e300;
    for (double x : {1e4, 1e5, 1e6}) {
      const double dev = std::abs(mult_sum_check(kind, r, x).ratio - 1.0);
      CHECK(dev <= prev + 0.02);
      prev = dev;
    }
  }
}

TEST_CASE("leading-order weights") {
  const auto table = arith::build_prime_table(1000);
  const double T = 5000.0;
  const double L = std::log(T / (2 * kPi));
  CHECK(r0_weight(T, 1, table) == doctest::Approx(0.5 * L * L).epsilon(1e-15));
  CHECK(g_weight(T, 1, table) == 0.0);
  CHECK(g_weight(T, 6, table) == doctest::Approx(std::log(2.0) * std::log(3.0)).epsilon(1e-14));
  CHECK(g_weight(1e9, 6, table) == doctest::Approx(std::log(2.0) * std::log(3.0)).epsilon(1e-14));
  CHECK(r1_weight(T, 1, 1, table) == 0.0);
  // r0(n) = L^2/2 + sum_{d | n} g(d).
  for (std::uint64_t n = 1; n <= 300; ++n) {
    double s = 0.5 * L * L;
    for (std::uint64_t d = 1; d <= n; ++d) {
      if (n % d == 0) s += g_weight(T, d, table);
    }
    CHECK(r0_weight(T, n, table) == doctest::Approx(s).epsilon(1e-11).scale(L * L));
  }
  CHECK(n_smooth(5000.0) == doctest::Approx(5000.0 / (2 * kPi) * std::log(5000.0 / (2 * kPi * std::numbers::e)) + 0.875));
}

TEST_CASE("S1 / S2 / S3 predictions") {
  const double T = 10000.0;
  const double L = std::log(T / (2 * kPi));
  const auto delta = arith::delta_table(20);
  CHECK(predict_S1(delta, T, 20, 0.3) == doctest::Approx(T / (4 * kPi) * L * L).epsilon(1e-15));
  CHECK(predict_S2(delta, T, 20) == doctest::Approx(n_smooth(T)).epsilon(1e-15));
  CHECK(predict_S3(delta, 1000.0, 2000.0, 20) == doctest::Approx(1000.0 / (2 * kPi)).epsilon(1e-15));
  const auto two = vec_table({1.0, 1.0});
  CHECK(predict_S3(two, 1000.0, 2000.0, 2) == doctest::Approx(1000.0 / (2 * kPi)).epsilon(1e-14));
  const auto no_one = vec_table({0.0, 1.0, 1.0});
  // Only (h, n) = (2, 1) and (3, 1) survive: 1/2 + 1/3.
  CHECK(predict_S3(no_one, 1.0, 1.0 + 2 * kPi, 3) == doctest::Approx(5.0 / 6.0).epsilon(1e-14));

  const auto x = vec_table({1.0, 0.5, -0.3, 0.8, 0.2, 1.1, 0.0, 0.4, -0.7, 0.9});
  for (double c : {2.0, -3.0}) {
    const auto cx = scaled(x, c);
    CHECK(predict_S2(cx, T, 10) == doctest::Approx(c * c * predict_S2(x, T, 10)).epsilon(1e-13));
    CHECK(predict_S3(cx, 1000.0, 2000.0, 10) ==
          doctest::Approx(c * c * predict_S3(x, 1000.0, 2000.0, 10)).epsilon(1e-13));
    CHECK(predict_S1(cx, T, 10, 0.25) == doctest::Approx(c * c * predict_S1(x, T, 10, 0.25)).epsilon(1e-13));
  }

  // Same double sum, enumerated over (g, b, a) instead of (a, g, b).
  const auto table = arith::build_prime_table(10);
  double first = 0.0, second = 0.0;
  for (std::uint64_t u = 1; u <= 10; ++u) {
    for (std::uint64_t n = 1; n * u <= 10; ++n) first += x[u] * x[n * u] * r0_weight(T, n, table) / double(n * u);
  }
  for (std::uint64_t g = 1; g <= 10; ++g) {
    for (std::uint64_t b = 1; b * g <= 10; ++b) {
      for (std::uint64_t a = 1; a * g <= 10; ++a) {
        if (std::gcd(a, b) != 1) continue;
        second += r1_weight(T, a, b, table) * x[a * g] * x[b * g] / double(a * b * g);
      }
    }
  }
  CHECK(predict_S1(x, T, 10, 0.25) == doctest::Approx(T / (2 * kPi) * (first + second)).epsilon(1e-12));

  // S2 by its definition with the explicit convolution.
  const auto lam = arith::lambda_table(table, 10, 1);
  double diag = 0.0, twist = 0.0;
  for (std::uint64_t m = 1; m <= 10; ++m) {
    diag += x[m] * x[m] / double(m);
    double conv = 0.0;
    for (std::uint64_t d = 1; d <= m; ++d) {
      if (m % d == 0) conv += lam[d] * x[m / d];
    }
    twist += conv * x[m] / double(m);
  }
  CHECK(predict_S2(x, T, 10) == doctest::Approx(n_smooth(T) * diag - T / kPi * twist).epsilon(1e-13));

  CHECK_THROWS_AS(predict_S1(x, T, 10, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(predict_S3(x, 2000.0, 1000.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(predict_S2(x, T, 11), std::invalid_argument);
}

TEST_CASE("assembled lower bound") {
  for (int r = 1; r <= 6; ++r) {
    for (double theta : {0.01, 0.1, 0.25, 0.4, 0.499}) {
      const auto b = theorem1_bound(r, theta, 100.0, constants(r, 1000));
      CHECK(b.lower > 0.0);
      CHECK(b.S1_lower_coeff > 0.0);
      CHECK(b.S2_upper_coeff > 0.0);
      CHECK(b.ratio_exponent == r + 1);
      CHECK(b.assembled == doctest::Approx(b.T1_term + b.T2_term + b.T3p_term + b.T3pp_term));
    }
  }
  CHECK(theorem1_bound(1, 0.3, 50.0).ratio_exponent == 2);
  const auto b1 = theorem1_bound(1, 0.3, 50.0);
  const auto b2 = theorem1_bound(1, 0.3, 100.0);
  CHECK(b2.ratio_lower / b1.ratio_lower == doctest::Approx(4.0).epsilon(1e-12));

  // T2 coefficient through the Beta integrals with log X = 1.
  const int r = 2;
  const double theta = 1.0 / 3.0;
  const int n = r * r + r;
  const double e = std::numbers::e;
  const double via_beta =
      (0.5 * (r * r - r) * beta_cx(n, 1, e).c_X - r / theta * beta_cx(n, 0, e).c_X) / std::tgamma(n + 1.0);
  const auto b = theorem1_bound(r, theta, 10.0, constants(r, 1000));
  CHECK(b.T2_term / std::tgamma(n + 3.0) == doctest::Approx(via_beta).epsilon(1e-12));

  CHECK_THROWS_AS(theorem1_bound(2, 0.5, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(theorem1_bound(0, 0.2, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(make_main_term_model(5000.0, 0.6), std::invalid_argument);
  CHECK(make_main_term_model(5000.0, 0.25).logM == doctest::Approx(0.25 * std::log(5000.0)));
}
