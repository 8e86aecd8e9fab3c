#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "doctest.h"
#include "resonance/errors.hpp"
#include "resonance/resonator.hpp"

using namespace resonance;
using namespace resonance::reso;

namespace {

arith::ArithFunctionTable vec_table(const std::vector<double>& v) {
  arith::ArithFunctionTable t;
  t.name = "x";
  t.values.push_back(0.0);
  t.values.insert(t.values.end(), v.begin(), v.end());
  return t;
}

// Every pair (n, u) with n u <= M, no divisor structure used.
double brute_pairs(const arith::ArithFunctionTable& x, std::uint64_t M) {
  long double s = 0;
  for (std::uint64_t n = 1; n <= M; ++n) {
    for (std::uint64_t u = 1; u <= M; ++u) {
      if (n * u > M) break;
      s += x[u] * x[n * u] / std::sqrt(static_cast<long double>(n));
    }
  }
  return static_cast<double>(s);
}

double dense_top_eigenvalue(int M) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(M, M);
  for (int a = 1; a <= M; ++a) {
    for (int b = 2 * a; b <= M; b += a) {
      A(a - 1, b - 1) = A(b - 1, a - 1) = 0.5 * std::sqrt(static_cast<double>(a) / b);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  return es.eigenvalues().maxCoeff();
}

}  // namespace

TEST_CASE("resonator parameters") {
  const auto p100 = make_params(100.0);
  CHECK(p100.L == doctest::Approx(21.4597).epsilon(1e-5));
  CHECK(p100.support_lo == doctest::Approx(460.5).epsilon(1e-4));
  // exp((log L)^2) with log L = log(100 log 100) / 2 is 12105.7; the rounded
  // figure 12122 is within 0.2%.
  const double half_log = 0.5 * std::log(100.0 * std::log(100.0));
  CHECK(p100.support_hi == doctest::Approx(std::exp(half_log * half_log)).epsilon(1e-13));
  CHECK(p100.support_hi == doctest::Approx(12122).epsilon(2e-3));
  CHECK_FALSE(p100.empty_window);

  const auto p19 = make_params(19.0);
  CHECK(p19.support_lo == doctest::Approx(55.94).epsilon(1e-3));
  CHECK(p19.support_hi == doctest::Approx(57.35).epsilon(1e-3));
  CHECK(p19.empty_window);

  const auto p25 = make_params(25.0);
  CHECK(p25.support_lo == doctest::Approx(80.5).epsilon(1e-3));
  CHECK(p25.support_hi == doctest::Approx(123.2).epsilon(1e-3));
  const Resonator r25(p25, 200);
  CHECK(r25.window_primes() ==
        std::vector<std::uint64_t>{83, 89, 97, 101, 103, 107, 109, 113});

  CHECK_THROWS_AS(make_params(2.7), std::invalid_argument);
  CHECK_THROWS_AS(make_params(-1.0), std::invalid_argument);
}

TEST_CASE("resonator coefficients") {
  const auto p = make_params(25.0);
  CHECK(resonator_coeff(1, p) == 1.0);
  CHECK(resonator_coeff(83, p) == doctest::Approx(p.L / (std::sqrt(83.0) * std::log(83.0))));
  CHECK(resonator_coeff(83 * 83, p) == 0.0);
  CHECK(resonator_coeff(79, p) == 0.0);
  CHECK(resonator_coeff(83 * 89, p) ==
        doctest::Approx(resonator_coeff(83, p) * resonator_coeff(89, p)));
  CHECK(resonator_coeff(2 * 83, p) == 0.0);

  const Resonator r(p, 10000);
  CHECK(r.coeffs().front() == std::pair<std::uint64_t, double>{1, 1.0});
  // 1, eight primes and the C(8,2) products below 10^4 that fit.
  std::size_t products = 0;
  const auto& ps = r.window_primes();
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) products += ps[i] * ps[j] <= 10000;
  CHECK(r.coeffs().size() == 1 + ps.size() + products);
  for (const auto& [n, f] : r.coeffs()) CHECK(f == doctest::Approx(resonator_coeff(n, p)));

  const auto path = std::filesystem::temp_directory_path() / "resonance_test_reso.csv";
  r.write_csv(path);
  std::ifstream in(path);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == r.coeffs().size() + 1);
  std::filesystem::remove(path);

  const auto mu = r.table(Weighting::SqrtNMuF);
  CHECK(mu[83] < 0.0);
  CHECK(mu[83 * 89] > 0.0);
  CHECK(mu[1] == 1.0);
}

TEST_CASE("quadform examples") {
  CHECK(quadform(vec_table({2.5}), 1).ratio == doctest::Approx(1.0));
  const auto q = quadform(vec_table({1.0, 1.0}), 2);
  CHECK(q.numerator == doctest::Approx(2.0 + 1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(q.ratio == doctest::Approx(1.35355).epsilon(1e-5));
  for (std::uint64_t M : {1u, 7u, 1000u}) {
    CHECK(quadform(arith::delta_table(M), M).ratio == 1.0);
  }
  CHECK_THROWS_AS(quadform(vec_table({0.0, 0.0}), 2), DegenerateInput);
  CHECK_THROWS_AS(quadform(vec_table({1.0}), 2), std::invalid_argument);

  const auto x = vec_table({1.0, 1.0});
  CHECK(weighted_quadform(x, 2, 0, PairWeight::LogPower) == doctest::Approx(q.numerator));
  CHECK(weighted_quadform(x, 2, 1, PairWeight::LogPower) ==
        doctest::Approx(std::log(2.0) / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(weighted_quadform(arith::delta_table(100), 100, 0, PairWeight::Lambda) == 0.0);
  // (Lambda * log)(2) = 0 and (Lambda * log)(4) = log(2)^2.
  CHECK(weighted_quadform(x, 2, 0, PairWeight::LambdaLog) == 0.0);
  CHECK(weighted_quadform(vec_table({1.0, 0.0, 0.0, 1.0}), 4, 0, PairWeight::LambdaLog) ==
        doctest::Approx(std::log(2.0) * std::log(2.0) / 2.0).epsilon(1e-14));
}

TEST_CASE("quadform matches the brute-force pair loop") {
  const auto p = make_params(25.0);
  const Resonator r(p, 10000);
  const auto x = r.table(Weighting::SqrtNF);
  for (std::uint64_t M : {100u, 2000u, 10000u}) {
    CHECK(quadform(x, M).numerator == doctest::Approx(brute_pairs(x, M)).epsilon(1e-12));
  }
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(3000);
  for (auto& e : v) e = u(rng);
  const auto t = vec_table(v);
  CHECK(quadform(t, 3000).numerator == doctest::Approx(brute_pairs(t, 3000)).epsilon(1e-10));
}

TEST_CASE("spectral oracle") {
  CHECK(eigen_optimal_ratio(1).ratio == doctest::Approx(1.0));
  CHECK(eigen_optimal_ratio(2).ratio == doctest::Approx(1.0 + 1.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-12));
  for (int M : {5, 17, 50}) {
    const auto r = eigen_optimal_ratio(M);
    CHECK(std::abs(r.ratio - dense_top_eigenvalue(M)) < 1e-8);
    CHECK(r.residual <= 1e-10);
    // The eigenvector itself attains the ratio.
    CHECK(quadform(vec_table(r.x_opt), M).ratio == doctest::Approx(r.ratio).epsilon(1e-10));
  }
  CHECK_THROWS_AS(eigen_optimal_ratio(0), ResourceLimit);
  CHECK_THROWS_AS(eigen_optimal_ratio(5001), ResourceLimit);

  // No explicit vector beats the oracle.
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int M : {10, 50, 400}) {
    const double best = eigen_optimal_ratio(M).ratio;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> v(M);
      for (auto& e : v) e = u(rng);
      CHECK(quadform(vec_table(v), M).ratio <= best + 1e-12);
    }
    const auto tau = arith::tau_table(arith::build_prime_table(std::max(M, 2)), M, 2);
    CHECK(quadform(tau, M).ratio <= best + 1e-12);
    CHECK(quadform(arith::unit_table(M), M).ratio <= best + 1e-12);
  }
  const auto res = Resonator(make_windowed_params(25.0, 2, 50), 400).table(Weighting::SqrtNF);
  CHECK(quadform(res, 400).ratio <= eigen_optimal_ratio(400).ratio + 1e-12);
}

TEST_CASE("resonator lemma sums") {
  for (auto [lo, hi] : {std::pair{83.0, 113.0}, {2.0, 30.0}, {1000.0, 1100.0}}) {
    const auto p = make_windowed_params(25.0, lo, hi);
    const auto ii = lemma_reso_sums(ResoKind::II, p, 100000);
    CHECK(ii.numeric <= ii.reference);
  }
  const auto single = make_windowed_params(25.0, 83, 83);
  const auto i = lemma_reso_sums(ResoKind::I, single, 1000);
  const double f = resonator_coeff(83, single);
  CHECK(i.numeric == doctest::Approx(1 + f * f + f / std::sqrt(83.0)).epsilon(1e-14));
  CHECK(i.reference == doctest::Approx(i.numeric).epsilon(1e-14));

  const auto empty = make_params(19.0);
  const auto iv = lemma_reso_sums(ResoKind::IV_1, empty, 1000, 50.0);
  CHECK(iv.degenerate);
  CHECK(iv.numeric == 0.0);
  CHECK(lemma_reso_sums(ResoKind::II, empty, 1000).numeric == 1.0);

  const auto p = make_params(25.0);
  const auto iv1 = lemma_reso_sums(ResoKind::IV_1, p, 100000, 100.0);
  double expect = 0.0;
  for (std::uint64_t q : {83, 89, 97, 101, 103, 107, 109, 113}) {
    const double fq = resonator_coeff(q, p);
    expect += std::log(static_cast<double>(q)) * fq / (std::sqrt(static_cast<double>(q)) * (1 + fq * fq));
  }
  CHECK(iv1.numeric == doctest::Approx(expect).epsilon(1e-13));
  CHECK(iv1.reference == doctest::Approx(10.0));
  const auto iv2 = lemma_reso_sums(ResoKind::IV_2, p, 100000, 100.0);
  CHECK(iv2.numeric > iv1.numeric);
}

TEST_CASE("Euler products") {
  const auto e = euler_products(make_params(19.0), PrimeMode::ExactSieve);
  CHECK(e.logQ1 == 0.0);
  CHECK(e.logQ2 == 0.0);

  const auto single = make_windowed_params(25.0, 83, 83);
  const auto s = euler_products(single, PrimeMode::ExactSieve);
  const double f = resonator_coeff(83, single);
  CHECK(s.logQ2 == doctest::Approx(std::log1p(f * f)));

  double prev = 0.0;
  for (double lm : {400.0, 600.0, 1000.0}) {
    const auto p = make_params(lm);
    const auto ex = euler_products(p, PrimeMode::ExactSieve);
    const auto pn = euler_products(p, PrimeMode::PntIntegral);
    if (lm == 400.0) CHECK(std::abs(ex.ratio() - 0.37) < 0.05);
    CHECK(ex.ratio() > prev);
    CHECK(std::abs((pn.logQ1 - pn.logQ2) / (ex.logQ1 - ex.logQ2) - 1.0) < 0.15);
    prev = ex.ratio();
  }
  const auto p300 = make_params(300.0);
  const auto ex300 = euler_products(p300, PrimeMode::ExactSieve);
  const auto pn300 = euler_products(p300, PrimeMode::PntIntegral);
  CHECK(std::abs((pn300.logQ1 - pn300.logQ2) / (ex300.logQ1 - ex300.logQ2) - 1.0) < 0.15);

  prev = 0.0;
  for (double lm : {1e3, 1e6, 1e12}) {
    const double r = euler_products(make_params(lm), PrimeMode::PntIntegral).ratio();
    CHECK(r > prev);
    CHECK(r < 1.1);
    prev = r;
  }
  CHECK_THROWS_AS(euler_products(make_params(3000.0), PrimeMode::ExactSieve), ResourceLimit);
}
