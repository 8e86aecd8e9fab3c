#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "resonance/dirichlet.hpp"
#include "resonance/errors.hpp"
#include "resonance/zeros.hpp"
#include "resonance/zeta.hpp"

using namespace resonance::zeta;
using Cx = std::complex<double>;
using CxL = std::complex<long double>;

namespace {

// Fixed-order Euler-Maclaurin in long double with tabulated Bernoulli numbers.
CxL em_oracle(CxL s, int N) {
  static const long double bern[] = {1.0L / 6, -1.0L / 30, 1.0L / 42, -1.0L / 30,
                                     5.0L / 66, -691.0L / 2730, 7.0L / 6};
  CxL sum = 0;
  for (int n = 1; n < N; ++n) sum += std::pow(static_cast<long double>(n), -s);
  const long double Nl = N;
  sum += std::pow(Nl, 1.0L - s) / (s - 1.0L) + 0.5L * std::pow(Nl, -s);
  CxL poly = s;
  long double fact = 2;  // (2k)!
  for (int k = 1; k <= 7; ++k) {
    sum += bern[k - 1] / fact * poly * std::pow(Nl, -s - static_cast<long double>(2 * k - 1));
    poly *= (s + static_cast<long double>(2 * k - 1)) * (s + static_cast<long double>(2 * k));
    fact *= (2 * k + 1) * (2 * k + 2);
  }
  return sum;
}

// Plain Dirichlet series with an integral tail, for Re s > 1.
Cx direct_series(Cx s, int N) {
  Cx sum = 0;
  for (int n = N - 1; n >= 1; --n) sum += std::pow(static_cast<double>(n), -s);
  const double Nd = N;
  return sum + std::pow(Nd, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(Nd, -s);
}

// Bisection on Hardy's Z computed as a rotated Euler-Maclaurin value.
double bisect_first_zero() {
  double a = 14.1, b = 14.2;
  auto z = [](double t) { return hardy_Z_precise(t); };
  double za = z(a);
  for (int i = 0; i < 60; ++i) {
    const double m = 0.5 * (a + b);
    const double zm = z(m);
    if ((zm < 0) == (za < 0)) {
      a = m;
      za = zm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("resonance_test_" + name);
}

}  // namespace

TEST_CASE("zeta at classical points") {
  const double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
  CHECK(std::abs(zeta_eval({2.0, 0.0}) - pi2_6) < 1e-12);
  CHECK(std::abs(zeta_eval({0.0, 0.0}) + 0.5) < 1e-12);
  const auto oracle0 = em_oracle({0.0L, 0.0L}, 23);
  CHECK(std::abs(zeta_eval({0.0, 0.0}).real() - static_cast<double>(oracle0.real())) < 1e-12);
  for (Cx s : {Cx(-1.5, 0.0), Cx(0.3, 7.0), Cx(0.5, 30.0), Cx(3.0, -12.0)}) {
    const auto o = em_oracle({s.real(), s.imag()}, 60);
    CHECK(std::abs(zeta_eval(s) - Cx(static_cast<double>(o.real()), static_cast<double>(o.imag()))) <
          1e-12);
  }
  CHECK_THROWS_AS(zeta_eval({1.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(zeta_eval({0.5, 2e6}), std::invalid_argument);
  CHECK_THROWS_AS(zeta_eval({0.5, 10.0}, 1e-16), std::invalid_argument);
}

TEST_CASE("zeta agrees with the Dirichlet series on Re s = 2") {
  for (double t : {0.0, 3.0, 10.0, 45.0}) {
    const Cx s(2.0, t);
    CHECK(std::abs(zeta_eval(s) - direct_series(s, 200000)) < 1e-10);
  }
}

TEST_CASE("zeta prime") {
  // -sum log n / n^2 with integral tail (log N + 1)/N and half end term.
  const int N = 1000000;
  long double acc = 0;
  for (int n = N - 1; n >= 2; --n) acc += std::log(static_cast<long double>(n)) / (1.0L * n * n);
  const double Nd = N;
  const double series = -static_cast<double>(acc) - (std::log(Nd) + 1.0) / Nd -
                        0.5 * std::log(Nd) / (Nd * Nd);
  CHECK(std::abs(zeta_prime_eval({2.0, 0.0}).real() - series) < 1e-10);

  for (Cx s : {Cx(0.5, 14.0), Cx(0.2, 100.0), Cx(2.0, 3.0)}) {
    CHECK(std::abs(zeta_prime_eval(std::conj(s)) - std::conj(zeta_prime_eval(s))) < 1e-12);
  }

  const Cx rho(0.5, 14.134725141734693);
  const double h = 1e-5;
  const Cx fd = (zeta_eval(rho + h, 1e-14) - zeta_eval(rho - h, 1e-14)) / (2.0 * h);
  CHECK(std::abs(zeta_prime_eval(rho) - fd) < 1e-7);
}

TEST_CASE("precision contract") {
  for (Cx s : {Cx(0.5, 20.0), Cx(0.5, 1000.0), Cx(2.0, 0.0), Cx(-0.5, 3.0)}) {
    double prec = 1e-6;
    Cx prev = zeta_eval(s, prec);
    while (prec > 2e-15) {
      const Cx next = zeta_eval(s, prec / 2);
      CHECK(std::abs(next - prev) <= prec);
      prev = next;
      prec /= 2;
    }
  }
}

TEST_CASE("Hardy Z is real and matches |zeta|") {
  for (double t : {20.0, 100.0, 1000.0, 1234.5, 12345.6}) {
    const Cx z = zeta_eval({0.5, t}, 1e-13);
    const Cx rotated = std::polar(1.0, rs_theta(t)) * z;
    CHECK(std::abs(rotated.imag()) < 1e-10);
    CHECK(std::abs(std::abs(hardy_Z(t)) - std::abs(z)) < 1e-8);
  }
  // theta: small-t branch against the asymptotic series near the switch.
  const double t = 49.999;
  const double series = 0.5 * t * std::log(t / (2 * std::numbers::pi)) - 0.5 * t -
                        std::numbers::pi / 8 + 1 / (48 * t) + 7 / (5760 * t * t * t);
  CHECK(rs_theta(t) == doctest::Approx(series).epsilon(1e-12));
  // Riemann-Siegel against Euler-Maclaurin.
  CHECK(std::abs(hardy_Z_rs(1000.0) - hardy_Z_precise(1000.0)) < 1e-9);
  CHECK(std::abs(hardy_Z_rs(100.0) - hardy_Z_precise(100.0)) < 1e-6);
  CHECK(hardy_Z(14.1) * hardy_Z(14.2) < 0);
}

TEST_CASE("Gram points") {
  CHECK(gram_point(0) == doctest::Approx(17.8455995405).epsilon(1e-10));
  CHECK(gram_point(-1) == doctest::Approx(9.6669080561).epsilon(1e-9));
  for (std::int64_t n : {1, 10, 100, 5000}) {
    CHECK(rs_theta(gram_point(n)) == doctest::Approx(std::numbers::pi * n).epsilon(1e-13));
  }
}

TEST_CASE("zero scan to 100") {
  const auto cache = find_zeros(0.0, 100.0);
  REQUIRE(cache.size() == 29);
  CHECK(std::abs(cache.records()[0].gamma - bisect_first_zero()) < 1e-9);
  CHECK(std::abs(cache.records()[0].gamma - 14.134725) < 1e-6);
  for (const auto& r : cache.records()) {
    CHECK(r.abs_error <= 1e-8);
    CHECK(hardy_Z(r.gamma - 1e-6) * hardy_Z(r.gamma + 1e-6) < 0);
  }
  CHECK(cache.records().back().index == 29);
}

TEST_CASE("zero scan completeness and partitions") {
  const auto whole = find_zeros(0.0, 1500.0);
  for (double T : {100.0, 250.0, 500.0, 777.0, 1000.0, 1500.0}) {
    const auto n = static_cast<double>(whole.range(0.0, T).size());
    CHECK(std::abs(n - rvm_count(T)) <= 1.0);
  }
  auto left = find_zeros(0.0, 613.25);
  const auto right = find_zeros(613.25, 1500.0);
  left.append(right);
  REQUIRE(left.size() == whole.size());
  for (std::size_t i = 0; i < whole.size(); ++i) CHECK(left.records()[i] == whole.records()[i]);
  CHECK(left.checksum() == whole.checksum());

  const auto mid = find_zeros(995.0, 1005.0);
  const auto sub = whole.range(995.0, 1005.0);
  REQUIRE(mid.size() == sub.size());
  for (std::size_t i = 0; i < sub.size(); ++i) CHECK(mid.records()[i] == sub[i]);
  CHECK_THROWS_AS(whole.range(0.0, 2000.0), resonance::NeedsScan);
  CHECK_THROWS_AS(find_zeros(50.0, 40.0), std::invalid_argument);
}

TEST_CASE("zero cache round trip") {
  const auto cache = find_zeros(0.0, 300.0);
  const auto path = temp_path("zeros.bin");
  cache.save(path);
  const auto back = ZeroCache::load(path);
  CHECK(back.checksum() == cache.checksum());
  CHECK(back.t_min() == cache.t_min());
  CHECK(back.t_max() == cache.t_max());
  REQUIRE(back.size() == cache.size());
  for (std::size_t i = 0; i < cache.size(); ++i) CHECK(back.records()[i] == cache.records()[i]);

  // A flipped byte in the records is caught.
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(40 + 13);
    f.put('\x7f');
  }
  CHECK_THROWS_AS(ZeroCache::load(path), resonance::IoError);
  CHECK_THROWS_AS(ZeroCache::load(temp_path("missing.bin")), resonance::IoError);

  const auto csv = temp_path("zeros.csv");
  cache.write_csv(csv);
  std::ifstream in(csv);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == cache.size() + 1);
  std::filesystem::remove(path);
  std::filesystem::remove(csv);
}

TEST_CASE("good ordinate") {
  const auto cache = find_zeros(900.0, 1100.0);
  const auto g = good_ordinate(1000.0, cache);
  CHECK(std::abs(g.t - 1000.0) < 1.0);
  CHECK(g.abs_Z >= 1e-3);
  const double gap = g.gamma_above - g.gamma_below;
  CHECK(std::min(g.t - g.gamma_below, g.gamma_above - g.t) >= gap / 3.0);
  CHECK(good_ordinate(g.t, cache).t == g.t);
  CHECK_THROWS_AS(good_ordinate(1500.0, cache), resonance::NeedsScan);
  CHECK_THROWS_AS(good_ordinate(900.01, cache), resonance::NeedsScan);
}

TEST_CASE("Dirichlet polynomial evaluation") {
  const DirichletPolynomial one({1.0});
  CHECK(one.eval({0.3, 17.0}) == Cx(1.0, 0.0));
  const DirichletPolynomial two({1.0, 1.0});
  CHECK(std::abs(two.eval({0.0, 0.0}) - Cx(2.0, 0.0)) < 1e-15);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> xa(40), xb(40), xs(40);
  for (int i = 0; i < 40; ++i) {
    xa[i] = u(rng);
    xb[i] = u(rng);
    xs[i] = 2.0 * xa[i] - 3.0 * xb[i];
  }
  const DirichletPolynomial A(xa), B(xb), S(xs);
  std::vector<Cx> pts;
  for (int i = 0; i < 200; ++i) pts.emplace_back(u(rng), 1000.0 * (u(rng) + 1.0));
  const auto batch = A.eval_batch(pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Cx s = pts[i];
    CHECK(std::abs(batch[i] - A.eval(s)) < 1e-10);
    CHECK(std::abs(S.eval(s) - (2.0 * A.eval(s) - 3.0 * B.eval(s))) < 1e-12);
    CHECK(std::abs(A.eval(std::conj(s)) - std::conj(A.eval(s))) < 1e-12);
  }
  CHECK_THROWS_AS(DirichletPolynomial({}), std::invalid_argument);
}

TEST_CASE("mean value theorem") {
  const DirichletPolynomial one({1.0});
  const auto r1 = mean_value_check(one, 100.0, 350.0);
  CHECK(r1.numeric == doctest::Approx(250.0).epsilon(1e-12));

  const DirichletPolynomial two({1.0, 1.0});
  const auto r = mean_value_check(two, 1000.0, 11000.0);
  CHECK(r.numeric == doctest::Approx(mean_square_exact(two, 1000.0, 11000.0)).epsilon(1e-10));
  CHECK(r.tolerance == doctest::Approx(3.0 / (2.0 * 1e4) + 0.01));
  CHECK(r.pass);
  const auto r2 = mean_value_check(two, 1000.0, 21000.0);
  CHECK((r2.tolerance - 0.01) == doctest::Approx((r.tolerance - 0.01) / 2.0));
}
