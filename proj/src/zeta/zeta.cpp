#include "resonance/zeta.hpp"

#include <array>
#include <limits>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "resonance/numeric.hpp"
#include "zeta_detail.hpp"

namespace resonance::zeta {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;
constexpr int kMaxCorrections = 80;
// Above this height phases are formed in long double.
constexpr double kExtendedPrecisionHeight = 1e4;
// Below this height the C0..C4 truncation error exceeds 1e-9.
constexpr double kRiemannSiegelFrom = 400.0;

#include "rs_coeffs.inc"

// B_{2k} / (2k)! for k = 1..kMaxCorrections+1, from
// B_{2k}/(2k)! = (-1)^{k+1} 2 zeta(2k) / (2 pi)^{2k}.
const std::array<double, kMaxCorrections + 2>& bernoulli_over_factorial() {
  static const auto table = [] {
    std::array<double, kMaxCorrections + 2> b{};
    for (int k = 1; k <= kMaxCorrections + 1; ++k) {
      long double z2k = 0.0L;
      if (k == 1) {
        z2k = std::numbers::pi_v<long double> * std::numbers::pi_v<long double> / 6.0L;
      } else if (k == 2) {
        z2k = std::pow(std::numbers::pi_v<long double>, 4) / 90.0L;
      } else {
        for (int n = 2000; n >= 1; --n) z2k += std::pow(static_cast<long double>(n), -2.0L * k);
      }
      const long double mag = 2.0L * z2k / std::pow(kTwoPiL, 2.0L * k);
      b[k] = static_cast<double>((k % 2 == 1) ? mag : -mag);
    }
    return b;
  }();
  return table;
}

// n^{-s} = exp(-sigma log n) (cos(t log n) - i sin(t log n)).
inline Complex n_pow_minus_s(double log_n, long double log_n_ext, double sigma, double t,
                             bool extended) {
  double phase = 0.0;
  if (extended) {
    long double ph = static_cast<long double>(t) * log_n_ext;
    ph = std::fmod(ph, kTwoPiL);
    phase = static_cast<double>(ph);
  } else {
    phase = t * log_n;
  }
  const double mag = std::exp(-sigma * log_n);
  return {mag * std::cos(phase), -mag * std::sin(phase)};
}

void validate(Complex s, double prec) {
  if (s == Complex(1.0, 0.0)) throw std::domain_error("zeta: pole at s = 1");
  if (std::abs(s.imag()) > 1e6) throw std::invalid_argument("zeta: |Im s| above 1e6");
  if (!(prec >= 1e-15)) throw std::invalid_argument("zeta: precision target below 1e-15");
}

}  // namespace

namespace detail {

ZetaValue euler_maclaurin(Complex s, int N, int K, bool with_derivative) {
  const double sigma = s.real();
  const double t = s.imag();
  const bool extended = std::abs(t) > kExtendedPrecisionHeight;
  CompensatedSum<double> re, im, dre, dim;
  for (int n = 1; n < N; ++n) {
    const double ln = std::log(static_cast<double>(n));
    const long double lnl = extended ? std::log(static_cast<long double>(n)) : 0.0L;
    const Complex term = n_pow_minus_s(ln, lnl, sigma, t, extended);
    re += term.real();
    im += term.imag();
    if (with_derivative) {
      dre += -ln * term.real();
      dim += -ln * term.imag();
    }
  }
  const double log_N = std::log(static_cast<double>(N));
  const Complex N_minus_s =
      n_pow_minus_s(log_N, extended ? std::log(static_cast<long double>(N)) : 0.0L, sigma, t,
                    extended);
  const Complex N_one_minus_s = static_cast<double>(N) * N_minus_s;

  Complex value = Complex(re.value(), im.value()) + N_one_minus_s / (s - 1.0) + 0.5 * N_minus_s;
  Complex deriv = Complex(dre.value(), dim.value());
  if (with_derivative) {
    deriv += -log_N * N_one_minus_s / (s - 1.0) - N_one_minus_s / ((s - 1.0) * (s - 1.0));
    deriv += -0.5 * log_N * N_minus_s;
  }

  const auto& bern = bernoulli_over_factorial();
  // poly = s (s+1) ... (s + 2k - 2), dpoly its derivative in s.
  Complex poly = s;
  Complex dpoly = 1.0;
  Complex N_pow = N_minus_s / static_cast<double>(N);  // N^{-s-1}
  const double inv_N2 = 1.0 / (static_cast<double>(N) * N);
  for (int k = 1; k <= K; ++k) {
    const Complex term = bern[k] * poly * N_pow;
    value += term;
    if (with_derivative) deriv += bern[k] * N_pow * (dpoly - log_N * poly);
    // advance to k + 1
    const Complex a = s + static_cast<double>(2 * k - 1);
    const Complex b = s + static_cast<double>(2 * k);
    dpoly = dpoly * a * b + poly * (a + b);
    poly = poly * a * b;
    N_pow *= inv_N2;
  }
  // First omitted term and Backlund's factor |s + 2K + 1| / (sigma + 2K + 1).
  const Complex next = bern[K + 1] * poly * N_pow;
  const double denom = sigma + 2.0 * K + 1.0;
  const double factor = denom > 0.0 ? std::abs(s + static_cast<double>(2 * K + 1)) / denom
                                    : std::numeric_limits<double>::infinity();
  ZetaValue out;
  out.value = value;
  out.derivative = deriv;
  out.error_bound = std::abs(next) * factor;
  if (with_derivative) {
    const Complex dnext = bern[K + 1] * N_pow * (dpoly - log_N * poly);
    out.error_bound = std::max(out.error_bound, std::abs(dnext) * factor);
  }
  out.main_terms = N;
  out.correction_terms = K;
  return out;
}

// Picks N and K so that the remainder bound is at most prec.
std::pair<int, int> choose_em_parameters(Complex s, double prec, bool with_derivative) {
  const double t = std::abs(s.imag());
  int N = std::max(10, static_cast<int>(std::ceil(1.5 * t / (2.0 * kPi))) + 5);
  const auto& bern = bernoulli_over_factorial();
  const double sigma = s.real();
  for (int attempt = 0; attempt < 12; ++attempt, N *= 2) {
    Complex poly = s;
    Complex dpoly = 1.0;
    const double log_N = std::log(static_cast<double>(N));
    double n_pow = std::pow(static_cast<double>(N), -sigma - 1.0);
    const double inv_N2 = 1.0 / (static_cast<double>(N) * N);
    for (int K = 0; K <= kMaxCorrections; ++K) {
      // poly, dpoly, n_pow describe term K + 1 here.
      const double denom = sigma + 2.0 * K + 1.0;
      if (denom > 0.0) {
        const double factor = std::abs(s + static_cast<double>(2 * K + 1)) / denom;
        double bound = std::abs(bern[K + 1] * poly) * n_pow * factor;
        if (with_derivative) {
          bound = std::max(bound, std::abs(bern[K + 1] * (dpoly - log_N * poly)) * n_pow * factor);
        }
        if (bound <= prec) return {N, K};
      }
      const Complex a = s + static_cast<double>(2 * K + 1);
      const Complex b = s + static_cast<double>(2 * K + 2);
      dpoly = dpoly * a * b + poly * (a + b);
      poly = poly * a * b;
      n_pow *= inv_N2;
    }
  }
  throw std::runtime_error("zeta: Euler-Maclaurin parameters not found");
}

}  // namespace detail

ZetaValue zeta_with_derivative(Complex s, double prec) {
  validate(s, prec);
  const auto [N, K] = detail::choose_em_parameters(s, prec, true);
  return detail::euler_maclaurin(s, N, K, true);
}

Complex zeta_eval(Complex s, double prec) {
  validate(s, prec);
  const auto [N, K] = detail::choose_em_parameters(s, prec, false);
  return detail::euler_maclaurin(s, N, K, false).value;
}

Complex zeta_prime_eval(Complex s, double prec) { return zeta_with_derivative(s, prec).derivative; }

Complex log_gamma(Complex z) {
  if (z.real() <= 0.0) throw std::domain_error("log_gamma: Re z must be positive");
  Complex shift = 0.0;
  while (z.real() < 12.0 || std::abs(z) < 16.0) {
    shift += std::log(z);
    z += 1.0;
  }
  // Stirling series with B_{2k} / (2k (2k-1) z^{2k-1}).
  static constexpr std::array<double, 10> kStirling = {
      1.0 / 12.0,        -1.0 / 360.0,        1.0 / 1260.0,        -1.0 / 1680.0,
      1.0 / 1188.0,      -691.0 / 360360.0,   1.0 / 156.0,         -3617.0 / 122400.0,
      43867.0 / 244188.0, -174611.0 / 125400.0};
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series = 0.0;
  Complex p = inv;
  for (double c : kStirling) {
    series += c * p;
    p *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series - shift;
}

namespace detail {

long double theta_extended(double t_in) {
  const long double t = t_in;
  if (t_in < 50.0) {
    const Complex lg = log_gamma(Complex(0.25, 0.5 * t_in));
    return static_cast<long double>(lg.imag()) - 0.5L * t * std::log(std::numbers::pi_v<long double>);
  }
  const long double inv = 1.0L / t;
  const long double inv2 = inv * inv;
  long double series =
      inv * (1.0L / 48.0L +
             inv2 * (7.0L / 5760.0L +
                     inv2 * (31.0L / 80640.0L + inv2 * (127.0L / 430080.0L +
                                                        inv2 * (511.0L / 1216512.0L)))));
  return 0.5L * t * std::log(t / kTwoPiL) - 0.5L * t - std::numbers::pi_v<long double> / 8.0L +
         series;
}

// Riemann-Siegel correction C_k(p) for k = 0..4 from derivatives of
// Phi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p).
std::array<double, 5> rs_corrections(double p) {
  const double z = p - 0.5;
  constexpr int kDeg = static_cast<int>(std::size(kPhiTaylor)) - 1;
  std::array<double, 13> d{};
  for (int m = 0; m <= 12; ++m) {
    // Horner on sum_{k>=m} c_k k!/(k-m)! z^{k-m}
    double acc = 0.0;
    for (int k = kDeg; k >= m; --k) {
      double falling = 1.0;
      for (int j = 0; j < m; ++j) falling *= (k - j);
      acc = acc * z + kPhiTaylor[k] * falling;
    }
    d[m] = acc;
  }
  const double pi2 = kPi * kPi;
  const double pi4 = pi2 * pi2;
  const double pi6 = pi4 * pi2;
  const double pi8 = pi4 * pi4;
  std::array<double, 5> c{};
  c[0] = d[0];
  c[1] = -d[3] / (96.0 * pi2);
  c[2] = d[2] / (64.0 * pi2) + d[6] / (18432.0 * pi4);
  c[3] = -d[1] / (64.0 * pi2) - d[5] / (3840.0 * pi4) - d[9] / (5308416.0 * pi6);
  c[4] = d[0] / (128.0 * pi2) + 19.0 * d[4] / (24576.0 * pi4) + 11.0 * d[8] / (5898240.0 * pi6) +
         d[12] / (2038431744.0 * pi8);
  return c;
}

}  // namespace detail

double rs_theta(double t) { return static_cast<double>(detail::theta_extended(t)); }

double hardy_Z_rs(double t) {
  if (t < 2.0) throw std::invalid_argument("hardy_Z: t must be at least 2");
  const long double th = detail::theta_extended(t);
  const bool extended = t > kExtendedPrecisionHeight;
  const double a = std::sqrt(t / (2.0 * kPi));
  const int N = static_cast<int>(std::floor(a));
  const double p = a - N;
  CompensatedSum<double> sum;
  const double th_d = static_cast<double>(th);
  for (int n = 1; n <= N; ++n) {
    double phase = 0.0;
    if (extended) {
      long double ph = th - static_cast<long double>(t) * std::log(static_cast<long double>(n));
      phase = static_cast<double>(std::fmod(ph, kTwoPiL));
    } else {
      phase = th_d - t * std::log(static_cast<double>(n));
    }
    sum += std::cos(phase) / std::sqrt(static_cast<double>(n));
  }
  const auto c = detail::rs_corrections(p);
  const double w = 1.0 / a;
  const double rem = std::sqrt(w) * (c[0] + w * (c[1] + w * (c[2] + w * (c[3] + w * c[4]))));
  const double sign = (N % 2 == 1) ? 1.0 : -1.0;  // (-1)^{N-1}
  return 2.0 * sum.value() + sign * rem;
}

double hardy_Z_precise(double t, double prec) {
  if (t < 2.0) throw std::invalid_argument("hardy_Z: t must be at least 2");
  const Complex z = zeta_eval(Complex(0.5, t), prec);
  const double th = static_cast<double>(std::fmod(detail::theta_extended(t), kTwoPiL));
  return (Complex(std::cos(th), std::sin(th)) * z).real();
}

double hardy_Z(double t) {
  return t >= kRiemannSiegelFrom ? hardy_Z_rs(t) : hardy_Z_precise(t, 1e-12);
}

double rvm_count(double T) {
  return T / (2.0 * kPi) * std::log(T / (2.0 * kPi * std::numbers::e)) + 0.875;
}

double mean_gap(double t) {
  const double l = std::log(std::max(t, 1.0) / (2.0 * kPi));
  return 2.0 * kPi / std::max(l, 1.5);
}

}  // namespace resonance::zeta
