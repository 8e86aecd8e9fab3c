#pragma once

// Closed-form main terms: the Beta integrals, the Euler-product constants
// C0 / C1 / C2, the multiplicative-sum asymptotics, the leading-order weights
// r0 / r1 / g, predictions for S1 / S2 / S3 and the assembled lower bound for
// the tau_r resonator.

#include <cstdint>
#include <string>

#include "resonance/arith.hpp"
#include "resonance/prediction.hpp"

namespace resonance::asym {

struct BetaCx {
  double i_uv = 0.0;  // u! v! / (u + v + 1)!
  double c_X = 0.0;   // (log X)^{u+v+1} i(u, v)
};

// Throws std::invalid_argument for u or v above 60, or X < 1.
BetaCx beta_cx(int u, int v, double X);

struct ConstantSet {
  int r = 0;
  std::uint64_t prime_cutoff = 0;
  double C0 = 0.0;          // prod (1-1/p)^{r^2+r} sum tau_r(p^j) tau_{r+1}(p^j) / p^j
  double C0_first = 0.0;    // prod (1-1/p)^{r^2} sum tau_r(p^j) f_1(p^j) / p^j
  double C1 = 0.0;
  double C2 = 0.0;
  double truncation_error_estimate = 0.0;  // absolute, on the largest constant
};

// Truncated Euler products over p <= P. Throws std::invalid_argument unless
// 1 <= r <= 6 and 2 <= P <= 10^8.
ConstantSet constants(int r, std::uint64_t P);

enum class MultKind { I = 1, II, III, IV, V, VI, VII };

std::string mult_kind_name(MultKind kind);

struct MultExtra {
  std::uint64_t u = 1;  // kind i
  std::uint64_t a = 1;  // kind iv
  std::uint64_t b = 1;  // kind iv
  int k = 2;            // kind v
  int i = 1;            // kinds vi, vii: f_1 or f_2
  std::uint64_t prime_cutoff = 1000000;  // for C0 / C1 / C2
};

// Exact sieve sum of the left-hand side against the leading main term; the
// report's tolerance field is `tolerance`. Throws std::invalid_argument for
// non-coprime (a, b) in kind iv and for x above 10^8.
PredictionReport mult_sum_check(MultKind kind, int r, double x, const MultExtra& extra = {},
                                double tolerance = 0.15);

// Height, length exponent and divisor order of one prediction.
struct MainTermModel {
  double T = 0.0;
  double theta = 0.0;
  int r = 1;
  double logM = 0.0;  // theta log T
  bool leading_only = true;
};

// Throws std::invalid_argument unless T > 2 pi and 0 < theta < 1/2.
MainTermModel make_main_term_model(double T, double theta, int r = 1);

// Smooth zero count (T / 2 pi) log(T / (2 pi e)) + 7/8.
double n_smooth(double T);

// Leading-order weights with monic P2, P1, R1 reduced to their top terms and
// alpha_1 = alpha_2 = 0.
double r0_weight(double T, std::uint64_t n, const arith::PrimeTable& table);
double g_weight(double T, std::uint64_t d, const arith::PrimeTable& table);
double r1_weight(double T, std::uint64_t a, std::uint64_t b, const arith::PrimeTable& table);

// N_smooth(T) sum x_m^2 / m - (T / pi) sum (Lambda * x)(m) x_m / m.
double predict_S2(const arith::ArithFunctionTable& x, double T, std::uint64_t M);

// (T / 2 pi) [sum_{nu <= M} x_u x_{nu} r0(n) / (nu)
//             + sum_{(a,b) = 1} r1(a, b) / (ab) sum_{g <= min(M/a, M/b)} x_{ag} x_{bg} / g].
// Throws std::invalid_argument for theta >= 1/2.
double predict_S1(const arith::ArithFunctionTable& x, double T, std::uint64_t M, double theta);

// ((T2 - T1) / 2 pi) sum_{hn <= M} mu(n) x_h x_{nh} / (nh).
double predict_S3(const arith::ArithFunctionTable& x, double T1, double T2, std::uint64_t M);

// Coefficients of the lower bound for S1 / S2 with x_n = tau_r(n).
// Every "coefficient" multiplies C0 (log M)^{r^2+r+2} / (r^2+r+2)! unless
// noted otherwise.
struct Theorem1Bound {
  int r = 0;
  double theta = 0.0;
  double logM = 0.0;
  double T1_term = 0.0;   // P2 / 2 times T1 as assembled
  double T2_term = 0.0;
  double T3p_term = 0.0;
  double T3pp_term = 0.0;
  double assembled = 0.0;  // T1_term + T2_term + T3p_term + T3pp_term
  double lower = 0.0;      // (r^2+r+2)(r^2+r+1 - theta(r^2+2r)) / theta^2
  // S1 >= S1_lower_coeff T (log M)^{r^2+r+2}, C0 included.
  double S1_lower_coeff = 0.0;
  // S2 <= S2_upper_coeff T (log M)^{r^2+1}, C2 included.
  double S2_upper_coeff = 0.0;
  int ratio_exponent = 0;  // r + 1
  double ratio_lower = 0.0;  // S1_lower / S2_upper at logM
};

// Throws std::invalid_argument unless 0 < theta < 1/2 and r >= 1.
Theorem1Bound theorem1_bound(int r, double theta, double logM, const ConstantSet& c);
Theorem1Bound theorem1_bound(int r, double theta, double logM);

}  // namespace resonance::asym
