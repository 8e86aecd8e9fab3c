#pragma once

// Resonator coefficients f(n), the resonance quadratic forms, the Euler
// products Q1 / Q2 and a spectral oracle for the optimal quadratic-form ratio.

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "resonance/arith.hpp"

namespace resonance::reso {

enum class Mode { Asymptotic, Windowed, Eigen };

struct ResonatorParams {
  double logM = 0.0;
  double L = 0.0;  // sqrt(logM log logM)
  double support_lo = 0.0;
  double support_hi = 0.0;
  Mode mode = Mode::Asymptotic;
  bool empty_window = false;
};

// L = sqrt(logM log logM), window [L^2, exp((log L)^2)].
// Throws std::invalid_argument for logM <= e.
ResonatorParams make_params(double logM, Mode mode = Mode::Asymptotic);
// Same L, explicit prime window [p_lo, p_hi].
ResonatorParams make_windowed_params(double logM, double p_lo, double p_hi);

std::string mode_name(Mode mode);

// f(p) = L / (sqrt(p) log p) for window primes, extended multiplicatively to
// squarefree n; 0 otherwise.
double resonator_prime_value(std::uint64_t p, const ResonatorParams& params);
double resonator_coeff(const arith::Factorization& f, const ResonatorParams& params);
double resonator_coeff(std::uint64_t n, const ResonatorParams& params);

// Which coefficient vector a resonator induces.
enum class Weighting {
  F,          // x_n = f(n)
  SqrtNF,     // x_n = sqrt(n) f(n)
  SqrtNMuF,   // x_n = sqrt(n) mu(n) f(n)
};

class Resonator {
 public:
  // Enumerates every squarefree product of window primes up to m_cap.
  // Throws ResourceLimit above 10^7.
  Resonator(ResonatorParams params, std::uint64_t m_cap);

  const ResonatorParams& params() const noexcept { return params_; }
  std::uint64_t m_cap() const noexcept { return m_cap_; }
  // (n, f(n)) in increasing n; always starts with (1, 1).
  const std::vector<std::pair<std::uint64_t, double>>& coeffs() const noexcept { return coeffs_; }
  const std::vector<std::uint64_t>& window_primes() const noexcept { return primes_; }

  arith::ArithFunctionTable table(Weighting w) const;
  void write_csv(const std::filesystem::path& path) const;

 private:
  ResonatorParams params_;
  std::uint64_t m_cap_;
  std::vector<std::uint64_t> primes_;
  std::vector<std::pair<std::uint64_t, double>> coeffs_;
};

struct QuadFormReport {
  double numerator = 0.0;    // B = sum_{nu <= M} x_u x_{nu} / sqrt(n)
  double denominator = 0.0;  // sum_{n <= M} x_n^2
  double ratio = 0.0;
  std::uint64_t m_cap = 0;
};

// Throws DegenerateInput when x vanishes on [1, M], ResourceLimit for
// M > 10^7, std::invalid_argument when x is shorter than M.
QuadFormReport quadform(const arith::ArithFunctionTable& x, std::uint64_t M);

enum class PairWeight { LogPower, LambdaLog, Lambda };

// sum_{nu <= M} x_u x_{nu} w(n) / sqrt(n) with w(n) = (log n)^i,
// (Lambda * log)(n) or Lambda(n).
double weighted_quadform(const arith::ArithFunctionTable& x, std::uint64_t M, int i,
                         PairWeight weight);

enum class PrimeMode { ExactSieve, PntIntegral };

struct EulerProducts {
  double logQ1 = 0.0;
  double logQ2 = 0.0;
  double predicted = 0.0;  // sqrt(logM / log logM)
  double ratio() const { return (logQ1 - logQ2) / predicted; }
};

// Exact mode sums over the window primes and needs support_hi <= 10^9
// (ResourceLimit otherwise). pnt mode replaces the prime sum by an integral
// against dt / log t.
EulerProducts euler_products(const ResonatorParams& params, PrimeMode mode);

struct EigenResult {
  double ratio = 0.0;
  std::vector<double> x_opt;  // unit vector, x_opt[n - 1]
  int iterations = 0;
  double residual = 0.0;
};

// Largest eigenvalue of the M x M matrix with 1 on the diagonal and
// sqrt(a/b)/2 at (a, b) and (b, a) for a | b, a < b, by power iteration from
// the all-ones vector. Throws ResourceLimit unless 1 <= M <= 5000.
EigenResult eigen_optimal_ratio(std::uint64_t M, double residual_tol = 1e-10);

enum class ResoKind { I, II, IV_1, IV_2 };

struct LemmaResoResult {
  double numeric = 0.0;
  double reference = 0.0;  // Q1, Q2 or (log T)^{i/2}
  bool degenerate = false;  // empty support: only n = 1 contributes
};

// Left-hand sides of the resonator lemma by direct enumeration up to m_cap.
//   I    : sum_{nu <= M} f(u) f(nu) / sqrt(n)            vs Q1
//   II   : sum_{n <= M} f(n)^2                            vs Q2
//   IV_i : sum_{a <= M} Lambda_i(a) f(a) / (sqrt(a) g(a)) vs (log T)^{i/2}
LemmaResoResult lemma_reso_sums(ResoKind kind, const ResonatorParams& params,
                                std::uint64_t m_cap, double log_T = 0.0);

}  // namespace resonance::reso
