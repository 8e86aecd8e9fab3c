#pragma once

// zeta(s), zeta'(s) and Hardy's Z on the critical line.
//
// zeta_eval / zeta_prime_eval use Euler-Maclaurin summation with the
// Backlund remainder bound, so the returned value is within the requested
// absolute precision. For |Im s| > 1e4 the phases t log n are formed in
// extended precision before reduction mod 2 pi.

#include <complex>

namespace resonance::zeta {

using Complex = std::complex<double>;

struct ZetaValue {
  Complex value;
  Complex derivative;
  double error_bound = 0.0;  // remainder bound on value
  int main_terms = 0;        // N in the Euler-Maclaurin split
  int correction_terms = 0;  // K
};

// Throws std::domain_error at s = 1 and std::invalid_argument when
// |Im s| > 1e6 or prec < 1e-15.
Complex zeta_eval(Complex s, double prec = 1e-12);
Complex zeta_prime_eval(Complex s, double prec = 1e-12);
ZetaValue zeta_with_derivative(Complex s, double prec = 1e-12);

// Principal-branch log Gamma continued analytically in Re z > 0.
Complex log_gamma(Complex z);

// Riemann-Siegel theta: Im log Gamma(1/4 + it/2) - (t/2) log pi.
double rs_theta(double t);

// Hardy's Z(t) = exp(i theta(t)) zeta(1/2 + it), which is real.
// Riemann-Siegel main sum with corrections C0..C4 for t >= 400 (error
// below 1e-9 there), Euler-Maclaurin below.
double hardy_Z(double t);
// Always Euler-Maclaurin; slower, accurate to roughly prec.
double hardy_Z_precise(double t, double prec = 1e-13);
// Riemann-Siegel only. Error about 4e-8 at t = 100, 3e-11 at t = 1000.
double hardy_Z_rs(double t);

// Smooth Riemann-von Mangoldt term (T/2pi) log(T/(2 pi e)) + 7/8.
double rvm_count(double T);

// Average zero spacing 2 pi / log(t / 2 pi), clamped for small t.
double mean_gap(double t);

}  // namespace resonance::zeta
