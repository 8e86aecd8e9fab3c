#pragma once

// Dirichlet polynomials A(s) = sum_{n <= M} x_n n^{-s} and the mean value
// theorem check on vertical segments.

#include <complex>
#include <span>
#include <vector>

#include "resonance/prediction.hpp"

namespace resonance::zeta {

class DirichletPolynomial {
 public:
  // coeffs[n - 1] = x_n. Throws std::invalid_argument when empty.
  explicit DirichletPolynomial(std::vector<double> coeffs);

  std::size_t length() const noexcept { return coeffs_.size(); }
  std::span<const double> coeffs() const noexcept { return coeffs_; }

  std::complex<double> eval(std::complex<double> s) const;
  // Per-point results match eval(); points are split across workers.
  std::vector<std::complex<double>> eval_batch(std::span<const std::complex<double>> points) const;
  // A(1/2 + i gamma) for many ordinates.
  std::vector<std::complex<double>> eval_critical(std::span<const double> gammas) const;

 private:
  std::vector<double> coeffs_;
  std::vector<double> logs_;  // log n
};

// Integral of |A(it)|^2 over [t1, t2] by Gauss-Kronrod panels, compared with
// (t2 - t1) sum |x_n|^2. The tolerance is
// sum n |x_n|^2 / ((t2 - t1) sum |x_n|^2) + 1%.
PredictionReport mean_value_check(const DirichletPolynomial& a, double t1, double t2);

// Exact value of the same integral from the double sum over (m, n).
double mean_square_exact(const DirichletPolynomial& a, double t1, double t2);

}  // namespace resonance::zeta
