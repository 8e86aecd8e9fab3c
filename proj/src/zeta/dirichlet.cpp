#include "resonance/dirichlet.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "resonance/numeric.hpp"

namespace resonance::zeta {

namespace {
constexpr std::size_t kBatchBlock = 64;
}

DirichletPolynomial::DirichletPolynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("DirichletPolynomial: no coefficients");
  logs_.resize(coeffs_.size());
  for (std::size_t n = 1; n <= coeffs_.size(); ++n) logs_[n - 1] = std::log(static_cast<double>(n));
}

std::complex<double> DirichletPolynomial::eval(std::complex<double> s) const {
  CompensatedSum<double> re, im;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0.0) continue;
    const double mag = coeffs_[i] * std::exp(-s.real() * logs_[i]);
    const double ph = -s.imag() * logs_[i];
    re += mag * std::cos(ph);
    im += mag * std::sin(ph);
  }
  return {re.value(), im.value()};
}

std::vector<std::complex<double>> DirichletPolynomial::eval_batch(
    std::span<const std::complex<double>> points) const {
  std::vector<std::complex<double>> out(points.size());
  const std::size_t blocks = (points.size() + kBatchBlock - 1) / kBatchBlock;
  parallel_blocks(blocks, [&](std::size_t b) {
    const std::size_t end = std::min(points.size(), (b + 1) * kBatchBlock);
    for (std::size_t i = b * kBatchBlock; i < end; ++i) out[i] = eval(points[i]);
  });
  return out;
}

std::vector<std::complex<double>> DirichletPolynomial::eval_critical(
    std::span<const double> gammas) const {
  std::vector<std::complex<double>> pts(gammas.size());
  for (std::size_t i = 0; i < gammas.size(); ++i) pts[i] = {0.5, gammas[i]};
  return eval_batch(pts);
}

double mean_square_exact(const DirichletPolynomial& a, double t1, double t2) {
  // |A(it)|^2 = sum_{m,n} x_m x_n cos(t log(m/n)).
  const auto x = a.coeffs();
  CompensatedSum<double> total;
  for (std::size_t m = 1; m <= x.size(); ++m) {
    if (x[m - 1] == 0.0) continue;
    total += x[m - 1] * x[m - 1] * (t2 - t1);
    for (std::size_t n = m + 1; n <= x.size(); ++n) {
      if (x[n - 1] == 0.0) continue;
      const double l = std::log(static_cast<double>(n) / static_cast<double>(m));
      total += 2.0 * x[m - 1] * x[n - 1] * (std::sin(t2 * l) - std::sin(t1 * l)) / l;
    }
  }
  return total.value();
}

PredictionReport mean_value_check(const DirichletPolynomial& a, double t1, double t2) {
  if (!(t1 < t2)) throw std::invalid_argument("mean_value_check: need t1 < t2");
  double l2 = 0.0, weighted = 0.0;
  const auto x = a.coeffs();
  for (std::size_t n = 1; n <= x.size(); ++n) {
    l2 += x[n - 1] * x[n - 1];
    weighted += static_cast<double>(n) * x[n - 1] * x[n - 1];
  }
  // Panels short enough that the fastest oscillation, log M, is resolved.
  const double max_freq = std::max(1.0, std::log(static_cast<double>(x.size())));
  const double panel = std::min(1.0, 2.0 / max_freq);
  const auto panels = static_cast<std::size_t>(std::ceil((t2 - t1) / panel));
  const double h = (t2 - t1) / static_cast<double>(panels);
  auto f = [&](double t) { return std::norm(a.eval({0.0, t})); };
  std::vector<double> parts(panels);
  parallel_blocks(panels, [&](std::size_t i) {
    const double lo = t1 + h * static_cast<double>(i);
    const double hi = (i + 1 == panels) ? t2 : lo + h;
    parts[i] = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 5, 1e-13);
  });
  const double numeric = pairwise_reduce(std::move(parts));
  const double predicted = (t2 - t1) * l2;
  const double tol = (l2 > 0.0 ? weighted / ((t2 - t1) * l2) : 0.0) + 0.01;
  return make_ratio_report("mean_value", numeric, predicted, tol);
}

}  // namespace resonance::zeta
