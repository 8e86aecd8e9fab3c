#include "resonance/resonator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "resonance/errors.hpp"
#include "resonance/numeric.hpp"

namespace resonance::reso {

namespace {

constexpr std::uint64_t kMaxEnumeration = 10000000;
constexpr double kSieveBudget = 1e9;
constexpr std::uint64_t kMaxEigenDim = 5000;
constexpr std::uint64_t kPairBlock = 2048;
// Windows longer than this are assumed to contain primes without sieving.
constexpr double kDirectPrimeCheck = 1e7;

std::uint64_t window_lo(const ResonatorParams& p) {
  return static_cast<std::uint64_t>(std::max(2.0, std::ceil(p.support_lo)));
}
std::uint64_t window_hi(const ResonatorParams& p, double cap) {
  return static_cast<std::uint64_t>(std::floor(std::min(p.support_hi, cap)));
}

bool window_is_empty(const ResonatorParams& p) {
  if (p.support_hi < p.support_lo || p.support_hi < 2.0) return true;
  if (p.support_hi - p.support_lo > kDirectPrimeCheck) return false;
  const auto lo = window_lo(p);
  const auto hi = window_hi(p, p.support_hi);
  return hi < lo || arith::count_primes(lo, hi) == 0;
}

void check_table(const arith::ArithFunctionTable& x, std::uint64_t M) {
  if (M < 1) throw std::invalid_argument("quadform: M must be positive");
  if (M > kMaxEnumeration) throw ResourceLimit("quadform: M above 10^7");
  if (x.limit() < M) throw std::invalid_argument("quadform: table shorter than M");
}

// sum_{u} x_u sum_{n <= M/u} w[n] x_{nu}, blocked over u with per-block
// compensated sums reduced pairwise.
double pair_sum(const arith::ArithFunctionTable& x, std::uint64_t M,
                const std::vector<double>& w) {
  const std::uint64_t blocks = (M + kPairBlock - 1) / kPairBlock;
  std::vector<double> partial(blocks, 0.0);
  parallel_blocks(blocks, [&](std::size_t b) {
    CompensatedSum<double> acc;
    const std::uint64_t u_lo = b * kPairBlock + 1;
    const std::uint64_t u_hi = std::min(M, (b + 1) * kPairBlock);
    for (std::uint64_t u = u_lo; u <= u_hi; ++u) {
      const double xu = x[u];
      if (xu == 0.0) continue;
      const std::uint64_t n_max = M / u;
      for (std::uint64_t n = 1; n <= n_max; ++n) {
        const double xnu = x[n * u];
        if (xnu != 0.0 && w[n] != 0.0) acc += xu * xnu * w[n];
      }
    }
    partial[b] = acc.value();
  });
  return pairwise_reduce(std::move(partial));
}

}  // namespace

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::Asymptotic: return "asymptotic";
    case Mode::Windowed: return "windowed";
    case Mode::Eigen: return "eigen";
  }
  return "unknown";
}

ResonatorParams make_params(double logM, Mode mode) {
  if (!(logM > std::numbers::e)) throw std::invalid_argument("make_params: logM must exceed e");
  ResonatorParams p;
  p.logM = logM;
  p.L = std::sqrt(logM * std::log(logM));
  const double logL = std::log(p.L);
  p.support_lo = p.L * p.L;
  p.support_hi = std::exp(logL * logL);
  p.mode = mode;
  p.empty_window = window_is_empty(p);
  return p;
}

ResonatorParams make_windowed_params(double logM, double p_lo, double p_hi) {
  auto p = make_params(logM, Mode::Windowed);
  if (!(p_lo > 0.0 && p_hi > 0.0)) throw std::invalid_argument("window bounds must be positive");
  p.support_lo = p_lo;
  p.support_hi = p_hi;
  p.empty_window = window_is_empty(p);
  return p;
}

double resonator_prime_value(std::uint64_t p, const ResonatorParams& params) {
  const double pd = static_cast<double>(p);
  if (pd < params.support_lo || pd > params.support_hi) return 0.0;
  return params.L / (std::sqrt(pd) * std::log(pd));
}

double resonator_coeff(const arith::Factorization& f, const ResonatorParams& params) {
  double v = 1.0;
  for (const auto& pp : f.factors()) {
    if (pp.exponent > 1) return 0.0;
    v *= resonator_prime_value(pp.prime, params);
    if (v == 0.0) return 0.0;
  }
  return v;
}

double resonator_coeff(std::uint64_t n, const ResonatorParams& params) {
  if (n == 0) throw std::invalid_argument("resonator_coeff: n must be positive");
  return resonator_coeff(arith::factorize_trial(n), params);
}

Resonator::Resonator(ResonatorParams params, std::uint64_t m_cap)
    : params_(params), m_cap_(m_cap) {
  if (m_cap < 1) throw std::invalid_argument("Resonator: M_cap must be positive");
  if (m_cap > kMaxEnumeration) throw ResourceLimit("Resonator: M_cap above 10^7");
  const auto lo = window_lo(params_);
  const auto hi = window_hi(params_, static_cast<double>(m_cap));
  if (!params_.empty_window && hi >= lo) primes_ = arith::primes_in_range(lo, hi);

  std::vector<double> fp(primes_.size());
  for (std::size_t i = 0; i < primes_.size(); ++i) fp[i] = resonator_prime_value(primes_[i], params_);
  // Depth-first over increasing prime indices.
  struct Frame {
    std::uint64_t n;
    double f;
    std::size_t next;
  };
  std::vector<Frame> stack{{1, 1.0, 0}};
  while (!stack.empty()) {
    const Frame fr = stack.back();
    stack.pop_back();
    coeffs_.emplace_back(fr.n, fr.f);
    for (std::size_t i = fr.next; i < primes_.size(); ++i) {
      if (fr.n > m_cap_ / primes_[i]) break;
      stack.push_back({fr.n * primes_[i], fr.f * fp[i], i + 1});
    }
  }
  std::sort(coeffs_.begin(), coeffs_.end());
}

arith::ArithFunctionTable Resonator::table(Weighting w) const {
  arith::ArithFunctionTable t;
  t.values.assign(m_cap_ + 1, 0.0);
  for (const auto& [n, f] : coeffs_) {
    double v = f;
    if (w != Weighting::F) v *= std::sqrt(static_cast<double>(n));
    if (w == Weighting::SqrtNMuF && arith::factorize_trial(n).omega() % 2 == 1) v = -v;
    t.values[n] = v;
  }
  switch (w) {
    case Weighting::F: t.name = "f"; break;
    case Weighting::SqrtNF: t.name = "sqrt(n) f(n)"; break;
    case Weighting::SqrtNMuF: t.name = "sqrt(n) mu(n) f(n)"; break;
  }
  std::ostringstream sup;
  sup << "squarefree products of primes in [" << params_.support_lo << ", " << params_.support_hi
      << "] up to " << m_cap_;
  t.support = sup.str();
  return t;
}

void Resonator::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "n,f\n";
  char buf[64];
  for (const auto& [n, f] : coeffs_) {
    std::snprintf(buf, sizeof buf, "%llu,%.15g\n", static_cast<unsigned long long>(n), f);
    out << buf;
  }
  if (!out) throw IoError("short write to " + path.string());
}

QuadFormReport quadform(const arith::ArithFunctionTable& x, std::uint64_t M) {
  check_table(x, M);
  CompensatedSum<double> norm;
  for (std::uint64_t n = 1; n <= M; ++n) norm += x[n] * x[n];
  if (norm.value() == 0.0) throw DegenerateInput("quadform: coefficient vector is zero");
  std::vector<double> w(M + 1, 0.0);
  for (std::uint64_t n = 1; n <= M; ++n) w[n] = 1.0 / std::sqrt(static_cast<double>(n));
  QuadFormReport r;
  r.numerator = pair_sum(x, M, w);
  r.denominator = norm.value();
  r.ratio = r.numerator / r.denominator;
  r.m_cap = M;
  return r;
}

double weighted_quadform(const arith::ArithFunctionTable& x, std::uint64_t M, int i,
                         PairWeight weight) {
  check_table(x, M);
  if (i < 0 || i > 2) throw std::invalid_argument("weighted_quadform: i must be 0, 1 or 2");
  std::vector<double> w(M + 1, 0.0);
  if (weight == PairWeight::LogPower) {
    for (std::uint64_t n = 1; n <= M; ++n) {
      w[n] = std::pow(std::log(static_cast<double>(n)), i) / std::sqrt(static_cast<double>(n));
    }
  } else if (M >= 2) {
    const auto table = arith::build_prime_table(M);
    auto lam = arith::lambda_table(table, M, 1);
    if (weight == PairWeight::LambdaLog) {
      lam = arith::dirichlet_convolve(lam, arith::log_power_table(M, 1), M);
    }
    for (std::uint64_t n = 1; n <= M; ++n) w[n] = lam[n] / std::sqrt(static_cast<double>(n));
  }
  return pair_sum(x, M, w);
}

EulerProducts euler_products(const ResonatorParams& params, PrimeMode mode) {
  EulerProducts out;
  out.predicted = std::sqrt(params.logM / std::log(params.logM));
  if (params.empty_window) return out;
  const double L = params.L;
  if (mode == PrimeMode::ExactSieve) {
    if (params.support_hi > kSieveBudget) {
      std::ostringstream msg;
      msg << "exact prime sum up to " << params.support_hi
          << " exceeds the sieve budget of 1e9; use the pnt integral mode";
      throw ResourceLimit(msg.str());
    }
    const auto sums = arith::sum_over_primes(
        window_lo(params), window_hi(params, params.support_hi), 2,
        [L](std::uint64_t p, std::span<double> acc) {
          const double pd = static_cast<double>(p);
          const double sp = std::sqrt(pd);
          const double f = L / (sp * std::log(pd));
          acc[0] += std::log1p(f * f + f / sp);
          acc[1] += std::log1p(f * f);
        });
    out.logQ1 = sums[0];
    out.logQ2 = sums[1];
    return out;
  }
  // u = log t; dt / log t = e^u du / u, f(t)^2 = L^2 e^{-u} / u^2.
  const double u_lo = std::log(std::max(params.support_lo, 2.0));
  const double u_hi = std::log(params.support_hi);
  if (!(u_hi > u_lo)) return out;
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  auto log1p_over = [](double y) { return y < 1e-8 ? 1.0 - 0.5 * y : std::log1p(y) / y; };
  auto q2 = [&](double u) {
    const double x = L * L * std::exp(-u) / (u * u);
    return log1p_over(x) * L * L / (u * u * u);
  };
  auto ratio = [&](double u) {
    const double x = L * L * std::exp(-u) / (u * u);
    const double y = L * std::exp(-u) / (u * (1.0 + x));
    return log1p_over(y) * L / (u * u * (1.0 + x));
  };
  out.logQ2 = GK::integrate(q2, u_lo, u_hi, 20, 1e-12);
  out.logQ1 = out.logQ2 + GK::integrate(ratio, u_lo, u_hi, 20, 1e-12);
  return out;
}

EigenResult eigen_optimal_ratio(std::uint64_t M, double residual_tol) {
  if (M < 1 || M > kMaxEigenDim) throw ResourceLimit("eigen_optimal_ratio: need 1 <= M <= 5000");
  // Off-diagonal pairs (a, b), a | b, a < b.
  std::vector<std::uint32_t> pa, pb;
  std::vector<double> pv;
  for (std::uint64_t a = 1; a <= M; ++a) {
    for (std::uint64_t b = 2 * a; b <= M; b += a) {
      pa.push_back(static_cast<std::uint32_t>(a - 1));
      pb.push_back(static_cast<std::uint32_t>(b - 1));
      pv.push_back(0.5 * std::sqrt(static_cast<double>(a) / static_cast<double>(b)));
    }
  }
  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    y = x;
    for (std::size_t k = 0; k < pv.size(); ++k) {
      y[pa[k]] += pv[k] * x[pb[k]];
      y[pb[k]] += pv[k] * x[pa[k]];
    }
  };
  auto norm = [](const std::vector<double>& v) {
    CompensatedSum<double> s;
    for (double e : v) s += e * e;
    return std::sqrt(s.value());
  };
  std::vector<double> x(M, 1.0 / std::sqrt(static_cast<double>(M))), y;
  EigenResult r;
  constexpr int kMaxIterations = 1000000;
  for (int it = 1; it <= kMaxIterations; ++it) {
    apply(x, y);
    CompensatedSum<double> rq;
    for (std::size_t i = 0; i < M; ++i) rq += x[i] * y[i];
    const double lambda = rq.value();
    CompensatedSum<double> res;
    for (std::size_t i = 0; i < M; ++i) res += (y[i] - lambda * x[i]) * (y[i] - lambda * x[i]);
    r.ratio = lambda;
    r.residual = std::sqrt(res.value());
    r.iterations = it;
    if (r.residual <= residual_tol) break;
    const double ny = norm(y);
    for (std::size_t i = 0; i < M; ++i) x[i] = y[i] / ny;
  }
  if (r.residual > residual_tol) {
    throw std::runtime_error("eigen_optimal_ratio: power iteration did not converge");
  }
  r.x_opt = std::move(x);
  return r;
}

LemmaResoResult lemma_reso_sums(ResoKind kind, const ResonatorParams& params,
                                std::uint64_t m_cap, double log_T) {
  const Resonator res(params, m_cap);
  LemmaResoResult out;
  out.degenerate = res.coeffs().size() == 1;
  const auto& c = res.coeffs();
  switch (kind) {
    case ResoKind::I: {
      const auto f = res.table(Weighting::F);
      std::vector<double> w(m_cap + 1, 0.0);
      for (std::uint64_t n = 1; n <= m_cap; ++n) w[n] = 1.0 / std::sqrt(static_cast<double>(n));
      out.numeric = pair_sum(f, m_cap, w);
      const auto q = euler_products(params, PrimeMode::ExactSieve);
      out.reference = std::exp(q.logQ1);
      break;
    }
    case ResoKind::II: {
      CompensatedSum<double> s;
      for (const auto& [n, f] : c) s += f * f;
      out.numeric = s.value();
      out.reference = std::exp(euler_products(params, PrimeMode::ExactSieve).logQ2);
      break;
    }
    case ResoKind::IV_1:
    case ResoKind::IV_2: {
      const int i = kind == ResoKind::IV_1 ? 1 : 2;
      CompensatedSum<double> s;
      for (const auto& [n, f] : c) {
        if (n == 1) continue;
        const auto fac = arith::factorize_trial(n);
        if (fac.omega() > i) continue;
        double g = 1.0;
        for (const auto& pp : fac.factors()) {
          const double fp = resonator_prime_value(pp.prime, params);
          g *= 1.0 + fp * fp;
        }
        s += arith::lambda_k(fac, i) * f / (std::sqrt(static_cast<double>(n)) * g);
      }
      out.numeric = s.value();
      out.reference = log_T > 0.0 ? std::pow(log_T, 0.5 * i) : std::nan("");
      break;
    }
  }
  return out;
}

}  // namespace resonance::reso
