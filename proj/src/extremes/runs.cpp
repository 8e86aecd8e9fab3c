#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <sstream>
#include <stdexcept>

#include "resonance/asymptotics.hpp"
#include "resonance/dirichlet.hpp"
#include "resonance/errors.hpp"
#include "resonance/extremes.hpp"
#include "resonance/numeric.hpp"
#include "resonance/resonator.hpp"
#include "resonance/zeta.hpp"

namespace resonance::ext {

namespace {

// Below the first zero every cumulative prediction is 0.
constexpr double kFirstZeroFloor = 14.0;

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ZeroSummary summarize(const ZeroRow& row) {
  ZeroSummary s;
  s.index = row.index;
  s.gamma = row.gamma;
  s.abs_zeta_prime = std::abs(row.zeta_prime);
  s.normalized = s.abs_zeta_prime * std::cbrt(row.gamma);
  s.weight = row.weight;
  return s;
}

template <class F>
double cumulative(double t1, double t2, F&& at) {
  return at(t2) - (t1 >= kFirstZeroFloor ? at(t1) : 0.0);
}

std::vector<ZeroRow> evaluate_rows(const std::vector<zeta::ZeroRecord>& zeros,
                                   const arith::ArithFunctionTable& x, double prec) {
  std::vector<double> gammas;
  gammas.reserve(zeros.size());
  for (const auto& z : zeros) gammas.push_back(z.gamma);
  const zeta::DirichletPolynomial A({x.values.begin() + 1, x.values.end()});
  const auto a = A.eval_critical(gammas);
  std::vector<ZeroRow> rows(zeros.size());
  parallel_blocks((zeros.size() + 63) / 64, [&](std::size_t b) {
    for (std::size_t i = 64 * b; i < std::min(zeros.size(), 64 * (b + 1)); ++i) {
      rows[i].index = zeros[i].index;
      rows[i].gamma = zeros[i].gamma;
      rows[i].zeta_prime = zeta::zeta_prime_eval({0.5, zeros[i].gamma}, prec);
      rows[i].weight = std::norm(a[i]);
    }
  });
  return rows;
}

// Fills the sums, extremes and soundness checks shared by every run.
void fill_sums(ExtremesReport& rep, std::vector<ZeroRow> rows) {
  rep.zero_count = rows.size();
  CompensatedSum<double> s1r, s1i, s2, s3r, s3i;
  for (const auto& row : rows) {
    s1r += row.weight * row.zeta_prime.real();
    s1i += row.weight * row.zeta_prime.imag();
    s2 += row.weight;
    const auto inv = 1.0 / row.zeta_prime;
    s3r += row.weight * inv.real();
    s3i += row.weight * inv.imag();
  }
  rep.S1 = {s1r.value(), s1i.value()};
  rep.S2 = s2.value();
  rep.S3 = {s3r.value(), s3i.value()};
  if (!(rep.S2 > 0.0)) throw DegenerateInput("S2 = 0: coefficients vanish at every zero in range");
  rep.bound_S1 = std::abs(rep.S1) / rep.S2;
  rep.bound_S3 = std::abs(rep.S3) / rep.S2;

  auto by_abs = [](const ZeroRow& a, const ZeroRow& b) {
    return std::abs(a.zeta_prime) < std::abs(b.zeta_prime);
  };
  rep.argmax = summarize(*std::max_element(rows.begin(), rows.end(), by_abs));
  rep.argmin = summarize(*std::min_element(rows.begin(), rows.end(), by_abs));
  rep.heaviest = summarize(*std::max_element(
      rows.begin(), rows.end(), [](const ZeroRow& a, const ZeroRow& b) { return a.weight < b.weight; }));

  // Weighted averages never exceed the maximum; 1e-12 absorbs rounding.
  rep.checks.push_back(make_upper_bound_report("bound_S1", rep.bound_S1, rep.argmax.abs_zeta_prime, 1e-12,
                                               "|S1|/S2 <= max |zeta'(rho)|"));
  rep.checks.push_back(make_upper_bound_report("bound_S3", rep.bound_S3, 1.0 / rep.argmin.abs_zeta_prime,
                                               1e-12, "|S3|/S2 <= max |zeta'(rho)|^-1"));
  rep.rows = std::move(rows);
}

ExtremesReport base_report(const ExperimentConfig& cfg, const arith::ArithFunctionTable& x) {
  ExtremesReport rep;
  rep.mode = mode_name(cfg.mode);
  rep.generated_at = utc_now();
  rep.M = x.limit();
  rep.r = cfg.r;
  rep.coefficients = x.name + (x.support.empty() ? "" : " on " + x.support);
  rep.c2_reference = 1.0 / std::sqrt(2.0);
  rep.c3_reference = std::sqrt(2.0 / 3.0);
  return rep;
}

void fill_predictions(ExtremesReport& rep, const ExperimentConfig& cfg, const arith::ArithFunctionTable& x) {
  const std::uint64_t M = x.limit();
  const double theta = cfg.theta > 0.0 ? cfg.theta : rep.theta_effective;
  if (theta < 0.5) {
    const double th = std::max(theta, 1e-6);
    rep.predicted_S1 = cumulative(rep.t1, rep.t2, [&](double T) { return asym::predict_S1(x, T, M, th); });
  }
  rep.predicted_S2 = cumulative(rep.t1, rep.t2, [&](double T) { return asym::predict_S2(x, T, M); });
  rep.predicted_S3 = asym::predict_S3(x, rep.t1, rep.t2, M);
}

void check_range(const ExperimentConfig& cfg) {
  if (!(cfg.t1 >= 0.0 && cfg.t1 < cfg.t2)) throw std::invalid_argument("need 0 <= t1 < t2");
}

}  // namespace

bool ExtremesReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  for (const auto& c : criteria) {
    if (!c.pass) return false;
  }
  return true;
}

arith::ArithFunctionTable large_coefficients(const ExperimentConfig& cfg) {
  if (cfg.M < 1 || cfg.M > 10000) throw std::invalid_argument("large values: M must lie in [1, 10^4]");
  if (cfg.mode == RunMode::LargeResonator) {
    const double logM = cfg.logM > 0.0 ? cfg.logM : std::log(static_cast<double>(cfg.M));
    const auto params = cfg.p_hi > 0.0 ? reso::make_windowed_params(logM, cfg.p_lo, cfg.p_hi)
                                       : reso::make_params(logM, reso::Mode::Windowed);
    if (params.empty_window) throw DegenerateInput("resonator window contains no primes; pass --window");
    return reso::Resonator(params, cfg.M).table(reso::Weighting::SqrtNF);
  }
  if (cfg.r < 1 || cfg.r > 6) throw std::invalid_argument("large values: r must lie in [1, 6]");
  const auto table = arith::build_prime_table(std::max<std::uint64_t>(cfg.M, 2));
  auto x = arith::tau_table(table, cfg.M, cfg.r);
  x.name = "tau_" + std::to_string(cfg.r);
  x.support = "n <= " + std::to_string(cfg.M);
  return x;
}

arith::ArithFunctionTable small_coefficients(const ExperimentConfig& cfg) {
  if (cfg.p_hi <= 0.0) {
    auto x = arith::delta_table(1);
    x.name = "indicator of {1}";
    return x;
  }
  const double logM = cfg.logM > 0.0 ? cfg.logM : std::log(static_cast<double>(cfg.m_cap));
  const auto params = reso::make_windowed_params(logM, cfg.p_lo, cfg.p_hi);
  if (params.empty_window) throw DegenerateInput("resonator window contains no primes");
  return reso::Resonator(params, cfg.m_cap).table(reso::Weighting::SqrtNMuF);
}

ExtremesReport run_large_values(const ExperimentConfig& cfg, ZeroStore& store) {
  return run_large_values(cfg, store, large_coefficients(cfg));
}

ExtremesReport run_large_values(const ExperimentConfig& cfg, ZeroStore& store,
                                const arith::ArithFunctionTable& x) {
  check_range(cfg);
  if (x.limit() < 1) throw DegenerateInput("empty coefficient table");
  auto rep = base_report(cfg, x);
  rep.t1 = cfg.t1;
  rep.t2 = cfg.t2;
  rep.theta_effective = std::log(static_cast<double>(rep.M)) / std::log(cfg.t2);
  fill_sums(rep, evaluate_rows(store.zeros(cfg.t1, cfg.t2), x, cfg.zeta_prec));
  fill_predictions(rep, cfg, x);
  return rep;
}

ExtremesReport run_small_values(const ExperimentConfig& cfg, ZeroStore& store) {
  return run_small_values(cfg, store, small_coefficients(cfg));
}

ExtremesReport run_small_values(const ExperimentConfig& cfg, ZeroStore& store,
                                const arith::ArithFunctionTable& x) {
  check_range(cfg);
  if (cfg.t1 < 20.0) throw std::invalid_argument("small values: t1 must be at least 20");
  const auto& cache = store.ensure(cfg.t2 + 20.0);
  const auto lo = zeta::good_ordinate(cfg.t1, cache);
  const auto hi = zeta::good_ordinate(cfg.t2, cache);
  auto rep = base_report(cfg, x);
  rep.t1 = lo.t;
  rep.t2 = hi.t;
  rep.theta_effective = std::log(static_cast<double>(rep.M)) / std::log(hi.t);
  auto rows = evaluate_rows(store.zeros(lo.t, hi.t), x, cfg.zeta_prec);
  for (const auto& row : rows) {
    if (std::abs(row.zeta_prime) < cfg.multiplicity_threshold) {
      std::ostringstream msg;
      msg << "|zeta'(rho)| = " << std::abs(row.zeta_prime) << " at gamma = " << row.gamma
          << " (zero #" << row.index << ") is below " << cfg.multiplicity_threshold;
      throw FlaggedMultiplicity(msg.str());
    }
  }
  fill_sums(rep, std::move(rows));
  fill_predictions(rep, cfg, x);
  return rep;
}

}  // namespace resonance::ext
