#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "resonance/asymptotics.hpp"
#include "resonance/dirichlet.hpp"
#include "resonance/errors.hpp"
#include "resonance/extremes.hpp"
#include "resonance/resonator.hpp"
#include "resonance/zeta.hpp"

namespace resonance::ext {

namespace {

constexpr double kPi = std::numbers::pi;

using Checks = std::vector<PredictionReport>;

PredictionReport flag(std::string label, bool pass, std::string detail) {
  PredictionReport r;
  r.label = std::move(label);
  r.numeric = pass ? 1.0 : 0.0;
  r.predicted = 1.0;
  r.ratio = r.numeric;
  r.pass = pass;
  r.detail = std::move(detail);
  return r;
}

// Relative deviation of a complex sum from a real prediction.
PredictionReport complex_ratio(std::string label, std::complex<double> numeric, double predicted,
                               double tolerance, const std::string& detail) {
  auto r = make_ratio_report(std::move(label), numeric.real(), predicted, tolerance, detail);
  const double dev = std::abs(numeric / predicted - 1.0);
  r.pass = std::isfinite(dev) && dev <= tolerance;
  std::ostringstream d;
  d << detail << "; Im = " << numeric.imag() << ", |S/pred - 1| = " << dev;
  r.detail = d.str();
  return r;
}

ExperimentConfig run_config(RunMode mode, double t1, double t2, const ExperimentConfig& base) {
  ExperimentConfig c = base;
  c.mode = mode;
  c.t1 = t1;
  c.t2 = t2;
  c.theta = 0.0;
  c.logM = 0.0;
  c.p_lo = c.p_hi = 0.0;
  return c;
}

arith::ArithFunctionTable ones(std::uint64_t M) {
  auto x = arith::unit_table(M);
  x.name = "1 on n <= " + std::to_string(M);
  return x;
}

// 1. Beta integrals and Euler-product identities.
void identities(Checks& out) {
  using boost::math::quadrature::gauss_kronrod;
  double worst = 0.0;
  for (int u = 0; u <= 10; ++u) {
    for (int v = 0; v <= 10; ++v) {
      const double q = gauss_kronrod<double, 61>::integrate(
          [&](double t) { return std::pow(t, u) * std::pow(1.0 - t, v); }, 0.0, 1.0, 10, 1e-14);
      worst = std::max(worst, std::abs(asym::beta_cx(u, v, 1.0).i_uv - q));
    }
  }
  out.push_back(make_upper_bound_report("beta_quadrature", worst, 1e-10, 0.0,
                                        "max |i(u,v) - quadrature| over u, v <= 10"));
  for (int r = 1; r <= 4; ++r) {
    const auto c = asym::constants(r, 1000000);
    out.push_back(make_ratio_report("C0_vs_C1C2_r" + std::to_string(r), c.C0, c.C1 * c.C2, 1e-3,
                                    "prime cutoff 10^6"));
    out.push_back(make_ratio_report("C0_forms_r" + std::to_string(r), c.C0_first, c.C0, 1e-3,
                                    "tau_r f_1 form vs tau_r tau_{r+1} form"));
  }
}

// 2. Multiplicative sums: 15% at 10^6 and monotone approach with 2% slack.
void lemma_mult(Checks& out) {
  struct Case {
    asym::MultKind kind;
    int r;
    asym::MultExtra extra;
    std::string tag;
  };
  std::vector<Case> cases;
  for (int r = 1; r <= 3; ++r) {
    const std::string rs = "_r" + std::to_string(r);
    cases.push_back({asym::MultKind::I, r, {}, "i" + rs});
    cases.push_back({asym::MultKind::II, r, {}, "ii" + rs});
    cases.push_back({asym::MultKind::III, r, {}, "iii" + rs});
    cases.push_back({asym::MultKind::V, r, asym::MultExtra{.k = r}, "v_k" + std::to_string(r)});
    for (int i = 1; i <= 2; ++i) {
      const std::string is = "_f" + std::to_string(i);
      cases.push_back({asym::MultKind::VI, r, asym::MultExtra{.i = i}, "vi" + rs + is});
      cases.push_back({asym::MultKind::VII, r, asym::MultExtra{.i = i}, "vii" + rs + is});
    }
  }
  for (const auto& c : cases) {
    double ratios[3];
    int j = 0;
    PredictionReport last;
    for (double x : {1e4, 1e5, 1e6}) {
      last = asym::mult_sum_check(c.kind, c.r, x, c.extra, 0.15);
      ratios[j++] = last.ratio;
    }
    const bool monotone = std::abs(ratios[1] - 1) <= std::abs(ratios[0] - 1) + 0.02 &&
                          std::abs(ratios[2] - 1) <= std::abs(ratios[1] - 1) + 0.02;
    std::ostringstream d;
    d << last.detail << "; ratios at 1e4, 1e5, 1e6: " << ratios[0] << ", " << ratios[1] << ", " << ratios[2]
      << (monotone ? "" : "; not monotone");
    last.label = "mult_" + c.tag;
    last.detail = d.str();
    last.pass = last.pass && monotone;
    out.push_back(last);
  }
}

// 3. log(Q1/Q2) / sqrt(logM / log logM) trends.
void lemma_reso(Checks& out) {
  auto trend = [&](reso::PrimeMode mode, std::initializer_list<double> logMs, double lo, double hi,
                   const std::string& tag) {
    double prev = -1e300;
    bool increasing = true;
    std::ostringstream d;
    for (double logM : logMs) {
      const double v = reso::euler_products(reso::make_params(logM), mode).ratio();
      increasing = increasing && v > prev;
      prev = v;
      d << (d.tellp() > 0 ? ", " : "") << "logM=" << logM << ": " << v;
      PredictionReport r = make_ratio_report("reso_" + tag + "_logM_" + std::to_string(static_cast<long long>(logM)),
                                             v, 0.5 * (lo + hi), 0.0);
      r.pass = v > lo && v < hi;
      r.tolerance = 0.5 * (hi - lo) / (0.5 * (lo + hi));
      std::ostringstream rd;
      rd << "required in (" << lo << ", " << hi << ")";
      r.detail = rd.str();
      out.push_back(r);
    }
    out.push_back(flag("reso_" + tag + "_increasing", increasing, d.str()));
  };
  trend(reso::PrimeMode::ExactSieve, {400.0, 600.0, 1000.0}, 0.3, 0.55, "exact");
  trend(reso::PrimeMode::PntIntegral, {1e3, 1e6, 1e12}, 0.4, 1.0, "pnt");
}

// 4. Zero scan and derivative cross-check.
void zeros(Checks& out, ZeroStore& store) {
  const auto first = zeta::find_zeros(0.0, 100.0);
  out.push_back(make_ratio_report("zero_count_100", static_cast<double>(first.size()), 29.0, 0.0,
                                  "certified Gram-block scan of (0, 100]"));
  out.push_back(make_ratio_report("rvm_100", static_cast<double>(first.size()), zeta::rvm_count(100.0), 0.5 / 29.0,
                                  "count vs smooth Riemann-von Mangoldt term"));
  const double g1 = first.size() > 0 ? first.records()[0].gamma : NAN;
  auto r = make_ratio_report("gamma_1", g1, 14.134725141734693, 1e-6 / 14.134725141734693);
  out.push_back(r);

  const auto all = store.zeros(0.0, 5000.0);
  const double h = 1e-5;
  double worst = 0.0, worst_gamma = 0.0;
  for (const auto& z : all) {
    const zeta::Complex s{0.5, z.gamma};
    const auto d = zeta::zeta_prime_eval(s, 1e-13);
    const auto fd = (zeta::zeta_eval(s + h, 1e-15) - zeta::zeta_eval(s - h, 1e-15)) / (2.0 * h);
    const double err = std::abs(d - fd);
    if (err > worst) {
      worst = err;
      worst_gamma = z.gamma;
    }
  }
  std::ostringstream d;
  d << all.size() << " zeros up to 5000; worst at gamma = " << worst_gamma << "; step 1e-5";
  out.push_back(make_upper_bound_report("zeta_prime_finite_difference", worst, 1e-7, 0.0, d.str()));
}

// 5. S2 desk check.
void s2_desk(Checks& out, ZeroStore& store, const ExperimentConfig& base) {
  const auto cfg = run_config(RunMode::LargeTauR, 0.0, 5000.0, base);
  const auto rep = run_large_values(cfg, store, ones(3));
  out.push_back(make_ratio_report("S2_ones_3", rep.S2, rep.predicted_S2, 0.25, "x = 1 on n <= 3, (0, 5000]"));
  const auto one = run_large_values(cfg, store, arith::delta_table(1));
  const double n_certified = static_cast<double>(store.ensure(5000.0).range(0.0, 5000.0).size());
  out.push_back(make_ratio_report("S2_delta_count", one.S2, n_certified, 0.0, "N(5000) from the certified scan"));
}

// 6. Sum of zeta'(rho) against (T / 4 pi) log^2(T / 2 pi).
void s1_desk(Checks& out, ZeroStore& store, const ExperimentConfig& base) {
  auto run = [&](double T) {
    const auto rep = run_large_values(run_config(RunMode::LargeTauR, 0.0, T, base), store, arith::delta_table(1));
    const double pred = T / (4 * kPi) * std::pow(std::log(T / (2 * kPi)), 2);
    return std::pair{rep.S1, pred};
  };
  const auto [s5000, p5000] = run(5000.0);
  out.push_back(complex_ratio("S1_delta_5000", s5000, p5000, 0.30, "sum over 0 < gamma <= 5000"));
  const auto [s2000, p2000] = run(2000.0);
  const auto [s10000, p10000] = run(10000.0);
  const double dev2000 = std::abs(s2000 / p2000 - 1.0);
  const double dev10000 = std::abs(s10000 / p10000 - 1.0);
  std::ostringstream d;
  d << "relative deviation " << dev2000 << " at 2000, " << dev10000 << " at 10^4";
  out.push_back(make_upper_bound_report("S1_deviation_shrinks", dev10000, dev2000, 0.0, d.str()));
}

// 7. Sum of 1 / zeta'(rho) between good ordinates.
void s3_desk(Checks& out, ZeroStore& store, const ExperimentConfig& base) {
  const auto rep = run_small_values(run_config(RunMode::SmallValues, 1000.0, 2000.0, base), store,
                                    arith::delta_table(1));
  std::ostringstream d;
  d << "good ordinates " << rep.t1 << ", " << rep.t2;
  out.push_back(complex_ratio("S3_delta", rep.S3, (rep.t2 - rep.t1) / (2 * kPi), 0.30, d.str()));
}

// 8. Weighted-average soundness on large and small runs.
void soundness(Checks& out, ZeroStore& store, const ExperimentConfig& base) {
  auto collect = [&](const ExtremesReport& rep, const std::string& tag) {
    for (auto c : rep.checks) {
      c.label = tag + "_" + c.label;
      out.push_back(c);
    }
  };
  {
    auto cfg = run_config(RunMode::LargeTauR, 0.0, 10000.0, base);
    cfg.r = 2;
    cfg.M = 50;
    collect(run_large_values(cfg, store), "large_tau2_M50");
    cfg.r = 1;
    cfg.M = 1;
    collect(run_large_values(cfg, store), "large_baseline");
    auto rcfg = run_config(RunMode::LargeResonator, 0.0, 5000.0, base);
    rcfg.M = 10000;
    rcfg.p_lo = 2;
    rcfg.p_hi = 50;
    collect(run_large_values(rcfg, store), "large_resonator");
  }
  auto win = run_config(RunMode::SmallValues, 1000.0, 2000.0, base);
  win.p_lo = 83;
  win.p_hi = 113;
  win.m_cap = 10000;
  const auto windowed = run_small_values(win, store);
  collect(windowed, "small_windowed");
  const auto uniform = run_small_values(run_config(RunMode::SmallValues, 1000.0, 2000.0, base), store);
  collect(uniform, "small_uniform");
  const double implied = uniform.S2 / std::abs(uniform.S3);
  out.push_back(make_upper_bound_report("windowed_min_vs_uniform_bound", windowed.argmin.abs_zeta_prime, implied,
                                        0.0, "windowed run minimum |zeta'(rho)| vs uniform S2/|S3|"));
}

// 9. Power iteration against a dense eigensolve.
void spectral(Checks& out) {
  double worst = 0.0;
  double worst_violation = -1e300;
  std::mt19937_64 rng(20240101);
  std::normal_distribution<double> gauss;
  for (std::uint64_t M : {1, 2, 3, 5, 8, 13, 20, 30, 50}) {
    const int m = static_cast<int>(M);
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(m, m);
    for (int a = 1; a <= m; ++a) {
      for (int b = 2 * a; b <= m; b += a) {
        A(a - 1, b - 1) = A(b - 1, a - 1) = 0.5 * std::sqrt(static_cast<double>(a) / b);
      }
    }
    const double dense = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(A).eigenvalues().maxCoeff();
    const auto oracle = reso::eigen_optimal_ratio(M);
    worst = std::max(worst, std::abs(oracle.ratio - dense));

    std::vector<arith::ArithFunctionTable> vectors;
    const auto table = arith::build_prime_table(std::max<std::uint64_t>(M, 2));
    vectors.push_back(arith::delta_table(M));
    vectors.push_back(arith::unit_table(M));
    vectors.push_back(arith::tau_table(table, M, 2));
    vectors.push_back(arith::tau_table(table, M, 3));
    vectors.push_back(arith::make_table("n^-1/2", M, [](std::uint64_t n) { return 1.0 / std::sqrt(double(n)); }));
    vectors.push_back(arith::make_table("x_opt", M, [&](std::uint64_t n) { return oracle.x_opt[n - 1]; }));
    for (int k = 0; k < 10; ++k) {
      vectors.push_back(arith::make_table("gaussian", M, [&](std::uint64_t) { return gauss(rng); }));
    }
    for (const auto& x : vectors) {
      const double ratio = reso::quadform(x, M).ratio;
      worst_violation = std::max(worst_violation, ratio - oracle.ratio);
    }
  }
  out.push_back(make_upper_bound_report("eigen_vs_dense", worst, 1e-8, 0.0, "max |power - dense| over M <= 50"));
  std::ostringstream d;
  d << "max (quadform ratio - oracle) = " << worst_violation;
  out.push_back(flag("no_vector_beats_oracle", worst_violation <= 1e-12, d.str()));
}

// 10. Mean value of |A|^2 for x = (1, 1) over an interval of length 10^4.
void mean_value(Checks& out) {
  out.push_back(zeta::mean_value_check(zeta::DirichletPolynomial({1.0, 1.0}), 1000.0, 11000.0));
}

struct Entry {
  int id;
  const char* name;
  double time_limit;  // seconds; 0 = none
  std::function<void(Checks&, ZeroStore&, const ExperimentConfig&)> run;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> list = {
      {1, "identities", 60.0, [](Checks& o, ZeroStore&, const ExperimentConfig&) { identities(o); }},
      {2, "lemma_mult", 300.0, [](Checks& o, ZeroStore&, const ExperimentConfig&) { lemma_mult(o); }},
      {3, "lemma_reso", 600.0, [](Checks& o, ZeroStore&, const ExperimentConfig&) { lemma_reso(o); }},
      {4, "zeros", 600.0, [](Checks& o, ZeroStore& s, const ExperimentConfig&) { zeros(o, s); }},
      {5, "s2_desk", 0.0, s2_desk},
      {6, "s1_desk", 0.0, s1_desk},
      {7, "s3_desk", 0.0, s3_desk},
      {8, "soundness", 0.0, soundness},
      {9, "spectral", 0.0, [](Checks& o, ZeroStore&, const ExperimentConfig&) { spectral(o); }},
      {10, "mean_value", 0.0, [](Checks& o, ZeroStore&, const ExperimentConfig&) { mean_value(o); }},
  };
  return list;
}

bool selected(const Entry& e, const std::string& only) {
  if (only.empty()) return true;
  const std::string id = std::to_string(e.id);
  return only == id || only == "c" + id || only == e.name;
}

}  // namespace

const std::vector<CriterionInfo>& criteria() {
  static const std::vector<CriterionInfo> list = [] {
    std::vector<CriterionInfo> v;
    for (const auto& e : entries()) v.push_back({e.id, e.name});
    return v;
  }();
  return list;
}

std::vector<CriterionResult> run_verify(const ExperimentConfig& cfg, ZeroStore& store) {
  std::vector<CriterionResult> results;
  bool any = false;
  for (const auto& e : entries()) {
    if (!selected(e, cfg.only)) continue;
    any = true;
    CriterionResult res;
    res.id = e.id;
    res.name = e.name;
    const auto start = std::chrono::steady_clock::now();
    try {
      e.run(res.checks, store, cfg);
    } catch (const std::exception& ex) {
      res.checks.push_back(flag("exception", false, ex.what()));
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (e.time_limit > 0.0) {
      res.checks.push_back(make_upper_bound_report("runtime_seconds", res.seconds, e.time_limit));
    }
    res.pass = !res.checks.empty();
    std::size_t failed = 0;
    for (const auto& c : res.checks) {
      if (!c.pass) {
        res.pass = false;
        ++failed;
      }
    }
    std::ostringstream d;
    d << res.checks.size() - failed << "/" << res.checks.size() << " checks pass";
    for (const auto& c : res.checks) {
      if (!c.pass) d << "; FAIL " << c.label << " (ratio " << c.ratio << ")";
    }
    res.detail = d.str();
    results.push_back(std::move(res));
  }
  if (!any) throw std::invalid_argument("verify: unknown criterion " + cfg.only);
  return results;
}

ExtremesReport verify_report(const ExperimentConfig& cfg, ZeroStore& store) {
  ExtremesReport rep;
  rep.mode = mode_name(RunMode::Verify);
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  rep.generated_at = buf;
  rep.c2_reference = 1.0 / std::sqrt(2.0);
  rep.c3_reference = std::sqrt(2.0 / 3.0);
  rep.criteria = run_verify(cfg, store);
  return rep;
}

}  // namespace resonance::ext
