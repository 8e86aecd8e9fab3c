// extremes: zero scans, resonance runs and the acceptance suite from the
// command line. Exit status is 0 when every check passes, 1 when some check
// fails and 2 on errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "resonance/errors.hpp"
#include "resonance/extremes.hpp"

using namespace resonance;
using namespace resonance::ext;

namespace {

void print_summary(const ExtremesReport& rep) {
  std::printf("mode %s, zeros in (%.6f, %.6f]: %llu, coefficients: %s\n", rep.mode.c_str(), rep.t1, rep.t2,
              static_cast<unsigned long long>(rep.zero_count), rep.coefficients.c_str());
  std::printf("  effective theta = %.4f\n", rep.theta_effective);
  std::printf("  S1 = %.10g %+.10gi   predicted %.10g\n", rep.S1.real(), rep.S1.imag(), rep.predicted_S1);
  std::printf("  S2 = %.10g   predicted %.10g\n", rep.S2, rep.predicted_S2);
  std::printf("  S3 = %.10g %+.10gi   predicted %.10g\n", rep.S3.real(), rep.S3.imag(), rep.predicted_S3);
  std::printf("  |S1|/S2 = %.10g <= max |zeta'| = %.10g at gamma = %.6f (|zeta'| gamma^1/3 = %.6g)\n", rep.bound_S1,
              rep.argmax.abs_zeta_prime, rep.argmax.gamma, rep.argmax.normalized);
  std::printf("  |S3|/S2 = %.10g <= max 1/|zeta'| = %.10g; min |zeta'| = %.10g at gamma = %.6f (%.6g)\n",
              rep.bound_S3, 1.0 / rep.argmin.abs_zeta_prime, rep.argmin.abs_zeta_prime, rep.argmin.gamma,
              rep.argmin.normalized);
  std::printf("  heaviest zero gamma = %.6f, |A|^2 = %.6g, |zeta'| = %.6g\n", rep.heaviest.gamma, rep.heaviest.weight,
              rep.heaviest.abs_zeta_prime);
  for (const auto& c : rep.checks) {
    std::printf("  [%s] %s: %.10g vs %.10g (%s)\n", c.pass ? "PASS" : "FAIL", c.label.c_str(), c.numeric,
                c.predicted, c.detail.c_str());
  }
}

void print_criteria(const ExtremesReport& rep) {
  for (const auto& c : rep.criteria) {
    std::printf("[%s] criterion %d %s (%.1f s): %s\n", c.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), c.seconds,
                c.detail.c_str());
  }
}

void save(const ExtremesReport& rep, const ExperimentConfig& cfg, const ZeroStore& store) {
  emit_report(rep, Format::Json, store.dir() / "last_report.json");
  emit_report(rep, Format::Csv, store.dir() / "last_report.csv");
  if (!cfg.json_out.empty()) emit_report(rep, Format::Json, cfg.json_out);
  if (!cfg.csv_out.empty()) emit_report(rep, Format::Csv, cfg.csv_out);
}

std::pair<double, double> parse_window(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("--window expects p_lo,p_hi");
  return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resonance experiments for extreme values of zeta'(rho)"};
  app.require_subcommand(1);
  app.fallthrough();

  ExperimentConfig cfg;
  std::string config_file, cache_dir, window, json_out, csv_out;
  app.add_option("--config", config_file, "key = value file; its entries override flags")->check(CLI::ExistingFile);
  app.add_option("--cache-dir", cache_dir, "zero cache directory (default $EXTREMES_CACHE_DIR or ./zero_cache)");
  app.add_option("--json", json_out, "also write the JSON report here");
  app.add_option("--csv", csv_out, "also write the CSV report here");

  auto* zeros = app.add_subcommand("zeros", "zero cache management");
  zeros->require_subcommand(1);
  auto* scan = zeros->add_subcommand("scan", "scan and cache zeros with ordinates in (from, to]");
  double from = 0.0, to = 100.0;
  std::string zeros_csv;
  scan->add_option("--from", from, "lower ordinate")->required();
  scan->add_option("--to", to, "upper ordinate")->required();
  scan->add_option("--zeros-csv", zeros_csv, "write index,gamma for the range");

  auto* verify = app.add_subcommand("verify", "run the acceptance checklist");
  verify->add_option("--only", cfg.only, "criterion number or name");

  auto* large = app.add_subcommand("large", "large values: S1 / S2 over zeros");
  std::string large_mode = "tau_r";
  large->add_option("--mode", large_mode, "coefficients")->check(CLI::IsMember({"tau_r", "resonator"}));
  large->add_option("--r", cfg.r, "divisor order");
  large->add_option("--M", cfg.M, "polynomial length (<= 10^4)");
  large->add_option("--t1", cfg.t1, "lower ordinate");
  large->add_option("--t2", cfg.t2, "upper ordinate");
  large->add_option("--theta", cfg.theta, "length exponent for predictions (default log M / log t2)");
  large->add_option("--logM", cfg.logM, "resonator length parameter");
  large->add_option("--window", window, "resonator prime window p_lo,p_hi");

  auto* small = app.add_subcommand("small", "small values: S3 / S2 between good ordinates");
  small->add_option("--t1", cfg.t1, "lower ordinate")->required();
  small->add_option("--t2", cfg.t2, "upper ordinate")->required();
  small->add_option("--window", window, "resonator prime window p_lo,p_hi (omit for uniform weights)");
  small->add_option("--mcap", cfg.m_cap, "resonator length cap");
  small->add_option("--logM", cfg.logM, "resonator length parameter");
  small->add_option("--threshold", cfg.multiplicity_threshold, "smallest admissible |zeta'(rho)|");

  auto* report = app.add_subcommand("report", "re-emit the last report");
  std::string format = "json", report_out;
  report->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  report->add_option("--out", report_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!window.empty()) std::tie(cfg.p_lo, cfg.p_hi) = parse_window(window);
    cfg.cache_dir = cache_dir;
    cfg.json_out = json_out;
    cfg.csv_out = csv_out;
    if (*large) cfg.mode = large_mode == "tau_r" ? RunMode::LargeTauR : RunMode::LargeResonator;
    if (*small) cfg.mode = RunMode::SmallValues;
    if (*verify) cfg.mode = RunMode::Verify;
    if (!config_file.empty()) apply_config_file(cfg, config_file);

    ZeroStore store(resolve_cache_dir(cfg.cache_dir));

    if (*zeros) {
      store.ensure(to);
      const auto recs = store.zeros(from, to);
      std::printf("%zu zeros in (%g, %g]; cache covers (0, %g], checksum %016llx\n", recs.size(), from, to,
                  store.ensure(to).t_max(), static_cast<unsigned long long>(store.ensure(to).checksum()));
      if (!zeros_csv.empty()) {
        zeta::ZeroCache(from, to, recs).write_csv(zeros_csv);
      }
      return 0;
    }
    if (*report) {
      const auto path = store.dir() / (format == "json" ? "last_report.json" : "last_report.csv");
      std::ifstream in(path, std::ios::binary);
      if (!in) throw IoError("no saved report at " + path.string());
      std::stringstream buf;
      buf << in.rdbuf();
      if (report_out.empty()) {
        std::cout << buf.str();
      } else {
        std::ofstream out(report_out, std::ios::binary);
        if (!(out << buf.str())) throw IoError("cannot write " + report_out);
      }
      return 0;
    }

    ExtremesReport rep;
    switch (cfg.mode) {
      case RunMode::Verify:
        rep = verify_report(cfg, store);
        print_criteria(rep);
        break;
      case RunMode::LargeTauR:
      case RunMode::LargeResonator:
        rep = run_large_values(cfg, store);
        print_summary(rep);
        break;
      case RunMode::SmallValues:
        rep = run_small_values(cfg, store);
        print_summary(rep);
        break;
    }
    save(rep, cfg, store);
    return rep.all_pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
