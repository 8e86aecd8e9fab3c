#pragma once

// Experiment orchestration: zero store, large / small value runs over zeta
// zeros, the acceptance suite and report serialization.

#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "resonance/arith.hpp"
#include "resonance/prediction.hpp"
#include "resonance/zeros.hpp"

namespace resonance::ext {

enum class RunMode { LargeTauR, LargeResonator, SmallValues, Verify };

std::string mode_name(RunMode mode);
RunMode parse_mode(const std::string& name);

struct ExperimentConfig {
  RunMode mode = RunMode::Verify;
  double t1 = 0.0;
  double t2 = 5000.0;
  std::uint64_t M = 1;
  int r = 1;
  double theta = 0.0;     // 0: use the effective log M / log t2
  double logM = 0.0;      // resonator length parameter; 0: log of M (large) or m_cap (small)
  double p_lo = 0.0;      // resonator prime window; both 0: no window
  double p_hi = 0.0;
  std::uint64_t m_cap = 10000;
  std::string only;       // verify filter: criterion number or name
  std::filesystem::path cache_dir;  // empty: EXTREMES_CACHE_DIR, then ./zero_cache
  std::filesystem::path json_out;
  std::filesystem::path csv_out;
  double zeta_prec = 1e-12;
  double multiplicity_threshold = 1e-8;
};

// key = value lines, '#' comments. Keys: mode, t1, t2, M, r, theta, logM,
// window (p_lo,p_hi), mcap, only, cache_dir, json, csv, zeta_prec,
// multiplicity_threshold. Throws IoError when unreadable and
// std::invalid_argument on unknown keys or malformed values.
void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path);

std::filesystem::path resolve_cache_dir(const std::filesystem::path& override_dir = {});

// Zeros of (0, t_max] cached in <dir>/zeros.rzzc and extended on demand.
class ZeroStore {
 public:
  explicit ZeroStore(std::filesystem::path dir);

  const std::filesystem::path& dir() const noexcept { return dir_; }
  // Scans and saves whatever is missing below t_hi (rounded up to 500).
  const zeta::ZeroCache& ensure(double t_hi);
  std::vector<zeta::ZeroRecord> zeros(double t1, double t2);

 private:
  std::filesystem::path dir_;
  zeta::ZeroCache cache_;
};

struct ZeroSummary {
  std::int64_t index = 0;
  double gamma = 0.0;
  double abs_zeta_prime = 0.0;
  double normalized = 0.0;  // |zeta'(rho)| gamma^{1/3}
  double weight = 0.0;      // |A(rho)|^2
};

struct ZeroRow {
  std::int64_t index = 0;
  double gamma = 0.0;
  std::complex<double> zeta_prime;
  double weight = 0.0;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
  std::vector<PredictionReport> checks;
};

struct ExtremesReport {
  int schema_version = 1;
  std::string mode;
  std::string generated_at;
  double t1 = 0.0;
  double t2 = 0.0;
  std::uint64_t M = 0;
  int r = 0;
  double theta_effective = 0.0;
  std::string coefficients;
  std::uint64_t zero_count = 0;
  std::complex<double> S1{NAN, NAN};
  double S2 = NAN;
  std::complex<double> S3{NAN, NAN};
  double predicted_S1 = NAN;
  double predicted_S2 = NAN;
  double predicted_S3 = NAN;
  double bound_S1 = NAN;  // |S1| / S2
  double bound_S3 = NAN;  // |S3| / S2
  ZeroSummary argmax;     // largest |zeta'(rho)|
  ZeroSummary argmin;     // smallest |zeta'(rho)|
  ZeroSummary heaviest;   // largest |A(rho)|^2
  double c2_reference = 0.0;
  double c3_reference = 0.0;
  std::vector<PredictionReport> checks;
  std::vector<CriterionResult> criteria;
  std::vector<ZeroRow> rows;

  bool all_pass() const;
};

// Coefficient vector of a large-values run (x_n, n <= M).
arith::ArithFunctionTable large_coefficients(const ExperimentConfig& cfg);
// Coefficient vector of a small-values run: sqrt(n) mu(n) f(n) on the
// window, or the indicator of {1} without a window.
arith::ArithFunctionTable small_coefficients(const ExperimentConfig& cfg);

// S1 = sum zeta'(rho) |A(rho)|^2, S2 = sum |A(rho)|^2 over (t1, t2].
// Throws DegenerateInput when S2 = 0.
ExtremesReport run_large_values(const ExperimentConfig& cfg, ZeroStore& store);
ExtremesReport run_large_values(const ExperimentConfig& cfg, ZeroStore& store,
                                const arith::ArithFunctionTable& x);

// S3 = sum |A(rho)|^2 / zeta'(rho) between good ordinates near t1 and t2.
// Throws FlaggedMultiplicity when some |zeta'(rho)| is below the threshold.
ExtremesReport run_small_values(const ExperimentConfig& cfg, ZeroStore& store);
ExtremesReport run_small_values(const ExperimentConfig& cfg, ZeroStore& store,
                                const arith::ArithFunctionTable& x);

struct CriterionInfo {
  int id;
  const char* name;
};
const std::vector<CriterionInfo>& criteria();

// Runs the acceptance checklist, or the single criterion named by cfg.only.
// Failures are collected. Throws std::invalid_argument for an unknown filter.
std::vector<CriterionResult> run_verify(const ExperimentConfig& cfg, ZeroStore& store);
ExtremesReport verify_report(const ExperimentConfig& cfg, ZeroStore& store);

std::string to_json(const ExtremesReport& report);
ExtremesReport from_json(const std::string& text);
std::string to_csv(const ExtremesReport& report);

enum class Format { Json, Csv };
// Throws IoError when the path cannot be written.
void emit_report(const ExtremesReport& report, Format format, const std::filesystem::path& path);

}  // namespace resonance::ext
