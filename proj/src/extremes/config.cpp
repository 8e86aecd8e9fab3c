#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "resonance/errors.hpp"
#include "resonance/extremes.hpp"

namespace resonance::ext {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw std::invalid_argument("config: bad number for " + key + ": " + v);
  return d;
}

std::uint64_t to_count(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d < 0 || d != std::floor(d) || d > 1e18) {
    throw std::invalid_argument("config: " + key + " must be a non-negative integer");
  }
  return static_cast<std::uint64_t>(d);
}

}  // namespace

std::string mode_name(RunMode mode) {
  switch (mode) {
    case RunMode::LargeTauR: return "large_tau_r";
    case RunMode::LargeResonator: return "large_resonator";
    case RunMode::SmallValues: return "small_values";
    case RunMode::Verify: return "verify";
  }
  return "unknown";
}

RunMode parse_mode(const std::string& name) {
  for (auto m : {RunMode::LargeTauR, RunMode::LargeResonator, RunMode::SmallValues, RunMode::Verify}) {
    if (mode_name(m) == name) return m;
  }
  throw std::invalid_argument("unknown mode: " + name);
}

void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "mode") cfg.mode = parse_mode(val);
    else if (key == "t1") cfg.t1 = to_double(key, val);
    else if (key == "t2") cfg.t2 = to_double(key, val);
    else if (key == "M") cfg.M = to_count(key, val);
    else if (key == "r") cfg.r = static_cast<int>(to_count(key, val));
    else if (key == "theta") cfg.theta = to_double(key, val);
    else if (key == "logM") cfg.logM = to_double(key, val);
    else if (key == "window") {
      const auto comma = val.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("config: window needs p_lo,p_hi");
      cfg.p_lo = to_double(key, trim(val.substr(0, comma)));
      cfg.p_hi = to_double(key, trim(val.substr(comma + 1)));
    } else if (key == "mcap") cfg.m_cap = to_count(key, val);
    else if (key == "only") cfg.only = val;
    else if (key == "cache_dir") cfg.cache_dir = val;
    else if (key == "json") cfg.json_out = val;
    else if (key == "csv") cfg.csv_out = val;
    else if (key == "zeta_prec") cfg.zeta_prec = to_double(key, val);
    else if (key == "multiplicity_threshold") cfg.multiplicity_threshold = to_double(key, val);
    else throw std::invalid_argument("config: unknown key " + key);
  }
}

std::filesystem::path resolve_cache_dir(const std::filesystem::path& override_dir) {
  if (!override_dir.empty()) return override_dir;
  if (const char* env = std::getenv("EXTREMES_CACHE_DIR"); env != nullptr && *env != '\0') return env;
  return "zero_cache";
}

ZeroStore::ZeroStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create cache directory " + dir_.string() + ": " + ec.message());
  const auto file = dir_ / "zeros.rzzc";
  if (std::filesystem::exists(file)) cache_ = zeta::ZeroCache::load(file);
}

const zeta::ZeroCache& ZeroStore::ensure(double t_hi) {
  if (t_hi <= cache_.t_max()) return cache_;
  const double target = std::min(1e6, std::ceil(t_hi / 500.0) * 500.0);
  if (t_hi > target) throw std::invalid_argument("ZeroStore: heights above 1e6 are not supported");
  auto segment = zeta::find_zeros(cache_.t_max(), target);
  if (cache_.t_max() == 0.0) {
    cache_ = std::move(segment);
  } else {
    cache_.append(segment);
  }
  cache_.save(dir_ / "zeros.rzzc");
  return cache_;
}

std::vector<zeta::ZeroRecord> ZeroStore::zeros(double t1, double t2) {
  const auto span = ensure(t2).range(t1, t2);
  return {span.begin(), span.end()};
}

}  // namespace resonance::ext
