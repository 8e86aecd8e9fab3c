#pragma once

// Critical-line zeros: Gram points, certified scans, the on-disk cache and
// good-ordinate selection.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace resonance::zeta {

struct ZeroRecord {
  std::int64_t index = 0;  // n for the n-th zero above the real axis
  double gamma = 0.0;
  double abs_error = 0.0;

  friend bool operator==(const ZeroRecord&, const ZeroRecord&) = default;
};

// Zeros with ordinates in (t_min, t_max], sorted, indices consecutive.
class ZeroCache {
 public:
  ZeroCache() = default;
  ZeroCache(double t_min, double t_max, std::vector<ZeroRecord> records);

  double t_min() const noexcept { return t_min_; }
  double t_max() const noexcept { return t_max_; }
  std::span<const ZeroRecord> records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }

  // FNV-1a over the little-endian record bytes.
  std::uint64_t checksum() const;

  // Records with gamma in (t1, t2]; throws NeedsScan if not covered.
  std::span<const ZeroRecord> range(double t1, double t2) const;
  bool covers(double t1, double t2) const noexcept;

  // Concatenates an adjacent segment starting at t_max().
  void append(const ZeroCache& next);

  void save(const std::filesystem::path& path) const;
  static ZeroCache load(const std::filesystem::path& path);
  void write_csv(const std::filesystem::path& path) const;

 private:
  double t_min_ = 0.0;
  double t_max_ = 0.0;
  std::vector<ZeroRecord> records_;
};

// Gram point g_n: theta(g_n) = n pi, for n >= -1.
double gram_point(std::int64_t n);

struct ScanOptions {
  double points_per_gap = 6.0;  // initial samples per mean zero spacing
  int max_refinements = 6;      // grid halvings per Gram block
};

// All zeros with ordinates in (t1, t2]. The scan runs between good Gram
// points enclosing the range and checks that the number of sign changes in
// each block equals the count implied by the Gram indices. Throws
// IncompleteScan when a block still disagrees after all refinements.
ZeroCache find_zeros(double t1, double t2, const ScanOptions& options = {});

struct GoodOrdinate {
  double t = 0.0;
  double abs_Z = 0.0;
  double gamma_below = 0.0;
  double gamma_above = 0.0;
};

// Midpoint of the zero gap containing t_target. Throws NeedsScan when the
// cache lacks a zero on either side.
GoodOrdinate good_ordinate(double t_target, const ZeroCache& cache);

}  // namespace resonance::zeta
