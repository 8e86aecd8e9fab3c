#include "resonance/zeros.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/lambert_w.hpp>

#include "resonance/errors.hpp"
#include "resonance/numeric.hpp"
#include "resonance/zeta.hpp"

namespace resonance::zeta {

namespace {

constexpr std::uint32_t kMagic = 0x435A5A52;  // "RZZC"
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderBytes = 4 + 4 + 8 + 8 + 8 + 8;
constexpr std::size_t kRecordBytes = 24;
// Gram points with |Z| below this are treated as bad.
constexpr double kGramSignFloor = 1e-6;

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}
std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

std::string encode_records(std::span<const ZeroRecord> records) {
  std::string out;
  out.reserve(records.size() * kRecordBytes);
  for (const auto& r : records) {
    put_u64(out, static_cast<std::uint64_t>(r.index));
    put_u64(out, std::bit_cast<std::uint64_t>(r.gamma));
    put_u64(out, std::bit_cast<std::uint64_t>(r.abs_error));
  }
  return out;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

int sign_of(double z) { return z < 0.0 ? -1 : 1; }

bool good_gram(std::int64_t n, double g) {
  const double z = hardy_Z(g);
  if (std::abs(z) < kGramSignFloor) return false;
  return ((n % 2 == 0) ? z : -z) > 0.0;
}

// Power of two used as the final bracket width around a zero at height t.
double final_width(double t) {
  const int e = std::ilogb(std::max(t, 1.0)) + 1;
  return std::ldexp(1.0, std::max(-34, e - 50));
}

// Locates the zero in (lo, hi) given a sign change of the fast Z. The result
// is the midpoint of the dyadic cell of width final_width(t) in which the
// precise Z changes sign, so it does not depend on the starting bracket.
ZeroRecord refine_zero(double lo, double hi, double z_lo, double z_hi) {
  // Illinois iteration on the fast evaluator.
  int side = 0;
  for (int it = 0; it < 200 && hi - lo > 1e-11 * std::max(1.0, lo); ++it) {
    double x = (lo * z_hi - hi * z_lo) / (z_hi - z_lo);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    const double zx = hardy_Z(x);
    if (zx == 0.0) {
      lo = hi = x;
      break;
    }
    if (sign_of(zx) == sign_of(z_lo)) {
      lo = x;
      z_lo = zx;
      if (side == -1) z_hi *= 0.5;
      side = -1;
    } else {
      hi = x;
      z_hi = zx;
      if (side == 1) z_lo *= 0.5;
      side = 1;
    }
  }
  const double estimate = 0.5 * (lo + hi);
  const double wf = final_width(estimate);
  // Smallest aligned dyadic cell around the estimate on which the precise Z
  // changes sign.
  double a = 0.0, b = 0.0, za = 0.0, zb = 0.0;
  bool bracketed = false;
  for (double w = wf * 16.0; w < 1e-3 && !bracketed; w *= 4.0) {
    a = std::floor(estimate / w) * w;
    b = a + w;
    za = hardy_Z_precise(a);
    zb = hardy_Z_precise(b);
    bracketed = sign_of(za) != sign_of(zb);
  }
  if (!bracketed) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "zero refinement lost the sign change near t = " << estimate;
    throw IncompleteScan(msg.str());
  }
  while (b - a > wf) {
    const double m = 0.5 * (a + b);
    const double zm = hardy_Z_precise(m);
    if (sign_of(zm) == sign_of(za)) {
      a = m;
      za = zm;
    } else {
      b = m;
    }
  }
  ZeroRecord rec;
  rec.gamma = 0.5 * (a + b);
  rec.abs_error = b - a;
  return rec;
}

// Samples per unit length on [m, m + 1) at refinement level `level`.
std::int64_t samples_per_unit(std::int64_t m, double points_per_gap, int level) {
  const double gap = mean_gap(static_cast<double>(m) + 1.0);
  return static_cast<std::int64_t>(std::ceil(points_per_gap / gap)) << level;
}

// Zeros in (lo, hi] found from sign changes on the global sample lattice.
std::vector<std::pair<double, double>> sign_change_brackets(double lo, double hi,
                                                            double points_per_gap, int level,
                                                            std::vector<double>& z_at) {
  std::vector<double> ts;
  ts.push_back(lo);
  for (auto m = static_cast<std::int64_t>(std::floor(lo)); m < hi; ++m) {
    const auto k = samples_per_unit(m, points_per_gap, level);
    for (std::int64_t j = 0; j < k; ++j) {
      const double t = static_cast<double>(m) + static_cast<double>(j) / static_cast<double>(k);
      if (t > lo && t < hi) ts.push_back(t);
    }
  }
  ts.push_back(hi);
  z_at.resize(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) z_at[i] = hardy_Z(ts[i]);
  std::vector<std::pair<double, double>> brackets;
  std::vector<double> zs;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if (sign_of(z_at[i]) != sign_of(z_at[i + 1])) {
      brackets.emplace_back(ts[i], ts[i + 1]);
      zs.push_back(z_at[i]);
      zs.push_back(z_at[i + 1]);
    }
  }
  z_at.swap(zs);
  return brackets;
}

struct GramBlock {
  std::int64_t lo_index;
  std::int64_t hi_index;
  double lo;
  double hi;
};

std::vector<ZeroRecord> scan_block(const GramBlock& block, const ScanOptions& opt) {
  const std::int64_t expected = block.hi_index - block.lo_index;
  std::int64_t found = -1;
  for (int level = 0; level <= opt.max_refinements; ++level) {
    std::vector<double> z;
    const auto brackets = sign_change_brackets(block.lo, block.hi, opt.points_per_gap, level, z);
    found = static_cast<std::int64_t>(brackets.size());
    if (found != expected) continue;
    std::vector<ZeroRecord> out;
    out.reserve(brackets.size());
    for (std::size_t i = 0; i < brackets.size(); ++i) {
      auto rec = refine_zero(brackets[i].first, brackets[i].second, z[2 * i], z[2 * i + 1]);
      rec.index = block.lo_index + 2 + static_cast<std::int64_t>(i);
      out.push_back(rec);
    }
    return out;
  }
  std::ostringstream msg;
  msg.precision(12);
  msg << "zero count mismatch between Gram points g_" << block.lo_index << " = " << block.lo
      << " and g_" << block.hi_index << " = " << block.hi << ": expected " << expected
      << " sign changes, found " << found << " after " << opt.max_refinements
      << " refinements (possible close pair or multiple zero)";
  throw IncompleteScan(msg.str());
}

}  // namespace

ZeroCache::ZeroCache(double t_min, double t_max, std::vector<ZeroRecord> records)
    : t_min_(t_min), t_max_(t_max), records_(std::move(records)) {
  if (!(t_max >= t_min)) throw std::invalid_argument("ZeroCache: t_max below t_min");
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    if (!(r.gamma > t_min_ && r.gamma <= t_max_)) {
      throw std::invalid_argument("ZeroCache: record outside (t_min, t_max]");
    }
    if (i > 0 && (r.gamma <= records_[i - 1].gamma || r.index != records_[i - 1].index + 1)) {
      throw std::invalid_argument("ZeroCache: records not increasing and consecutive");
    }
  }
}

std::uint64_t ZeroCache::checksum() const { return fnv1a(encode_records(records_)); }

bool ZeroCache::covers(double t1, double t2) const noexcept {
  return t1 >= t_min_ && t2 <= t_max_;
}

std::span<const ZeroRecord> ZeroCache::range(double t1, double t2) const {
  if (!covers(t1, t2)) {
    std::ostringstream msg;
    msg << "zero cache covers (" << t_min_ << ", " << t_max_ << "], requested (" << t1 << ", "
        << t2 << "]";
    throw NeedsScan(msg.str());
  }
  auto lo = std::upper_bound(records_.begin(), records_.end(), t1,
                             [](double t, const ZeroRecord& r) { return t < r.gamma; });
  auto hi = std::upper_bound(records_.begin(), records_.end(), t2,
                             [](double t, const ZeroRecord& r) { return t < r.gamma; });
  return {lo, hi};
}

void ZeroCache::append(const ZeroCache& next) {
  if (next.t_min_ != t_max_) throw std::invalid_argument("ZeroCache::append: segments not adjacent");
  if (!records_.empty() && !next.records_.empty() &&
      next.records_.front().index != records_.back().index + 1) {
    throw std::invalid_argument("ZeroCache::append: index gap between segments");
  }
  records_.insert(records_.end(), next.records_.begin(), next.records_.end());
  t_max_ = next.t_max_;
}

void ZeroCache::save(const std::filesystem::path& path) const {
  const std::string body = encode_records(records_);
  std::string header;
  put_u32(header, kMagic);
  put_u32(header, kVersion);
  put_u64(header, std::bit_cast<std::uint64_t>(t_min_));
  put_u64(header, std::bit_cast<std::uint64_t>(t_max_));
  put_u64(header, records_.size());
  put_u64(header, fnv1a(body));
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write zero cache " + tmp);
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out) throw IoError("short write to zero cache " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move zero cache into place: " + ec.message());
}

ZeroCache ZeroCache::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open zero cache " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() < kHeaderBytes) throw IoError("zero cache truncated: " + path.string());
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  if (get_u32(p) != kMagic) throw IoError("not a zero cache: " + path.string());
  if (get_u32(p + 4) != kVersion) throw IoError("unsupported zero cache version");
  const double t_min = std::bit_cast<double>(get_u64(p + 8));
  const double t_max = std::bit_cast<double>(get_u64(p + 16));
  const std::uint64_t count = get_u64(p + 24);
  const std::uint64_t sum = get_u64(p + 32);
  if (bytes.size() != kHeaderBytes + count * kRecordBytes) {
    throw IoError("zero cache size does not match its record count");
  }
  std::vector<ZeroRecord> records(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto* q = p + kHeaderBytes + i * kRecordBytes;
    records[i].index = static_cast<std::int64_t>(get_u64(q));
    records[i].gamma = std::bit_cast<double>(get_u64(q + 8));
    records[i].abs_error = std::bit_cast<double>(get_u64(q + 16));
  }
  ZeroCache cache(t_min, t_max, std::move(records));
  if (cache.checksum() != sum) throw IoError("zero cache checksum mismatch: " + path.string());
  return cache;
}

void ZeroCache::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "index,gamma\n";
  char buf[64];
  for (const auto& r : records_) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g\n", static_cast<long long>(r.index), r.gamma);
    out << buf;
  }
  if (!out) throw IoError("short write to " + path.string());
}

double gram_point(std::int64_t n) {
  if (n < -1) throw std::invalid_argument("gram_point: index below -1");
  const double target = std::numbers::pi * static_cast<double>(n);
  const double w = boost::math::lambert_w0((static_cast<double>(n) + 0.125) / std::numbers::e);
  double t = 2.0 * std::numbers::pi * std::exp(1.0 + w);
  for (int it = 0; it < 60; ++it) {
    const double slope = 0.5 * std::log(t / (2.0 * std::numbers::pi));
    const double step = (rs_theta(t) - target) / slope;
    t -= step;
    if (std::abs(step) < 1e-14 * t) break;
  }
  return t;
}

ZeroCache find_zeros(double t1, double t2, const ScanOptions& options) {
  if (!(t1 >= 0.0 && t1 < t2)) throw std::invalid_argument("find_zeros: need 0 <= t1 < t2");
  if (t2 > 1e6) throw std::invalid_argument("find_zeros: t2 above 1e6");
  constexpr double kPi = std::numbers::pi;

  // Good Gram index at or below t1, and at or above t2.
  std::int64_t a = -1;
  if (t1 > gram_point(-1)) {
    a = static_cast<std::int64_t>(std::floor(rs_theta(t1) / kPi));
    while (a > -1 && !good_gram(a, gram_point(a))) --a;
  }
  std::int64_t b = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(rs_theta(t2) / kPi)));
  while (!good_gram(b, gram_point(b))) ++b;

  std::vector<GramBlock> blocks;
  std::int64_t last = a;
  double last_t = gram_point(a);
  for (std::int64_t n = a + 1; n <= b; ++n) {
    const double g = gram_point(n);
    if (n == b || good_gram(n, g)) {
      blocks.push_back({last, n, last_t, g});
      last = n;
      last_t = g;
    }
  }

  std::vector<std::vector<ZeroRecord>> per_block(blocks.size());
  parallel_blocks(blocks.size(), [&](std::size_t i) { per_block[i] = scan_block(blocks[i], options); });

  std::vector<ZeroRecord> records;
  for (const auto& v : per_block) {
    for (const auto& r : v) {
      if (r.gamma > t1 && r.gamma <= t2) records.push_back(r);
    }
  }
  return ZeroCache(t1, t2, std::move(records));
}

GoodOrdinate good_ordinate(double t_target, const ZeroCache& cache) {
  const auto recs = cache.records();
  auto above = std::upper_bound(recs.begin(), recs.end(), t_target,
                                [](double t, const ZeroRecord& r) { return t < r.gamma; });
  if (above == recs.begin() || above == recs.end()) {
    std::ostringstream msg;
    msg << "zero cache has no zero on both sides of t = " << t_target;
    throw NeedsScan(msg.str());
  }
  GoodOrdinate g;
  g.gamma_below = std::prev(above)->gamma;
  g.gamma_above = above->gamma;
  g.t = 0.5 * (g.gamma_below + g.gamma_above);
  g.abs_Z = std::abs(hardy_Z_precise(g.t));
  return g;
}

}  // namespace resonance::zeta
