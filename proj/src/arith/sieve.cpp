#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "resonance/arith.hpp"
#include "resonance/numeric.hpp"

namespace resonance::arith {

namespace {

// Odd numbers per segment; a segment spans 2 * kSegmentOdds integers.
constexpr std::uint64_t kSegmentOdds = std::uint64_t{1} << 18;

std::vector<std::uint32_t> base_primes(std::uint64_t limit) {
  std::vector<char> composite(limit + 1, 0);
  std::vector<std::uint32_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return out;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Sieves the odd numbers in [seg_lo, seg_lo + 2 * kSegmentOdds) intersected
// with [lo, hi] and appends the primes found (plus 2 when in range).
void sieve_segment(std::uint64_t seg_lo, std::uint64_t lo, std::uint64_t hi,
                   const std::vector<std::uint32_t>& base, std::vector<char>& mark,
                   std::vector<std::uint64_t>& out) {
  out.clear();
  const std::uint64_t seg_hi = std::min(hi, seg_lo + 2 * kSegmentOdds - 1);
  if (lo <= 2 && 2 <= seg_hi && seg_lo <= 2) out.push_back(2);
  // First odd number >= max(seg_lo, lo, 3).
  std::uint64_t start = std::max({seg_lo, lo, std::uint64_t{3}});
  if (start % 2 == 0) ++start;
  if (start > seg_hi) return;
  const std::uint64_t n_odds = (seg_hi - start) / 2 + 1;
  mark.assign(n_odds, 0);
  for (std::size_t bi = 1; bi < base.size(); ++bi) {  // skip 2
    const std::uint64_t p = base[bi];
    if (p * p > seg_hi) break;
    std::uint64_t first = std::max(p * p, (start + p - 1) / p * p);
    if (first % 2 == 0) first += p;
    for (std::uint64_t m = first; m <= seg_hi; m += 2 * p) mark[(m - start) / 2] = 1;
  }
  for (std::uint64_t i = 0; i < n_odds; ++i) {
    if (!mark[i]) out.push_back(start + 2 * i);
  }
}

}  // namespace

void for_each_prime_block(std::uint64_t lo, std::uint64_t hi,
                          const std::function<void(std::span<const std::uint64_t>)>& block) {
  if (hi < 2 || lo > hi) return;
  lo = std::max<std::uint64_t>(lo, 2);
  const auto base = base_primes(isqrt(hi) + 1);
  std::vector<char> mark;
  std::vector<std::uint64_t> primes;
  const std::uint64_t span = 2 * kSegmentOdds;
  const std::uint64_t first = lo - lo % 2;
  const std::uint64_t n_segments = (hi - first) / span + 1;
  for (std::uint64_t s = 0; s < n_segments; ++s) {
    sieve_segment(first + s * span, lo, hi, base, mark, primes);
    if (!primes.empty()) block(primes);
  }
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for_each_prime_block(lo, hi, [&](std::span<const std::uint64_t> ps) {
    out.insert(out.end(), ps.begin(), ps.end());
  });
  return out;
}

std::uint64_t count_primes(std::uint64_t lo, std::uint64_t hi) {
  std::uint64_t n = 0;
  for_each_prime_block(lo, hi, [&](std::span<const std::uint64_t> ps) { n += ps.size(); });
  return n;
}

std::vector<double> sum_over_primes(std::uint64_t lo, std::uint64_t hi, std::size_t n_outputs,
                                    const std::function<void(std::uint64_t, std::span<double>)>& fn) {
  std::vector<double> result(n_outputs, 0.0);
  if (hi < 2 || lo > hi) return result;
  lo = std::max<std::uint64_t>(lo, 2);
  const auto base = base_primes(isqrt(hi) + 1);
  const std::uint64_t span = 2 * kSegmentOdds;
  const std::uint64_t first = lo - lo % 2;
  const std::size_t n_segments = static_cast<std::size_t>((hi - first) / span + 1);
  std::vector<std::vector<double>> partial(n_segments, std::vector<double>(n_outputs, 0.0));

  parallel_blocks(n_segments, [&](std::size_t s) {
    std::vector<char> mark;
    std::vector<std::uint64_t> primes;
    sieve_segment(first + s * span, lo, hi, base, mark, primes);
    std::vector<CompensatedSum<double>> acc(n_outputs);
    std::vector<double> scratch(n_outputs);
    for (std::uint64_t p : primes) {
      std::fill(scratch.begin(), scratch.end(), 0.0);
      fn(p, scratch);
      for (std::size_t k = 0; k < n_outputs; ++k) acc[k] += scratch[k];
    }
    for (std::size_t k = 0; k < n_outputs; ++k) partial[s][k] = acc[k].value();
  });

  for (std::size_t k = 0; k < n_outputs; ++k) {
    std::vector<double> column(n_segments);
    for (std::size_t s = 0; s < n_segments; ++s) column[s] = partial[s][k];
    result[k] = pairwise_reduce(std::move(column));
  }
  return result;
}

}  // namespace resonance::arith
