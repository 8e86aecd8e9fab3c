#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <thread>
#include <vector>

namespace resonance {

// Neumaier variant of Kahan summation.
template <class T>
class CompensatedSum {
 public:
  void add(T x) noexcept {
    const T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(T x) noexcept {
    add(x);
    return *this;
  }
  T value() const noexcept { return sum_ + comp_; }

 private:
  T sum_{};
  T comp_{};
};

inline unsigned worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

// Runs fn(block) for block in [0, n_blocks) on a small thread pool. Blocks are
// claimed in strides so the mapping block -> thread is fixed; callers write
// per-block results and reduce them in block order, which keeps every
// reduction independent of the thread count.
template <class Fn>
void parallel_blocks(std::size_t n_blocks, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), n_blocks);
  if (workers <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) fn(b);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t b = w; b < n_blocks; b += workers) fn(b);
    });
  }
  for (auto& t : pool) t.join();
}

// Fixed-shape pairwise reduction of per-block partial sums.
inline double pairwise_reduce(std::vector<double> v) {
  if (v.empty()) return 0.0;
  while (v.size() > 1) {
    std::vector<double> next((v.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i) {
      next[i] = v[2 * i] + (2 * i + 1 < v.size() ? v[2 * i + 1] : 0.0);
    }
    v.swap(next);
  }
  return v.front();
}

}  // namespace resonance
