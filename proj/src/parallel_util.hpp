#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <complex>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace fracsolve::detail {

inline int worker_count(int n_items) {
  unsigned hw = std::thread::hardware_concurrency();
  int cap = hw == 0 ? 4 : static_cast<int>(hw);
  cap = std::min(cap, 16);
  cap = std::min(cap, n_items);
  return std::max(cap, 1);
}

// Evaluate compute(i) for i in [0, n) with a worker pool, handing results to
// consume strictly in index order. Work proceeds in fixed-size chunks so at
// most `chunk` results are held at once.
inline void ordered_parallel(int n, int chunk,
                             const std::function<Eigen::VectorXcd(int)>& compute,
                             const std::function<void(int, const Eigen::VectorXcd&)>& consume) {
  for (int base = 0; base < n; base += chunk) {
    int count = std::min(chunk, n - base);
    std::vector<Eigen::VectorXcd> slot(count);
    std::atomic<int> next{0};
    std::exception_ptr err = nullptr;
    std::mutex err_mu;
    int nw = worker_count(count);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (int w = 0; w < nw; ++w)
      pool.emplace_back([&] {
        for (;;) {
          int i = next.fetch_add(1, std::memory_order_relaxed);
          if (i >= count) return;
          try {
            slot[i] = compute(base + i);
          } catch (...) {
            std::lock_guard<std::mutex> lk(err_mu);
            if (!err) err = std::current_exception();
            return;
          }
        }
      });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
    for (int i = 0; i < count; ++i) consume(base + i, slot[i]);
  }
}

// Componentwise compensated accumulation of complex vectors.
struct KahanVec {
  Eigen::VectorXcd sum, comp;
  explicit KahanVec(Eigen::Index n)
      : sum(Eigen::VectorXcd::Zero(n)), comp(Eigen::VectorXcd::Zero(n)) {}
  void add(const Eigen::VectorXcd& v) {
    for (Eigen::Index i = 0; i < sum.size(); ++i) {
      std::complex<double> y = v[i] - comp[i];
      std::complex<double> t = sum[i] + y;
      comp[i] = (t - sum[i]) - y;
      sum[i] = t;
    }
  }
};

}  // namespace fracsolve::detail
