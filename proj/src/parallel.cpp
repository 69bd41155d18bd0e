#include "bergman/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <iostream>
#include <mutex>
#include <set>
#include <thread>
#include <vector>

#include "bergman/errors.hpp"

namespace bergman {

namespace {
int g_workers = 1;
std::atomic<bool> g_warn{true};
std::atomic<int> g_warn_count{0};
std::mutex g_warn_mu;
std::set<std::string> g_seen;
}  // namespace

void set_workers(int n) { g_workers = std::max(1, n); }
int workers() { return g_workers; }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  int w = std::min<std::size_t>(static_cast<std::size_t>(g_workers), n);
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (int t = 0; t < w; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lk(err_mu);
          if (!err) err = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

void warn(const std::string& msg) {
  ++g_warn_count;
  if (!g_warn) return;
  std::lock_guard lk(g_warn_mu);
  if (g_seen.insert(msg).second) std::cerr << "warning: " << msg << "\n";
}

void set_warnings_enabled(bool on) { g_warn = on; }
int warning_count() { return g_warn_count; }

}  // namespace bergman
