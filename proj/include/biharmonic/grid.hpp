#pragma once
// Inclusive 1-D parameter grids, rectangular map results, and a deterministic
// parallel cell evaluator. Worker threads pick cells by a fixed index stride,
// so every cell is computed identically regardless of the thread count.

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace biharmonic::grid {

// "start:stop:count" with both endpoints included. A single-point grid
// requires start == stop.
struct SweepGrid {
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 0;

  double at(std::size_t i) const {
    if (count < 2) return start;
    // exact endpoints: convex combination with integer weights
    return (static_cast<double>(count - 1 - i) * start + static_cast<double>(i) * stop) /
           static_cast<double>(count - 1);
  }

  std::vector<double> points() const {
    std::vector<double> p(count);
    for (std::size_t i = 0; i < count; ++i) p[i] = at(i);
    return p;
  }

  static SweepGrid parse(std::string_view text) {
    const std::string s(text);
    const auto bad = [&](const char* why) {
      throw std::invalid_argument("grid '" + s + "': " + why);
    };
    const auto c1 = s.find(':');
    const auto c2 = s.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos || s.find(':', c2 + 1) != std::string::npos)
      bad("expected start:stop:count");
    SweepGrid g;
    char* end = nullptr;
    const std::string a = s.substr(0, c1), b = s.substr(c1 + 1, c2 - c1 - 1), n = s.substr(c2 + 1);
    g.start = std::strtod(a.c_str(), &end);
    if (a.empty() || *end != '\0') bad("start is not a number");
    g.stop = std::strtod(b.c_str(), &end);
    if (b.empty() || *end != '\0') bad("stop is not a number");
    const long long cnt = std::strtoll(n.c_str(), &end, 10);
    if (n.empty() || *end != '\0' || cnt < 1) bad("count must be a positive integer");
    g.count = static_cast<std::size_t>(cnt);
    if (!(g.start == g.start) || !(g.stop == g.stop)) bad("endpoints must be finite");
    if (g.count == 1 && g.start != g.stop) bad("single-point grid requires start == stop");
    if (g.count > 1 && !(g.start < g.stop)) bad("start must be < stop");
    return g;
  }
};

// Rectangular scalar field. values is row-major over rows x cols; cells whose
// evaluation failed hold NaN and are counted in masked.
struct MapResult {
  std::vector<double> rows;
  std::vector<double> cols;
  std::vector<double> values;
  std::size_t masked = 0;
};

// Worker count from the environment (BIHARMONIC_THREADS), default 1.
inline std::size_t thread_count() {
  const char* env = std::getenv("BIHARMONIC_THREADS");
  if (env == nullptr) return 1;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || n < 1) return 1;
  return static_cast<std::size_t>(n > 64 ? 64 : n);
}

// Runs fn(i) for i in [0, n). Exceptions from fn are swallowed and counted;
// callers pre-fill outputs with NaN so a failed cell stays masked.
template <class Fn>
std::size_t for_each_index(std::size_t n, Fn&& fn) {
  const std::size_t workers = n == 0 ? 1 : std::min(thread_count(), n);
  std::atomic<std::size_t> failures{0};
  auto lane = [&](std::size_t first) {
    for (std::size_t i = first; i < n; i += workers) {
      try {
        fn(i);
      } catch (...) {
        failures.fetch_add(1, std::memory_order_relaxed);
      }
    }
  };
  if (workers <= 1) {
    lane(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(lane, t);
    lane(0);
    for (auto& th : pool) th.join();
  }
  return failures.load();
}

}  // namespace biharmonic::grid
