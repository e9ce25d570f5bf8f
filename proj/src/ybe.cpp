#include "sbforge/ybe.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace sbforge {

YBESolution solution_from_brace(const SkewBrace& b) {
  const i64 n = b.n();
  YBESolution s;
  s.n = n;
  s.r.resize(static_cast<size_t>(n) * n);
  for (i64 a = 0; a < n; ++a) {
    int ainv = b.dot_inv(static_cast<int>(a));
    for (i64 x = 0; x < n; ++x) {
      int first = b.dot(ainv, b.circ(static_cast<int>(a), static_cast<int>(x)));  // lambda_a(x)
      int second = b.circ(b.circ(b.circ_inv(first), static_cast<int>(a)), static_cast<int>(x));
      s.r[static_cast<size_t>(a) * n + x] = static_cast<std::uint32_t>(static_cast<i64>(first) * n + second);
    }
  }
  return s;
}

bool check_bijective(const YBESolution& s) {
  std::vector<bool> seen(s.r.size(), false);
  for (std::uint32_t packed : s.r) {
    if (seen[packed]) return false;
    seen[packed] = true;
  }
  return true;
}

namespace {

bool braid_holds_on_range(const YBESolution& s, i64 lo, i64 hi) {
  const i64 n = s.n;
  for (i64 a = lo; a < hi; ++a)
    for (i64 b = 0; b < n; ++b) {
      auto [ab1, ab2] = s.apply(static_cast<int>(a), static_cast<int>(b));
      for (i64 c = 0; c < n; ++c) {
        // (r x id)(id x r)(r x id)
        auto [l2, l3] = s.apply(ab2, static_cast<int>(c));
        auto [l1, l2b] = s.apply(ab1, l2);
        // (id x r)(r x id)(id x r)
        auto [rb, rc] = s.apply(static_cast<int>(b), static_cast<int>(c));
        auto [ra, rb2] = s.apply(static_cast<int>(a), rb);
        auto [rm, rr] = s.apply(rb2, rc);
        if (l1 != ra || l2b != rm || l3 != rr) return false;
      }
    }
  return true;
}

}  // namespace

bool check_braid(const YBESolution& s, int threads) {
  const i64 n = s.n;
  if (threads <= 1) return braid_holds_on_range(s, 0, n);
  std::atomic<bool> ok{true};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      if (!braid_holds_on_range(s, n * t / threads, n * (t + 1) / threads)) ok = false;
    });
  }
  for (auto& th : pool) th.join();
  return ok;
}

bool check_nondegenerate(const YBESolution& s) {
  const i64 n = s.n;
  std::vector<bool> seen(n);
  for (i64 a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), false);
    for (i64 b = 0; b < n; ++b) {
      int first = s.apply(static_cast<int>(a), static_cast<int>(b)).first;
      if (seen[first]) return false;
      seen[first] = true;
    }
  }
  for (i64 b = 0; b < n; ++b) {
    std::fill(seen.begin(), seen.end(), false);
    for (i64 a = 0; a < n; ++a) {
      int second = s.apply(static_cast<int>(a), static_cast<int>(b)).second;
      if (seen[second]) return false;
      seen[second] = true;
    }
  }
  return true;
}

bool check_involutive(const YBESolution& s) {
  const i64 n = s.n;
  for (i64 a = 0; a < n; ++a)
    for (i64 b = 0; b < n; ++b) {
      auto [c, d] = s.apply(static_cast<int>(a), static_cast<int>(b));
      auto [e, f] = s.apply(c, d);
      if (e != a || f != b) return false;
    }
  return true;
}

}  // namespace sbforge
