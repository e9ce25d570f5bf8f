#pragma once

// Scalar arithmetic helpers: residues, primality, factoring, deterministic RNG.

#include <cstdint>
#include <utility>
#include <vector>

namespace sbforge {

using i64 = std::int64_t;
using u64 = std::uint64_t;

inline int norm_mod(i64 x, int m) {
  int r = static_cast<int>(x % m);
  return r < 0 ? r + m : r;
}

inline int add_mod(int a, int b, int m) { int s = a + b; return s >= m ? s - m : s; }
inline int sub_mod(int a, int b, int m) { int s = a - b; return s < 0 ? s + m : s; }
inline int mul_mod(int a, int b, int m) { return static_cast<int>((i64)a * b % m); }
inline int neg_mod(int a, int m) { return a == 0 ? 0 : m - a; }

inline i64 pow_mod(i64 base, i64 exp, i64 mod) {
  i64 r = 1 % mod;
  base %= mod;
  if (base < 0) base += mod;
  while (exp > 0) {
    if (exp & 1) r = static_cast<i64>(static_cast<__int128>(r) * base % mod);
    base = static_cast<i64>(static_cast<__int128>(base) * base % mod);
    exp >>= 1;
  }
  return r;
}

// Inverse mod a prime, by Fermat.
inline int inv_mod(int a, int p) { return static_cast<int>(pow_mod(a, p - 2, p)); }

inline bool is_prime(i64 x) {
  if (x < 2) return false;
  for (i64 d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

inline std::vector<std::pair<i64, int>> factorize(i64 x) {
  std::vector<std::pair<i64, int>> f;
  for (i64 d = 2; d * d <= x; ++d) {
    if (x % d) continue;
    int m = 0;
    while (x % d == 0) { x /= d; ++m; }
    f.emplace_back(d, m);
  }
  if (x > 1) f.emplace_back(x, 1);
  return f;
}

// Multiplicative order of a mod m, for prime m not dividing a.
inline i64 order_mod(i64 a, i64 m) {
  i64 ord = m - 1;
  for (auto [r, mult] : factorize(m - 1)) {
    (void)mult;
    while (ord % r == 0 && pow_mod(a, ord / r, m) == 1) ord /= r;
  }
  return ord;
}

// splitmix64: deterministic across platforms, used for all sampled sweeps.
struct SplitMix64 {
  u64 s;
  explicit SplitMix64(u64 seed) : s(seed) {}
  u64 next() {
    u64 z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  u64 below(u64 n) { return next() % n; }
};

// Fixed seed for every sampled verification pass.
inline constexpr u64 kSampleSeed = 0x5B4ACE;

}  // namespace sbforge
