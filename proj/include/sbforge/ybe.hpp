#pragma once

// Set-theoretic Yang-Baxter solutions derived from skew braces:
// r(a, b) = (lambda_a(b), lambda_a(b)^{-o} o a o b), with the inverse taken
// in the circle group.

#include <cstdint>
#include <vector>

#include "sbforge/brace.hpp"

namespace sbforge {

struct YBESolution {
  i64 n = 0;
  // r[(a*n + b)] = c*n + d encodes r(a, b) = (c, d).
  std::vector<std::uint32_t> r;

  std::pair<int, int> apply(int a, int b) const {
    std::uint32_t packed = r[static_cast<size_t>(a) * n + b];
    return {static_cast<int>(packed / n), static_cast<int>(packed % n)};
  }
};

YBESolution solution_from_brace(const SkewBrace& b);

// r is a bijection on pairs.
bool check_bijective(const YBESolution& s);
// (r x id)(id x r)(r x id) = (id x r)(r x id)(id x r) over all n^3 triples.
// Triple space is partitioned over the leading coordinate when threads > 1.
bool check_braid(const YBESolution& s, int threads = 1);
// Both partial maps are bijections for every fixed partner.
bool check_nondegenerate(const YBESolution& s);
// r^2 = id.
bool check_involutive(const YBESolution& s);

}  // namespace sbforge
