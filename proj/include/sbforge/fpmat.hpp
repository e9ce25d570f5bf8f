#pragma once

// Exact vectors and matrices over F_p, sized at runtime (dim <= kMaxDim).
// Column-vector convention throughout: matrices act on the left.

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sbforge/error.hpp"
#include "sbforge/fp.hpp"

namespace sbforge {

inline constexpr int kMaxP = 5;
inline constexpr int kMaxDim = kMaxP + 1;  // room for (p+1)x(p+1) block matrices

struct FpVec {
  std::uint8_t mod = 0;
  std::uint8_t dim = 0;
  std::array<std::uint8_t, kMaxDim> e{};

  static FpVec zero(int p, int dim);
  // Standard basis vector e_i, 1-based per the column convention.
  static FpVec unit(int p, int dim, int i);

  int at(int i0) const { return e[i0]; }
  void set(int i0, int v) { e[i0] = static_cast<std::uint8_t>(norm_mod(v, mod)); }

  bool is_zero() const;
  // Canonical index: first coordinate most significant, base p.
  i64 index() const;
  static FpVec from_index(int p, int dim, i64 idx);

  friend bool operator==(const FpVec& a, const FpVec& b) {
    return a.mod == b.mod && a.dim == b.dim && a.e == b.e;
  }
};

FpVec vec_add(const FpVec& a, const FpVec& b);
FpVec vec_sub(const FpVec& a, const FpVec& b);
FpVec vec_neg(const FpVec& a);
FpVec vec_scale(int c, const FpVec& a);
std::string vec_to_string(const FpVec& v);

struct FpMat {
  std::uint8_t mod = 0;
  std::uint8_t dim = 0;
  std::array<std::uint8_t, kMaxDim * kMaxDim> e{};

  static FpMat zero(int p, int dim);
  static FpMat identity(int p, int dim);
  static FpMat scalar(int p, int dim, int lambda);

  int at(int r, int c) const { return e[r * dim + c]; }
  void set(int r, int c, int v) { e[r * dim + c] = static_cast<std::uint8_t>(norm_mod(v, mod)); }

  bool is_identity() const;
  bool is_zero() const;
  bool is_scalar() const;

  friend bool operator==(const FpMat& a, const FpMat& b) {
    return a.mod == b.mod && a.dim == b.dim && a.e == b.e;
  }
};

FpMat mat_mul(const FpMat& a, const FpMat& b);
FpMat mat_add(const FpMat& a, const FpMat& b);
FpMat mat_sub(const FpMat& a, const FpMat& b);
FpVec mat_vec(const FpMat& m, const FpVec& v);
// Negative exponents resolve through the inverse; throws Singular when needed.
FpMat mat_pow(const FpMat& a, i64 e);
FpMat mat_inv(const FpMat& a);
bool mat_invertible(const FpMat& a);

// A^{[k]} = A^0 + A^1 + ... + A^{k-1}, with A^{[0]} = 0.
FpMat bracket_power(const FpMat& a, i64 k);

// Least e >= 1 with a^e = I, by factored-exponent reduction against |GL_dim(F_p)|.
// Requires dim == mod (the frame-matrix case); throws Singular on non-invertible input.
i64 order_of(const FpMat& a);

// Monic minimal polynomial, lowest-degree coefficients first; coeffs.back() == 1.
std::vector<int> minimal_polynomial(const FpMat& a);

// Monic polynomial irreducibility over F_p by trial division up to half degree.
bool poly_irreducible(const std::vector<int>& coeffs, int p);

int mat_rank(const FpMat& a);

// Packed entry key for hashing; dim <= 6 fits 3 bits per entry in 128 bits.
std::pair<u64, u64> mat_key(const FpMat& a);

std::string mat_to_string(const FpMat& m);

}  // namespace sbforge
