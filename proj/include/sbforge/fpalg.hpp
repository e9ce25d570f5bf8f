#pragma once

// The (M, T, J) frame over F_p: M of order q with irreducible degree-p minimal
// polynomial, T generating its centralizer, J the standard Jordan matrix with
// J M J^{-1} = M^p and J^p = I.

#include <string>
#include <vector>

#include "sbforge/fpmat.hpp"

namespace sbforge {

struct PrimePair {
  int p = 0;
  int q = 0;
  i64 n = 0;  // p^p * q
};

// Checks primality of p and q and that the multiplicative order of p mod q is
// exactly p (equivalently q | (p^p - 1)/(p - 1)). Throws NotPrime,
// DivisibilityFails, or Unsupported (p > kMaxP).
PrimePair validate_prime_pair(i64 p, i64 q);

struct Frame {
  PrimePair pair;
  FpMat M;
  FpMat T;
  FpMat J;
};

// Deterministic frame construction; two runs yield bit-identical frames.
Frame build_frame(const PrimePair& pair);

struct CheckItem {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckItem> items;
  bool all_pass() const {
    for (const auto& it : items)
      if (!it.pass) return false;
    return true;
  }
};

// Runs the seven frame checks; always reports all items, never aborts early.
CheckReport verify_frame(const Frame& f);

}  // namespace sbforge
