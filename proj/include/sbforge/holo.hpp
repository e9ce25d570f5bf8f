#pragma once

// The groups N, Aut(N) and Hol(N) = N x| Aut(N) over a fixed frame.
//
// N is the group of block matrices [[M^k, v],[0,1]]; an automorphism is
// conjugation by [[A, w],[0,1]] with A = T^i J^j in the normaliser of <M>.
// All operations are pure over the immutable frame context.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "sbforge/fpalg.hpp"
#include "sbforge/fpmat.hpp"

namespace sbforge {

struct NElem {
  int k = 0;   // exponent of M, in [0, q)
  FpVec v;     // translation part
  friend bool operator==(const NElem& a, const NElem& b) { return a.k == b.k && a.v == b.v; }
};

struct AutNElem {
  int i = 0;   // exponent of T, in [0, p^p - 1)
  int j = 0;   // exponent of J, in [0, p)
  FpVec w;     // translation part
  friend bool operator==(const AutNElem& a, const AutNElem& b) {
    return a.i == b.i && a.j == b.j && a.w == b.w;
  }
};

struct HolElem {
  NElem eta;
  AutNElem alpha;
  friend bool operator==(const HolElem& a, const HolElem& b) {
    return a.eta == b.eta && a.alpha == b.alpha;
  }
};

class Holo {
 public:
  explicit Holo(Frame frame);

  const Frame& frame() const { return frame_; }
  int p() const { return p_; }
  int q() const { return q_; }
  i64 n() const { return n_; }
  i64 p_pow_p() const { return ppow_; }
  i64 t_order() const { return tord_; }          // p^p - 1
  int m_dlog() const { return dl_; }             // M = T^dl
  i64 aut_count() const { return tord_ * p_ * ppow_; }
  i64 hol_count() const { return n_ * aut_count(); }

  const FpMat& m_pow(int k) const { return Mpow_[k]; }
  int p_pow_mod_q(int j) const { return pjq_[j]; }

  // --- N ---------------------------------------------------------------
  NElem n_identity() const;
  NElem n_mul(const NElem& a, const NElem& b) const;
  NElem n_inv(const NElem& a) const;
  FpMat n_block(const NElem& a) const;            // (p+1)x(p+1) literal matrix
  i64 n_index(const NElem& a) const;              // k*p^p + index(v), v_1 most significant
  NElem n_from_index(i64 idx) const;

  // --- Aut(N) ----------------------------------------------------------
  AutNElem aut_identity() const;
  const FpMat& aut_matrix(const AutNElem& a) const;   // T^i J^j
  FpMat aut_block(const AutNElem& a) const;           // [[A, w],[0,1]]
  NElem aut_apply(const AutNElem& a, const NElem& x) const;
  AutNElem aut_compose(const AutNElem& a, const AutNElem& b) const;  // a after b
  AutNElem aut_inv(const AutNElem& a) const;
  i64 aut_index(const AutNElem& a) const;
  AutNElem aut_from_index(i64 idx) const;
  std::vector<AutNElem> aut_enumerate() const;    // lexicographic (i, j, w)
  // Inner automorphism conj(eta).
  AutNElem conj_of_eta(const NElem& eta) const;
  // Decompose a normaliser matrix as T^i J^j; throws NotInNormalizer.
  std::pair<int, int> decompose_normalizer(const FpMat& a) const;
  AutNElem aut_from_matrix(const FpMat& a, const FpVec& w) const;
  i64 aut_order(const AutNElem& a, i64 cap) const;  // 0 if order exceeds cap

  // --- Hol(N) ----------------------------------------------------------
  HolElem hol_identity() const;
  HolElem hol_mul(const HolElem& g, const HolElem& h) const;
  HolElem hol_inv(const HolElem& g) const;
  NElem hol_apply(const HolElem& g, const NElem& x) const;
  i64 hol_index(const HolElem& g) const;
  HolElem hol_from_index(i64 idx) const;
  i64 hol_order(const HolElem& g, i64 cap) const;  // 0 if order exceeds cap
  // The star map of the opposite construction: g = (eta, a) -> (eta^{-1}, conj(eta) a).
  HolElem star(const HolElem& g) const;
  // Conjugation inside Hol(N) by (1, a).
  HolElem conj_by_aut(const AutNElem& a, const HolElem& g) const;

  // Closure of gens under hol_mul/hol_inv; throws BoundExceeded past bound.
  // Result sorted by hol_index.
  std::vector<HolElem> subgroup_closure(const std::vector<HolElem>& gens, i64 bound) const;

  // G regular <=> |G| = n and first components exhaust N.
  bool is_regular(const std::vector<HolElem>& g) const;
  // No non-identity element fixes any point of N.
  bool acts_freely(const std::vector<HolElem>& g) const;

 private:
  Frame frame_;
  int p_, q_;
  i64 n_, ppow_, tord_;
  int dl_;
  std::vector<FpMat> Mpow_;       // M^0..M^{q-1}
  std::vector<FpMat> norm_mats_;  // T^i J^j at [i*p + j]
  std::vector<int> pjq_;          // p^j mod q
  struct KeyHash {
    size_t operator()(const std::pair<u64, u64>& k) const {
      return k.first * 0x9e3779b97f4a7c15ULL ^ (k.second + 0x7f4a7c15ULL);
    }
  };
  std::unordered_map<std::pair<u64, u64>, std::pair<int, int>, KeyHash> dlog_;
};

// The regular-subgroup incarnation of a skew brace: for each eta the unique
// automorphism alpha_eta with (eta, alpha_eta) in G, indexed by n_index.
struct RegularSubgroupMap {
  std::vector<AutNElem> alpha;
  HolElem elem(const Holo& h, i64 idx) const { return {h.n_from_index(idx), alpha[idx]}; }
  std::vector<HolElem> image(const Holo& h) const;
};

// Left-regular image {(eta, id)}; yields the trivial skew brace on N.
RegularSubgroupMap left_regular_map(const Holo& h);

// Builds the map from a regular subgroup given as an element set; throws
// NotRegular when first components do not exhaust N.
RegularSubgroupMap map_from_subgroup(const Holo& h, const std::vector<HolElem>& g);

}  // namespace sbforge
