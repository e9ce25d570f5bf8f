#pragma once

// Skew brace core: build a brace from a regular subgroup of Hol(N), verify
// the axioms, compute lambda maps, enumerate ideals, test simplicity, form
// opposites, decide isomorphism, and compute the brace automorphism group.

#include <memory>
#include <optional>
#include <string>

#include "sbforge/grouptab.hpp"
#include "sbforge/holo.hpp"

namespace sbforge {

enum class BraceMode { Table, Structural };

struct Provenance {
  std::string which = "custom";  // "B", "Bopp", "trivial", "custom"
  bool dot_is_N = false;         // dot is N's multiplication in ElementIndex order
                                 // (possibly transposed), so the structure-backed ideal
                                 // candidates {1}, P, N apply
};

// n <= kTableBudget gets full Cayley tables; larger orders stay structural,
// computing both products on demand from the frame and the G-map.
inline constexpr i64 kTableBudget = 4096;

class SkewBrace {
 public:
  static SkewBrace from_tables(int p, int q, int n, std::vector<std::uint16_t> dot,
                               std::vector<std::uint16_t> circ, Provenance prov);
  static SkewBrace structural(std::shared_ptr<const Holo> holo, RegularSubgroupMap gmap,
                              Provenance prov, bool dot_transposed = false);

  i64 n() const { return n_; }
  int p() const { return p_; }
  int q() const { return q_; }
  BraceMode mode() const { return mode_; }
  const Provenance& provenance() const { return prov_; }
  int id() const { return id_; }

  int dot(int a, int b) const;
  int circ(int a, int b) const;
  int dot_inv(int a) const;
  int circ_inv(int a) const;

  const GroupTable& dot_table() const;
  const GroupTable& circ_table() const;

  const Holo* holo() const { return holo_.get(); }
  std::shared_ptr<const Holo> holo_ptr() const { return holo_; }
  const RegularSubgroupMap* gmap() const { return gmap_ ? &*gmap_ : nullptr; }

 private:
  i64 n_ = 0;
  int p_ = 0, q_ = 0, id_ = 0;
  BraceMode mode_ = BraceMode::Table;
  Provenance prov_;
  GroupTable dot_t_, circ_t_;
  std::shared_ptr<const Holo> holo_;
  std::optional<RegularSubgroupMap> gmap_;
  bool dot_transposed_ = false;
};

// circ(a, b) = first component of g_a g_b; checks the image is closed
// (NotRegular otherwise). force_structural skips table materialisation.
SkewBrace brace_from_regular(std::shared_ptr<const Holo> holo, RegularSubgroupMap g,
                             Provenance prov = {}, bool force_structural = false);

// The trivial skew brace (circ = dot) on an arbitrary group table.
SkewBrace trivial_brace(const GroupTable& g);

struct Effort {
  bool exhaustive = true;
  i64 samples = 0;
  int threads = 1;
  static Effort Exhaustive(int threads = 1) { return {true, 0, threads}; }
  static Effort Sampled(i64 count) { return {false, count, 1}; }
};

// Both group structures plus the brace relation
// a o (b . c) = (a o b) . a^{-1} . (a o c).
CheckReport verify_axioms(const SkewBrace& b, Effort effort);

// lambda_a(b) = a^{-1} . (a o b), as a permutation of indices.
std::vector<int> lambda_map(const SkewBrace& b, int a);

struct Ideal {
  std::vector<int> elements;
  bool left_ideal = false;
  bool dot_normal = false;
  bool circ_normal = false;
  bool is_ideal() const { return left_ideal && dot_normal && circ_normal; }
};

// Left ideals of B with normality flags. The fast path (provenance dot_is_N)
// tests only the candidates {1}, P, N; the generic path walks the whole
// subgroup lattice of (B, .).
std::vector<Ideal> enumerate_ideals(const SkewBrace& b, i64 budget = kTableBudget);
std::vector<Ideal> enumerate_ideals_generic(const SkewBrace& b, i64 budget = kTableBudget);

bool is_simple(const SkewBrace& b);

// The star image G* with g*_eta = (eta^{-1}, conj(eta) alpha_eta), re-indexed
// by first component. Involutive: opposite_regular twice is the identity.
RegularSubgroupMap opposite_regular(const Holo& h, const RegularSubgroupMap& g);

// Same circ, transposed dot.
SkewBrace opposite_brace(const SkewBrace& b);

// Small generating set of the image of g, greedy in element-index order.
std::vector<HolElem> generating_set(const Holo& h, const RegularSubgroupMap& g);

struct IsoResult {
  std::optional<AutNElem> witness;
  i64 candidates_checked = 0;
};

// Searches Aut(N) for alpha with alpha G1 alpha^{-1} = G2 (conjugation inside
// Hol(N)); tries a generating set first, confirms on the full subgroup.
IsoResult are_isomorphic(const Holo& h, const RegularSubgroupMap& g1, const RegularSubgroupMap& g2);

struct BraceAutGroup {
  std::vector<AutNElem> elements;
  bool cyclic = false;
  std::optional<AutNElem> generator;
};

// All alpha in Aut(N) that are simultaneously circ-automorphisms of the brace
// built from g.
BraceAutGroup brace_automorphisms(const Holo& h, const SkewBrace& b, const RegularSubgroupMap& g);

// Independent oracle: test every dot-automorphism directly against the circ
// table. Table mode only.
std::vector<AutNElem> brace_automorphisms_raw(const Holo& h, const SkewBrace& b);

struct GroupStructure {
  std::map<i64, i64> order_profile;
  bool abelian = false;
  i64 center_size = 0;
  bool sylow_p_normal = false;
  bool sylow_q_normal = false;
  i64 sylow_p_exponent = 0;
  int sylow_p_class = 0;
};

struct StructureDescriptor {
  GroupStructure dot;
  GroupStructure circ;
};

StructureDescriptor identify_structure(const SkewBrace& b);

}  // namespace sbforge
