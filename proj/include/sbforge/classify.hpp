#pragma once

// Classification machinery: the trichotomy of groups of order p^p q, the
// taxonomy of free order-q subgroups of Hol(N), the backtracking search for
// regular subgroups above them, and the census of all regular subgroups with
// Aut(N)-conjugacy deduplication.

#include <string>
#include <vector>

#include "sbforge/brace.hpp"
#include "sbforge/construct.hpp"
#include "sbforge/holo.hpp"

namespace sbforge {

enum class StructTag { direct_product, type_ii, type_iii, other };
const char* to_string(StructTag t);

// Sylow-normality trichotomy for a validated table of order p^p * q.
StructTag classify_group_structure(const std::vector<std::uint16_t>& mul, int n, int p, int q);

enum class QTypeTag { TypeI, TypeII, TypeIII };
const char* to_string(QTypeTag t);

struct OrderQType {
  QTypeTag tag = QTypeTag::TypeI;
  int k = 0;  // TypeIII parameter, 1 <= k <= q-2
  FpVec v;    // TypeIII parameter
};

struct CanonicalQGen {
  OrderQType type;
  HolElem gen;
};

// The canonical free order-q generators: TypeI, TypeII = star(TypeI), and
// TypeIII(k, v) for every 1 <= k <= q-2 and v in V. Each has order q and
// generates a freely acting subgroup.
std::vector<CanonicalQGen> order_q_canonical_types(const Holo& h);

struct CanonicalReduction {
  OrderQType type;
  AutNElem witness;  // conjugating automorphism
  HolElem image;     // the canonical-shape conjugate generator
};

// Exhaustive search over Aut(N) x generators of s for a canonical-shape
// conjugate; throws NoCanonicalForm when none exists.
CanonicalReduction reduce_to_canonical(const Holo& h, const std::vector<HolElem>& s);

// Every canonical tag reachable from s, for uniqueness checks.
std::vector<QTypeTag> canonical_tags_hit(const Holo& h, const std::vector<HolElem>& s);

// Regular subgroups containing <x> as a normal subgroup, found by growing
// p-subgroups from elements of p-power order normalising <x>. Results are
// Aut(N)-conjugacy class representatives.
std::vector<std::vector<HolElem>> regular_overgroups(const Holo& h, const HolElem& x, i64 budget);

struct CensusEntry {
  std::vector<i64> key;  // lexicographically least Aut(N)-conjugate, as sorted hol indices
  std::vector<HolElem> representative;
  i64 size = 0;
  i64 multiplicity = 0;  // subgroups in this conjugacy class
  bool simple = false;
  StructTag dot_tag = StructTag::other;
  StructTag circ_tag = StructTag::other;
  bool dot_sylow_p_normal = false, dot_sylow_q_normal = false;
  bool circ_sylow_p_normal = false, circ_sylow_q_normal = false;
  int iso_class = -1;
  int opposite_class = -1;  // iso class of the star image
  std::vector<std::string> witness_generators;
};

struct CensusResult {
  std::vector<CensusEntry> entries;
  i64 simple_classes = 0;
  bool simple_pair_mutually_opposite = false;
};

// full_search: complete backtracking over Hol(N) (used at n = 12). Otherwise
// the search is restricted to overgroups of the canonical order-q types, with
// TypeIII reduced to T-orbit representatives of v.
CensusResult census(const Holo& h, const Construct& c, bool full_search, i64 budget);

// Canonical Aut(N)-conjugacy key of a subgroup: the least sorted index vector
// over all conjugates.
std::vector<i64> conjugacy_key(const Holo& h, const std::vector<HolElem>& g);

}  // namespace sbforge
