#include "sbforge/classify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "sbforge/error.hpp"
#include "sbforge/grouptab.hpp"

namespace sbforge {

const char* to_string(StructTag t) {
  switch (t) {
    case StructTag::direct_product: return "direct_product";
    case StructTag::type_ii: return "type_ii";
    case StructTag::type_iii: return "type_iii";
    case StructTag::other: return "other";
  }
  return "other";
}

const char* to_string(QTypeTag t) {
  switch (t) {
    case QTypeTag::TypeI: return "TypeI";
    case QTypeTag::TypeII: return "TypeII";
    case QTypeTag::TypeIII: return "TypeIII";
  }
  return "TypeIII";
}

StructTag classify_group_structure(const std::vector<std::uint16_t>& mul, int n, int p, int q) {
  GroupTable t = table_from_raw(n, mul);
  const i64 pp = static_cast<i64>(n) / q;
  bool p_normal = sylow_normal_by_count(t, p, pp);
  bool q_normal = sylow_normal_by_count(t, q, q);
  if (p_normal && q_normal) return StructTag::direct_product;
  if (p_normal) return StructTag::type_ii;
  if (q_normal) return StructTag::type_iii;
  return StructTag::other;
}

namespace {

// Shape match against the three canonical generator forms.
bool match_type(const Holo& h, const HolElem& g, OrderQType& out) {
  const int q = h.q();
  const int dl = h.m_dlog();
  if (g.alpha == h.aut_identity()) {
    if (g.eta.k == 1 && g.eta.v.is_zero()) {
      out = {QTypeTag::TypeI, 0, FpVec::zero(h.p(), h.p())};
      return true;
    }
    return false;
  }
  AutNElem conj_m{dl, 0, FpVec::zero(h.p(), h.p())};
  if (!(g.alpha == conj_m)) return false;
  if (g.eta.k == q - 1 && g.eta.v.is_zero()) {
    out = {QTypeTag::TypeII, 0, FpVec::zero(h.p(), h.p())};
    return true;
  }
  if (g.eta.k >= 1 && g.eta.k <= q - 2) {
    out = {QTypeTag::TypeIII, g.eta.k, g.eta.v};
    return true;
  }
  return false;
}

// A cyclic group of prime order acts freely iff its generator fixes no point.
bool generator_acts_freely(const Holo& h, const HolElem& x) {
  for (i64 i = 0; i < h.n(); ++i) {
    NElem pt = h.n_from_index(i);
    if (h.hol_apply(x, pt) == pt) return false;
  }
  return true;
}

}  // namespace

std::vector<CanonicalQGen> order_q_canonical_types(const Holo& h) {
  const int p = h.p(), q = h.q();
  std::vector<CanonicalQGen> out;
  FpVec zero = FpVec::zero(p, p);
  HolElem type1{{1, zero}, h.aut_identity()};
  HolElem type2{{q - 1, zero}, {h.m_dlog(), 0, zero}};
  if (!(h.star(type1) == type2))
    throw Error(Errc::InternalSearchExhausted, "star of the TypeI generator is not the TypeII generator");
  out.push_back({{QTypeTag::TypeI, 0, zero}, type1});
  out.push_back({{QTypeTag::TypeII, 0, zero}, type2});
  for (int k = 1; k <= q - 2; ++k)
    for (i64 vi = 0; vi < h.p_pow_p(); ++vi) {
      FpVec v = FpVec::from_index(p, p, vi);
      out.push_back({{QTypeTag::TypeIII, k, v}, {{k, v}, {h.m_dlog(), 0, zero}}});
    }
  for (const CanonicalQGen& c : out) {
    if (h.hol_order(c.gen, q) != q)
      throw Error(Errc::InternalSearchExhausted, "canonical generator does not have order q");
    if (!generator_acts_freely(h, c.gen))
      throw Error(Errc::InternalSearchExhausted, "canonical generator does not act freely");
  }
  return out;
}

CanonicalReduction reduce_to_canonical(const Holo& h, const std::vector<HolElem>& s) {
  for (i64 ai = 0; ai < h.aut_count(); ++ai) {
    AutNElem a = h.aut_from_index(ai);
    for (const HolElem& g : s) {
      if (g == h.hol_identity()) continue;
      HolElem c = h.conj_by_aut(a, g);
      OrderQType type;
      if (match_type(h, c, type)) return {type, a, c};
    }
  }
  throw Error(Errc::NoCanonicalForm, "no Aut(N)-conjugate generator has a canonical shape");
}

std::vector<QTypeTag> canonical_tags_hit(const Holo& h, const std::vector<HolElem>& s) {
  bool hit[3] = {false, false, false};
  for (i64 ai = 0; ai < h.aut_count(); ++ai) {
    AutNElem a = h.aut_from_index(ai);
    for (const HolElem& g : s) {
      if (g == h.hol_identity()) continue;
      HolElem c = h.conj_by_aut(a, g);
      OrderQType type;
      if (match_type(h, c, type)) hit[static_cast<int>(type.tag)] = true;
    }
  }
  std::vector<QTypeTag> out;
  for (int t = 0; t < 3; ++t)
    if (hit[t]) out.push_back(static_cast<QTypeTag>(t));
  return out;
}

std::vector<i64> conjugacy_key(const Holo& h, const std::vector<HolElem>& g) {
  std::vector<i64> best;
  for (i64 ai = 0; ai < h.aut_count(); ++ai) {
    AutNElem a = h.aut_from_index(ai);
    std::vector<i64> cur;
    cur.reserve(g.size());
    for (const HolElem& e : g) cur.push_back(h.hol_index(h.conj_by_aut(a, e)));
    std::sort(cur.begin(), cur.end());
    if (best.empty() || cur < best) best = std::move(cur);
  }
  return best;
}

namespace {

struct ConjClass {
  std::vector<i64> key;
  std::vector<HolElem> rep;
  i64 found_count = 0;  // distinct input subgroups in this orbit
};

// Group subgroups into Aut(N)-conjugacy classes: exact-set dedupe first, then
// one orbit sweep per class. Representatives realise the canonical key.
std::vector<ConjClass> conjugacy_classes(const Holo& h,
                                         const std::vector<std::vector<HolElem>>& subgroups) {
  std::map<std::vector<i64>, std::vector<HolElem>> distinct;
  for (const auto& g : subgroups) {
    std::vector<i64> key;
    key.reserve(g.size());
    for (const HolElem& e : g) key.push_back(h.hol_index(e));
    std::sort(key.begin(), key.end());
    distinct.emplace(std::move(key), g);
  }
  std::set<std::vector<i64>> claimed;
  std::vector<ConjClass> classes;
  for (const auto& [key, g] : distinct) {
    if (claimed.count(key)) continue;
    ConjClass cls;
    cls.key = key;
    cls.rep = g;
    std::set<std::vector<i64>> orbit;
    for (i64 ai = 0; ai < h.aut_count(); ++ai) {
      AutNElem a = h.aut_from_index(ai);
      std::vector<HolElem> conj;
      conj.reserve(g.size());
      for (const HolElem& e : g) conj.push_back(h.conj_by_aut(a, e));
      std::vector<i64> ckey;
      ckey.reserve(conj.size());
      for (const HolElem& e : conj) ckey.push_back(h.hol_index(e));
      std::sort(ckey.begin(), ckey.end());
      if (ckey < cls.key) {
        cls.key = ckey;
        cls.rep = std::move(conj);
      }
      orbit.insert(std::move(ckey));
    }
    for (const auto& okey : orbit) {
      if (distinct.count(okey)) ++cls.found_count;
      claimed.insert(okey);
    }
    std::sort(cls.rep.begin(), cls.rep.end(),
              [&h](const HolElem& a, const HolElem& b) { return h.hol_index(a) < h.hol_index(b); });
    classes.push_back(std::move(cls));
  }
  std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
  return classes;
}

}  // namespace

namespace {

bool is_power_of(i64 x, int p) {
  if (x < 1) return false;
  while (x > 1) {
    if (x % p) return false;
    x /= p;
  }
  return true;
}

// Search for regular G = <x> x| P. Any such P projects onto a nontrivial
// cyclic p-group of automorphisms of <x>; since the conjugation exponents are
// powers of p mod q and ord_q(p) = p, the image has order exactly p, so the
// kernel P0 = P n C_0 has order p^{p-1}. The search therefore enumerates
// kernel subgroups inside the centralising pool and pairs them with twisting
// elements, instead of growing arbitrary subsets.
struct OvergroupSearch {
  const Holo& h;
  i64 budget = 0;
  i64 nodes = 0;
  HolElem x_;
  std::vector<HolElem> s;  // <x>, sorted
  std::unordered_set<u64> s_idx;
  std::vector<HolElem> centralising;  // p-power order, u x u^{-1} = x
  std::vector<HolElem> twisting;      // p-power order, u x u^{-1} in <x> \ {x}
  std::vector<std::vector<HolElem>> hits;

  void bump() {
    if (++nodes > budget) throw Error(Errc::BudgetExceeded, "overgroup search budget");
  }

  void run(const HolElem& x) {
    const int p = h.p(), q = h.q();
    x_ = x;
    s = h.subgroup_closure({x}, q);
    for (const HolElem& e : s) s_idx.insert(static_cast<u64>(h.hol_index(e)));

    // Candidate pools. The matrix part of a p-power-order automorphism is I
    // or an order-p normaliser element, which prunes the aut sweep hard.
    for (i64 ai = 0; ai < h.aut_count(); ++ai) {
      AutNElem a = h.aut_from_index(ai);
      bool mat_ok = (a.i == 0 && a.j == 0) || (a.j != 0 && a.i % (p - 1) == 0);
      if (!mat_ok) continue;
      AutNElem ainv = h.aut_inv(a);
      for (i64 ei = 0; ei < h.n(); ++ei) {
        bump();
        HolElem u{h.n_from_index(ei), a};
        if (u == h.hol_identity()) continue;
        HolElem uinv{h.aut_apply(ainv, h.n_inv(u.eta)), ainv};
        HolElem conj = h.hol_mul(h.hol_mul(u, x), uinv);
        if (!s_idx.count(static_cast<u64>(h.hol_index(conj)))) continue;
        i64 ord = h.hol_order(u, h.p_pow_p());
        if (ord == 0 || !is_power_of(ord, p)) continue;
        if (conj == x)
          centralising.push_back(u);
        else
          twisting.push_back(u);
      }
    }
    auto by_index = [this](const HolElem& a, const HolElem& b) {
      return h.hol_index(a) < h.hol_index(b);
    };
    std::sort(centralising.begin(), centralising.end(), by_index);
    std::sort(twisting.begin(), twisting.end(), by_index);

    // Phase 1: all subgroups of order p^{p-1} made of centralising elements.
    std::unordered_set<u64> pool_idx;
    for (const HolElem& u : centralising) pool_idx.insert(static_cast<u64>(h.hol_index(u)));
    const i64 kernel_order = h.p_pow_p() / p;
    std::vector<std::vector<HolElem>> kernels;
    std::set<std::vector<i64>> visited;
    std::vector<std::vector<HolElem>> work{{h.hol_identity()}};
    visited.insert({h.hol_index(h.hol_identity())});
    while (!work.empty()) {
      std::vector<HolElem> cur = std::move(work.back());
      work.pop_back();
      if (static_cast<i64>(cur.size()) == kernel_order) {
        kernels.push_back(std::move(cur));
        continue;
      }
      std::unordered_set<u64> in_cur;
      for (const HolElem& e : cur) in_cur.insert(static_cast<u64>(h.hol_index(e)));
      for (const HolElem& u : centralising) {
        bump();
        if (in_cur.count(static_cast<u64>(h.hol_index(u)))) continue;
        std::vector<HolElem> gens = cur;
        gens.push_back(u);
        std::vector<HolElem> bigger;
        try {
          bigger = h.subgroup_closure(gens, kernel_order);
        } catch (const Error& e) {
          if (e.code() == Errc::BoundExceeded) continue;
          throw;
        }
        bool inside_pool = true;
        for (const HolElem& e : bigger)
          if (!(e == h.hol_identity()) && !pool_idx.count(static_cast<u64>(h.hol_index(e)))) {
            inside_pool = false;
            break;
          }
        if (!inside_pool) continue;
        std::vector<i64> key;
        key.reserve(bigger.size());
        for (const HolElem& e : bigger) key.push_back(h.hol_index(e));
        if (visited.insert(std::move(key)).second) work.push_back(std::move(bigger));
      }
    }

    // Phase 2: extend each kernel by a twisting element z with z^p in the
    // kernel and z normalising it.
    std::set<std::vector<i64>> p_seen;
    for (const HolElem& z : twisting) {
      HolElem zinv = h.hol_inv(z);
      HolElem zp = z;
      for (int i = 1; i < p; ++i) zp = h.hol_mul(zp, z);
      for (const std::vector<HolElem>& kernel : kernels) {
        bump();
        std::unordered_set<u64> in_kernel;
        for (const HolElem& e : kernel) in_kernel.insert(static_cast<u64>(h.hol_index(e)));
        if (!in_kernel.count(static_cast<u64>(h.hol_index(zp)))) continue;
        bool normalises = true;
        for (const HolElem& e : kernel)
          if (!in_kernel.count(static_cast<u64>(h.hol_index(h.hol_mul(h.hol_mul(z, e), zinv))))) {
            normalises = false;
            break;
          }
        if (!normalises) continue;
        // P = union of kernel cosets under powers of z; a group of order p^p.
        std::vector<HolElem> part = kernel;
        HolElem zm = z;
        for (int m = 1; m < p; ++m) {
          for (const HolElem& e : kernel) part.push_back(h.hol_mul(e, zm));
          zm = h.hol_mul(zm, z);
        }
        std::vector<i64> pkey;
        pkey.reserve(part.size());
        for (const HolElem& e : part) pkey.push_back(h.hol_index(e));
        std::sort(pkey.begin(), pkey.end());
        if (!p_seen.insert(std::move(pkey)).second) continue;
        std::vector<HolElem> full;
        full.reserve(h.n());
        for (const HolElem& a : s)
          for (const HolElem& u : part) full.push_back(h.hol_mul(a, u));
        if (h.is_regular(full)) hits.push_back(std::move(full));
      }
    }
  }
};

}  // namespace

std::vector<std::vector<HolElem>> regular_overgroups(const Holo& h, const HolElem& x, i64 budget) {
  OvergroupSearch search{h};
  search.budget = budget;
  search.run(x);
  std::vector<std::vector<HolElem>> out;
  for (auto& cls : conjugacy_classes(h, search.hits)) out.push_back(std::move(cls.rep));
  return out;
}

namespace {

// Complete census at small n: assign alpha_eta for the least unassigned eta,
// propagate products to a closure fixpoint, backtrack on conflicts. Each
// regular subgroup is reached exactly once.
struct FullCensus {
  const Holo& h;
  i64 budget;
  i64 nodes = 0;
  std::vector<std::vector<HolElem>> found;

  struct State {
    std::vector<char> has;
    std::vector<AutNElem> alpha;
    std::vector<HolElem> known;
  };

  bool assign(State& st, const HolElem& g) {
    i64 idx = h.n_index(g.eta);
    if (st.has[idx]) return st.alpha[idx] == g.alpha;
    st.has[idx] = 1;
    st.alpha[idx] = g.alpha;
    st.known.push_back(g);
    return true;
  }

  bool propagate(State& st, size_t from) {
    for (size_t i = from; i < st.known.size(); ++i) {
      HolElem g = st.known[i];
      if (!assign(st, h.hol_inv(g))) return false;
      for (size_t j = 0; j <= i; ++j) {
        HolElem a = st.known[i], b = st.known[j];
        if (!assign(st, h.hol_mul(a, b))) return false;
        if (!assign(st, h.hol_mul(b, a))) return false;
      }
    }
    return true;
  }

  void search(State st) {
    if (++nodes > budget) throw Error(Errc::BudgetExceeded, "census budget");
    i64 next = -1;
    for (i64 idx = 0; idx < h.n(); ++idx)
      if (!st.has[idx]) { next = idx; break; }
    if (next < 0) {
      std::vector<HolElem> g = st.known;
      std::sort(g.begin(), g.end(),
                [this](const HolElem& a, const HolElem& b) { return h.hol_index(a) < h.hol_index(b); });
      found.push_back(std::move(g));
      return;
    }
    NElem eta = h.n_from_index(next);
    for (i64 ai = 0; ai < h.aut_count(); ++ai) {
      State child = st;
      size_t from = child.known.size();
      if (!assign(child, {eta, h.aut_from_index(ai)})) continue;
      if (!propagate(child, from)) continue;
      search(std::move(child));
    }
  }

  void run() {
    State st;
    st.has.assign(h.n(), 0);
    st.alpha.assign(h.n(), h.aut_identity());
    if (!assign(st, h.hol_identity()) || !propagate(st, 0))
      throw Error(Errc::InternalSearchExhausted, "census seed failed");
    search(std::move(st));
  }
};

CensusEntry make_entry(const Holo& h, const Construct& c, const std::vector<HolElem>& g,
                       std::vector<i64> key) {
  CensusEntry e;
  e.size = static_cast<i64>(g.size());
  e.representative = g;
  e.key = std::move(key);
  RegularSubgroupMap map = map_from_subgroup(h, g);
  Provenance prov;
  prov.which = "census";
  SkewBrace b = brace_from_regular(c.holo_ptr(), map, prov);
  e.simple = is_simple(b);
  e.dot_tag = classify_group_structure(b.dot_table().mul, static_cast<int>(h.n()), h.p(), h.q());
  e.circ_tag = classify_group_structure(b.circ_table().mul, static_cast<int>(h.n()), h.p(), h.q());
  const i64 pp = h.p_pow_p();
  e.dot_sylow_p_normal = sylow_normal_by_count(b.dot_table(), h.p(), pp);
  e.dot_sylow_q_normal = sylow_normal_by_count(b.dot_table(), h.q(), h.q());
  e.circ_sylow_p_normal = sylow_normal_by_count(b.circ_table(), h.p(), pp);
  e.circ_sylow_q_normal = sylow_normal_by_count(b.circ_table(), h.q(), h.q());
  for (const HolElem& gen : generating_set(h, map)) {
    std::string label = c.gform_to_string(c.g_of_eta(gen.eta));
    label += " ~ conj(i=" + std::to_string(gen.alpha.i) + ",j=" + std::to_string(gen.alpha.j) +
             ",w=" + vec_to_string(gen.alpha.w) + ")";
    e.witness_generators.push_back(std::move(label));
  }
  return e;
}

}  // namespace

CensusResult census(const Holo& h, const Construct& c, bool full_search, i64 budget) {
  std::vector<std::vector<HolElem>> subgroups;
  if (full_search) {
    FullCensus fc{h, budget};
    fc.run();
    subgroups = std::move(fc.found);
  } else {
    // Structure-guided path: overgroups of the canonical order-q types, with
    // TypeIII v reduced to T-orbit representatives (T acts transitively on
    // the nonzero vectors; asserted below).
    std::vector<HolElem> roots;
    const int p = h.p(), q = h.q();
    FpVec zero = FpVec::zero(p, p);
    {
      std::unordered_set<i64> orbit;
      FpVec v = FpVec::unit(p, p, 1);
      for (i64 i = 0; i < h.t_order(); ++i) {
        orbit.insert(v.index());
        v = mat_vec(h.frame().T, v);
      }
      if (static_cast<i64>(orbit.size()) != h.t_order())
        throw Error(Errc::InternalSearchExhausted, "T does not act transitively on V \\ {0}");
    }
    roots.push_back({{1, zero}, h.aut_identity()});                      // TypeI
    roots.push_back({{q - 1, zero}, {h.m_dlog(), 0, zero}});             // TypeII
    for (int k = 1; k <= q - 2; ++k) {
      roots.push_back({{k, zero}, {h.m_dlog(), 0, zero}});               // TypeIII, v = 0
      roots.push_back({{k, FpVec::unit(p, p, 1)}, {h.m_dlog(), 0, zero}});  // TypeIII, v != 0 rep
    }
    for (const HolElem& x : roots)
      for (auto& g : regular_overgroups(h, x, budget)) subgroups.push_back(std::move(g));
  }

  CensusResult res;
  for (auto& cls : conjugacy_classes(h, subgroups)) {
    CensusEntry e = make_entry(h, c, cls.rep, std::move(cls.key));
    e.multiplicity = cls.found_count;
    res.entries.push_back(std::move(e));
  }
  for (size_t i = 0; i < res.entries.size(); ++i) res.entries[i].iso_class = static_cast<int>(i);
  // Star partners.
  for (CensusEntry& e : res.entries) {
    std::vector<HolElem> starred;
    starred.reserve(e.representative.size());
    for (const HolElem& g : e.representative) starred.push_back(h.star(g));
    std::vector<i64> skey = conjugacy_key(h, starred);
    for (const CensusEntry& other : res.entries)
      if (other.key == skey) {
        e.opposite_class = other.iso_class;
        break;
      }
  }
  std::vector<int> simple_ids;
  for (const CensusEntry& e : res.entries)
    if (e.simple) simple_ids.push_back(e.iso_class);
  res.simple_classes = static_cast<i64>(simple_ids.size());
  if (simple_ids.size() == 2) {
    const CensusEntry& a = res.entries[simple_ids[0]];
    const CensusEntry& b = res.entries[simple_ids[1]];
    res.simple_pair_mutually_opposite =
        a.opposite_class == b.iso_class && b.opposite_class == a.iso_class;
  }
  return res;
}

}  // namespace sbforge
