#include "sbforge/brace.hpp"

#include <algorithm>
#include <array>
#include <thread>

#include "sbforge/error.hpp"

namespace sbforge {

namespace {

// First lexicographic violating triple over [0,n)^3, or none. Workers own
// contiguous ranges of the leading coordinate, so the merged result matches
// the serial scan exactly.
template <typename Bad>
std::optional<std::array<i64, 3>> first_bad_triple(i64 n, int threads, Bad bad) {
  if (threads <= 1) {
    for (i64 a = 0; a < n; ++a)
      for (i64 x = 0; x < n; ++x)
        for (i64 c = 0; c < n; ++c)
          if (bad(a, x, c)) return std::array<i64, 3>{a, x, c};
    return std::nullopt;
  }
  std::vector<std::optional<std::array<i64, 3>>> results(threads);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      i64 lo = n * t / threads, hi = n * (t + 1) / threads;
      for (i64 a = lo; a < hi; ++a)
        for (i64 x = 0; x < n; ++x)
          for (i64 c = 0; c < n; ++c)
            if (bad(a, x, c)) {
              results[t] = std::array<i64, 3>{a, x, c};
              return;
            }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& r : results)
    if (r) return r;
  return std::nullopt;
}

// Raw table wrapper that tolerates broken tables: identity/inverses are
// best-effort so verify_axioms can report violations instead of aborting.
GroupTable raw_table(int n, std::vector<std::uint16_t> mul) {
  GroupTable g;
  g.n = n;
  g.mul = std::move(mul);
  g.id = 0;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = g.at(e, a) == a && g.at(a, e) == a;
    if (ok) { g.id = e; break; }
  }
  g.inv.assign(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.at(a, b) == g.id && g.at(b, a) == g.id) { g.inv[a] = static_cast<std::uint16_t>(b); break; }
  return g;
}

}  // namespace

SkewBrace SkewBrace::from_tables(int p, int q, int n, std::vector<std::uint16_t> dot,
                                 std::vector<std::uint16_t> circ, Provenance prov) {
  SkewBrace b;
  b.n_ = n;
  b.p_ = p;
  b.q_ = q;
  b.mode_ = BraceMode::Table;
  b.prov_ = std::move(prov);
  b.dot_t_ = raw_table(n, std::move(dot));
  b.circ_t_ = raw_table(n, std::move(circ));
  b.id_ = b.dot_t_.id;
  return b;
}

SkewBrace SkewBrace::structural(std::shared_ptr<const Holo> holo, RegularSubgroupMap gmap,
                                Provenance prov, bool dot_transposed) {
  SkewBrace b;
  b.n_ = holo->n();
  b.p_ = holo->p();
  b.q_ = holo->q();
  b.mode_ = BraceMode::Structural;
  b.prov_ = std::move(prov);
  b.holo_ = std::move(holo);
  b.gmap_ = std::move(gmap);
  b.dot_transposed_ = dot_transposed;
  b.id_ = 0;
  return b;
}

int SkewBrace::dot(int a, int b) const {
  if (mode_ == BraceMode::Table) return dot_t_.at(a, b);
  if (dot_transposed_) std::swap(a, b);
  return static_cast<int>(holo_->n_index(holo_->n_mul(holo_->n_from_index(a), holo_->n_from_index(b))));
}

int SkewBrace::circ(int a, int b) const {
  if (mode_ == BraceMode::Table) return circ_t_.at(a, b);
  HolElem g = gmap_->elem(*holo_, a);
  return static_cast<int>(holo_->n_index(holo_->hol_apply(g, holo_->n_from_index(b))));
}

int SkewBrace::dot_inv(int a) const {
  if (mode_ == BraceMode::Table) return dot_t_.inv[a];
  return static_cast<int>(holo_->n_index(holo_->n_inv(holo_->n_from_index(a))));
}

int SkewBrace::circ_inv(int a) const {
  if (mode_ == BraceMode::Table) return circ_t_.inv[a];
  HolElem g = gmap_->elem(*holo_, a);
  HolElem gi = holo_->hol_inv(g);
  return static_cast<int>(holo_->n_index(gi.eta));
}

const GroupTable& SkewBrace::dot_table() const {
  if (mode_ != BraceMode::Table) throw Error(Errc::Unsupported, "structural brace has no table");
  return dot_t_;
}

const GroupTable& SkewBrace::circ_table() const {
  if (mode_ != BraceMode::Table) throw Error(Errc::Unsupported, "structural brace has no table");
  return circ_t_;
}

SkewBrace brace_from_regular(std::shared_ptr<const Holo> holo, RegularSubgroupMap g, Provenance prov,
                             bool force_structural) {
  const Holo& h = *holo;
  const i64 n = h.n();
  if (static_cast<i64>(g.alpha.size()) != n)
    throw Error(Errc::NotRegular, "map does not cover N");
  prov.dot_is_N = true;
  if (force_structural || n > kTableBudget) {
    // Regularity evidence: identity slot plus a deterministic sample of the
    // closure condition (the full-table path checks every pair).
    if (!(g.alpha[0] == h.aut_identity()))
      throw Error(Errc::NotRegular, "alpha at the identity is not the identity automorphism");
    SplitMix64 rng(kSampleSeed);
    for (int t = 0; t < 20000; ++t) {
      i64 a = static_cast<i64>(rng.below(n)), b = static_cast<i64>(rng.below(n));
      HolElem prod = h.hol_mul(g.elem(h, a), g.elem(h, b));
      if (!(g.alpha[h.n_index(prod.eta)] == prod.alpha))
        throw Error(Errc::NotRegular, "image not closed under hol_mul");
    }
    return SkewBrace::structural(std::move(holo), std::move(g), std::move(prov));
  }
  std::vector<std::uint16_t> dot(n * n), circ(n * n);
  std::vector<NElem> elems(n);
  for (i64 i = 0; i < n; ++i) elems[i] = h.n_from_index(i);
  for (i64 a = 0; a < n; ++a)
    for (i64 b = 0; b < n; ++b)
      dot[a * n + b] = static_cast<std::uint16_t>(h.n_index(h.n_mul(elems[a], elems[b])));
  for (i64 a = 0; a < n; ++a) {
    HolElem ga = g.elem(h, a);
    for (i64 b = 0; b < n; ++b) {
      HolElem prod = h.hol_mul(ga, g.elem(h, b));
      i64 c = h.n_index(prod.eta);
      if (!(g.alpha[c] == prod.alpha))
        throw Error(Errc::NotRegular, "image not closed under hol_mul");
      circ[a * n + b] = static_cast<std::uint16_t>(c);
    }
  }
  SkewBrace b = SkewBrace::from_tables(h.p(), h.q(), static_cast<int>(n), std::move(dot), std::move(circ),
                                       std::move(prov));
  return b;
}

SkewBrace trivial_brace(const GroupTable& g) {
  Provenance prov;
  prov.which = "trivial";
  return SkewBrace::from_tables(0, 0, g.n, g.mul, g.mul, prov);
}

CheckReport verify_axioms(const SkewBrace& b, Effort effort) {
  CheckReport rep;
  const i64 n = b.n();
  const int id = b.id();

  auto group_items = [&](const char* prefix, auto&& op, auto&& inv) {
    {
      CheckItem it{std::string(prefix) + "_identity", true, ""};
      for (i64 a = 0; a < n; ++a)
        if (op(id, a) != a || op(a, id) != a) {
          it.pass = false;
          it.detail = "violated at a = " + std::to_string(a);
          break;
        }
      rep.items.push_back(it);
    }
    {
      CheckItem it{std::string(prefix) + "_inverses", true, ""};
      for (i64 a = 0; a < n; ++a) {
        i64 ai = inv(a);
        if (op(a, ai) != id || op(ai, a) != id) {
          it.pass = false;
          it.detail = "violated at a = " + std::to_string(a);
          break;
        }
      }
      rep.items.push_back(it);
    }
    {
      CheckItem it{std::string(prefix) + "_associativity", true, ""};
      if (effort.exhaustive) {
        auto bad = [&](i64 a, i64 x, i64 c) { return op(op(a, x), c) != op(a, op(x, c)); };
        if (auto hit = first_bad_triple(n, effort.threads, bad)) {
          it.pass = false;
          it.detail = "violated at (" + std::to_string((*hit)[0]) + "," + std::to_string((*hit)[1]) +
                      "," + std::to_string((*hit)[2]) + ")";
        }
      } else {
        SplitMix64 rng(kSampleSeed);
        for (i64 t = 0; t < effort.samples; ++t) {
          i64 a = rng.below(n), x = rng.below(n), c = rng.below(n);
          if (op(op(a, x), c) != op(a, op(x, c))) {
            it.pass = false;
            it.detail = "violated at (" + std::to_string(a) + "," + std::to_string(x) + "," +
                        std::to_string(c) + ")";
            break;
          }
        }
      }
      rep.items.push_back(it);
    }
  };

  group_items("dot", [&](i64 x, i64 y) { return b.dot(static_cast<int>(x), static_cast<int>(y)); },
              [&](i64 x) { return b.dot_inv(static_cast<int>(x)); });
  group_items("circ", [&](i64 x, i64 y) { return b.circ(static_cast<int>(x), static_cast<int>(y)); },
              [&](i64 x) { return b.circ_inv(static_cast<int>(x)); });

  {
    CheckItem it{"brace_relation", true, ""};
    auto violated = [&](i64 a, i64 x, i64 c) {
      int lhs = b.circ(static_cast<int>(a), b.dot(static_cast<int>(x), static_cast<int>(c)));
      int rhs = b.dot(b.dot(b.circ(static_cast<int>(a), static_cast<int>(x)), b.dot_inv(static_cast<int>(a))),
                      b.circ(static_cast<int>(a), static_cast<int>(c)));
      return lhs != rhs;
    };
    if (effort.exhaustive) {
      if (auto hit = first_bad_triple(n, effort.threads, violated)) {
        it.pass = false;
        it.detail = "violated at (" + std::to_string((*hit)[0]) + "," + std::to_string((*hit)[1]) + "," +
                    std::to_string((*hit)[2]) + ")";
      }
    } else {
      SplitMix64 rng(kSampleSeed ^ 0xb1aceULL);
      for (i64 t = 0; t < effort.samples; ++t) {
        i64 a = rng.below(n), x = rng.below(n), c = rng.below(n);
        if (violated(a, x, c)) {
          it.pass = false;
          it.detail = "violated at (" + std::to_string(a) + "," + std::to_string(x) + "," +
                      std::to_string(c) + ")";
          break;
        }
      }
    }
    rep.items.push_back(it);
  }

  return rep;
}

std::vector<int> lambda_map(const SkewBrace& b, int a) {
  const i64 n = b.n();
  std::vector<int> perm(n);
  int ai = b.dot_inv(a);
  for (i64 x = 0; x < n; ++x) perm[x] = b.dot(ai, b.circ(a, static_cast<int>(x)));
  return perm;
}

namespace {

Ideal flag_subgroup(const SkewBrace& b, std::vector<int> elems) {
  const i64 n = b.n();
  Ideal ideal;
  std::vector<bool> in(n, false);
  for (int x : elems) in[x] = true;
  ideal.left_ideal = true;
  for (i64 a = 0; a < n && ideal.left_ideal; ++a) {
    int ai = b.dot_inv(static_cast<int>(a));
    for (int x : elems)
      if (!in[b.dot(ai, b.circ(static_cast<int>(a), x))]) {
        ideal.left_ideal = false;
        break;
      }
  }
  ideal.dot_normal = true;
  for (i64 a = 0; a < n && ideal.dot_normal; ++a) {
    int ai = b.dot_inv(static_cast<int>(a));
    for (int x : elems)
      if (!in[b.dot(b.dot(static_cast<int>(a), x), ai)]) {
        ideal.dot_normal = false;
        break;
      }
  }
  ideal.circ_normal = true;
  for (i64 a = 0; a < n && ideal.circ_normal; ++a) {
    int ai = b.circ_inv(static_cast<int>(a));
    for (int x : elems)
      if (!in[b.circ(b.circ(static_cast<int>(a), x), ai)]) {
        ideal.circ_normal = false;
        break;
      }
  }
  ideal.elements = std::move(elems);
  return ideal;
}

}  // namespace

std::vector<Ideal> enumerate_ideals(const SkewBrace& b, i64 budget) {
  if (b.provenance().dot_is_N) {
    // Candidates pinned by the normal-subgroup structure of N: {1}, P, N.
    const i64 n = b.n();
    const i64 pp = n / b.q();
    std::vector<std::vector<int>> candidates;
    candidates.push_back({b.id()});
    std::vector<int> sylow;
    for (i64 i = 0; i < pp; ++i) sylow.push_back(static_cast<int>(i));
    candidates.push_back(std::move(sylow));
    std::vector<int> all(n);
    for (i64 i = 0; i < n; ++i) all[i] = static_cast<int>(i);
    candidates.push_back(std::move(all));
    std::vector<Ideal> out;
    for (auto& c : candidates) {
      Ideal ideal = flag_subgroup(b, std::move(c));
      if (ideal.left_ideal) out.push_back(std::move(ideal));
    }
    return out;
  }
  return enumerate_ideals_generic(b, budget);
}

std::vector<Ideal> enumerate_ideals_generic(const SkewBrace& b, i64 budget) {
  if (b.n() > budget)
    throw Error(Errc::BudgetExceeded, "generic ideal enumeration beyond budget");
  const GroupTable& dot = b.dot_table();
  std::vector<Ideal> out;
  for (auto& sub : all_subgroups(dot)) {
    Ideal ideal = flag_subgroup(b, std::move(sub));
    if (ideal.left_ideal) out.push_back(std::move(ideal));
  }
  return out;
}

bool is_simple(const SkewBrace& b) {
  i64 count = 0;
  for (const Ideal& ideal : enumerate_ideals(b))
    if (ideal.is_ideal()) ++count;
  return count == 2;
}

RegularSubgroupMap opposite_regular(const Holo& h, const RegularSubgroupMap& g) {
  const i64 n = h.n();
  RegularSubgroupMap out;
  out.alpha.assign(n, h.aut_identity());
  for (i64 idx = 0; idx < n; ++idx) {
    NElem eta = h.n_from_index(idx);
    AutNElem star = h.aut_compose(h.conj_of_eta(eta), g.alpha[idx]);
    out.alpha[h.n_index(h.n_inv(eta))] = star;
  }
  return out;
}

SkewBrace opposite_brace(const SkewBrace& b) {
  Provenance prov = b.provenance();
  prov.which = prov.which == "B" ? "Bopp" : (prov.which == "Bopp" ? "B" : prov.which + "_op");
  if (b.mode() == BraceMode::Structural) {
    return SkewBrace::structural(b.holo_ptr(), *b.gmap(), prov, true);
  }
  const i64 n = b.n();
  std::vector<std::uint16_t> dot(n * n);
  for (i64 a = 0; a < n; ++a)
    for (i64 x = 0; x < n; ++x) dot[a * n + x] = static_cast<std::uint16_t>(b.dot(static_cast<int>(x), static_cast<int>(a)));
  return SkewBrace::from_tables(b.p(), b.q(), static_cast<int>(n), std::move(dot), b.circ_table().mul, prov);
}

std::vector<HolElem> generating_set(const Holo& h, const RegularSubgroupMap& g) {
  std::vector<HolElem> gens;
  std::vector<HolElem> cur{h.hol_identity()};
  while (static_cast<i64>(cur.size()) < h.n()) {
    bool grew = false;
    std::vector<bool> have(h.n(), false);
    for (const HolElem& e : cur) have[h.n_index(e.eta)] = true;
    for (i64 idx = 0; idx < h.n(); ++idx) {
      if (have[idx]) continue;
      gens.push_back(g.elem(h, idx));
      cur = h.subgroup_closure(gens, h.n());
      grew = true;
      break;
    }
    if (!grew) break;
  }
  return gens;
}

IsoResult are_isomorphic(const Holo& h, const RegularSubgroupMap& g1, const RegularSubgroupMap& g2) {
  IsoResult res;
  std::vector<HolElem> gens = generating_set(h, g1);
  const i64 total = h.aut_count();
  for (i64 ai = 0; ai < total; ++ai) {
    AutNElem a = h.aut_from_index(ai);
    ++res.candidates_checked;
    bool ok = true;
    for (const HolElem& gen : gens) {
      HolElem c = h.conj_by_aut(a, gen);
      if (!(g2.alpha[h.n_index(c.eta)] == c.alpha)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (i64 idx = 0; idx < h.n() && ok; ++idx) {
      HolElem c = h.conj_by_aut(a, g1.elem(h, idx));
      ok = g2.alpha[h.n_index(c.eta)] == c.alpha;
    }
    if (ok) {
      res.witness = a;
      return res;
    }
  }
  return res;
}

BraceAutGroup brace_automorphisms(const Holo& h, const SkewBrace& b, const RegularSubgroupMap& g) {
  BraceAutGroup out;
  std::vector<HolElem> gens = generating_set(h, g);
  const i64 n = h.n();
  for (i64 ai = 0; ai < h.aut_count(); ++ai) {
    AutNElem a = h.aut_from_index(ai);
    bool ok = true;
    for (const HolElem& gen : gens) {
      HolElem c = h.conj_by_aut(a, gen);
      if (!(g.alpha[h.n_index(c.eta)] == c.alpha)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    // Confirm the circ-automorphism property on every pair.
    std::vector<int> perm(n);
    for (i64 x = 0; x < n; ++x) perm[x] = static_cast<int>(h.n_index(h.aut_apply(a, h.n_from_index(x))));
    for (i64 x = 0; x < n && ok; ++x)
      for (i64 y = 0; y < n; ++y)
        if (perm[b.circ(static_cast<int>(x), static_cast<int>(y))] != b.circ(perm[x], perm[y])) {
          ok = false;
          break;
        }
    if (ok) out.elements.push_back(a);
  }
  // Group structure: try each element as a cyclic generator.
  auto contains = [&](const AutNElem& x) {
    for (const AutNElem& e : out.elements)
      if (e == x) return true;
    return false;
  };
  for (const AutNElem& cand : out.elements) {
    AutNElem acc = cand;
    size_t covered = 1;
    while (!(acc == h.aut_identity())) {
      acc = h.aut_compose(acc, cand);
      if (!contains(acc)) { covered = 0; break; }
      ++covered;
    }
    if (covered == out.elements.size()) {
      out.cyclic = true;
      if (!(cand == h.aut_identity()) || out.elements.size() == 1) {
        out.generator = cand;
        break;
      }
    }
  }
  return out;
}

std::vector<AutNElem> brace_automorphisms_raw(const Holo& h, const SkewBrace& b) {
  std::vector<AutNElem> out;
  const i64 n = h.n();
  for (i64 ai = 0; ai < h.aut_count(); ++ai) {
    AutNElem a = h.aut_from_index(ai);
    std::vector<int> perm(n);
    for (i64 x = 0; x < n; ++x) perm[x] = static_cast<int>(h.n_index(h.aut_apply(a, h.n_from_index(x))));
    bool ok = true;
    for (i64 x = 0; x < n && ok; ++x)
      for (i64 y = 0; y < n; ++y)
        if (perm[b.circ(static_cast<int>(x), static_cast<int>(y))] != b.circ(perm[x], perm[y])) {
          ok = false;
          break;
        }
    if (ok) out.push_back(a);
  }
  return out;
}

namespace {

GroupStructure analyse(const GroupTable& t, int p, int q, i64 pp) {
  GroupStructure s;
  s.order_profile = order_profile(t);
  s.abelian = is_abelian(t);
  s.center_size = center_size(t);
  s.sylow_p_normal = sylow_normal_by_count(t, p, pp);
  s.sylow_q_normal = sylow_normal_by_count(t, q, q);
  std::vector<int> sylow = sylow_subgroup(t, p, pp);
  s.sylow_p_exponent = subgroup_exponent(t, sylow);
  s.sylow_p_class = nilpotency_class(t, sylow);
  return s;
}

}  // namespace

StructureDescriptor identify_structure(const SkewBrace& b) {
  const i64 pp = b.n() / b.q();
  StructureDescriptor d;
  d.dot = analyse(b.dot_table(), b.p(), b.q(), pp);
  d.circ = analyse(b.circ_table(), b.p(), b.q(), pp);
  return d;
}

}  // namespace sbforge
