#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <set>

#include "sbforge/brace.hpp"
#include "sbforge/construct.hpp"
#include "sbforge/error.hpp"

using namespace sbforge;

namespace {

struct Setup {
  std::shared_ptr<Holo> h;
  Construct c;
  explicit Setup(int p, int q)
      : h(std::make_shared<Holo>(build_frame(validate_prime_pair(p, q)))), c(h) {}
};

SkewBrace make_B(const Setup& s, bool force_structural = false) {
  Provenance prov;
  prov.which = "B";
  return brace_from_regular(s.h, s.c.build_G(), prov, force_structural);
}

bool all_pass(const CheckReport& rep) {
  for (const auto& it : rep.items)
    if (!it.pass) return false;
  return true;
}

}  // namespace

TEST_CASE("left-regular image gives the trivial brace") {
  Setup s(2, 3);
  Provenance prov;
  prov.which = "trivial";
  SkewBrace t = brace_from_regular(s.h, left_regular_map(*s.h), prov);
  for (i64 a = 0; a < t.n(); ++a)
    for (i64 b = 0; b < t.n(); ++b)
      CHECK(t.circ(static_cast<int>(a), static_cast<int>(b)) == t.dot(static_cast<int>(a), static_cast<int>(b)));
  CHECK(all_pass(verify_axioms(t, Effort::Exhaustive())));
}

TEST_CASE("B at (2,3) passes the axioms exhaustively") {
  Setup s(2, 3);
  SkewBrace b = make_B(s);
  CheckReport rep = verify_axioms(b, Effort::Exhaustive());
  for (const auto& it : rep.items) {
    INFO(it.name, " ", it.detail);
    CHECK(it.pass);
  }
  // Nonabelian on both sides.
  bool dot_ab = is_abelian(b.dot_table()), circ_ab = is_abelian(b.circ_table());
  CHECK_FALSE(dot_ab);
  CHECK_FALSE(circ_ab);
}

TEST_CASE("B at (3,13) passes sampled axioms in unit tests") {
  Setup s(3, 13);
  SkewBrace b = make_B(s);
  CHECK(all_pass(verify_axioms(b, Effort::Sampled(1'000'000))));
}

TEST_CASE("a corrupted circ entry is reported as a brace-relation violation") {
  Setup s(2, 3);
  SkewBrace good = make_B(s);
  std::vector<std::uint16_t> circ = good.circ_table().mul;
  circ[5 * 12 + 7] = static_cast<std::uint16_t>((circ[5 * 12 + 7] + 1) % 12);
  SkewBrace bad = SkewBrace::from_tables(2, 3, 12, good.dot_table().mul, circ, Provenance{});
  CheckReport rep = verify_axioms(bad, Effort::Exhaustive());
  CHECK_FALSE(all_pass(rep));
  bool brace_failed = false;
  for (const auto& it : rep.items)
    if (it.name == "brace_relation" && !it.pass) brace_failed = true;
  bool some_circ_group_failure = false;
  for (const auto& it : rep.items)
    if (it.name.rfind("circ_", 0) == 0 && !it.pass) some_circ_group_failure = true;
  CHECK((brace_failed || some_circ_group_failure));
}

TEST_CASE("lambda maps") {
  Setup s(2, 3);
  SkewBrace b = make_B(s);
  // lambda at the identity is the identity permutation.
  std::vector<int> at_id = lambda_map(b, b.id());
  for (i64 x = 0; x < b.n(); ++x) CHECK(at_id[x] == x);
  // Trivial brace: lambda_a = id for all a.
  Provenance prov;
  prov.which = "trivial";
  SkewBrace t = brace_from_regular(s.h, left_regular_map(*s.h), prov);
  for (i64 a = 0; a < t.n(); ++a) {
    std::vector<int> l = lambda_map(t, static_cast<int>(a));
    for (i64 x = 0; x < t.n(); ++x) CHECK(l[x] == x);
  }
  // lambda_{a o b} = lambda_a lambda_b and each lambda_a is a dot-automorphism.
  for (i64 a = 0; a < b.n(); ++a) {
    std::vector<int> la = lambda_map(b, static_cast<int>(a));
    for (i64 x = 0; x < b.n(); ++x)
      for (i64 y = 0; y < b.n(); ++y)
        CHECK(la[b.dot(static_cast<int>(x), static_cast<int>(y))] == b.dot(la[x], la[y]));
    for (i64 bb = 0; bb < b.n(); ++bb) {
      std::vector<int> lb = lambda_map(b, static_cast<int>(bb));
      std::vector<int> lab = lambda_map(b, b.circ(static_cast<int>(a), static_cast<int>(bb)));
      for (i64 x = 0; x < b.n(); ++x) CHECK(lab[x] == la[lb[x]]);
    }
  }
}

TEST_CASE("lambda homomorphism sampled at (3,13)") {
  Setup s(3, 13);
  SkewBrace b = make_B(s);
  SplitMix64 rng(kSampleSeed);
  for (int t = 0; t < 300; ++t) {
    int a = static_cast<int>(rng.below(b.n()));
    int bb = static_cast<int>(rng.below(b.n()));
    std::vector<int> la = lambda_map(b, a), lb = lambda_map(b, bb), lab = lambda_map(b, b.circ(a, bb));
    for (i64 x = 0; x < b.n(); ++x) CHECK(lab[x] == la[lb[x]]);
  }
}

TEST_CASE("ideals of the trivial brace on N are 1, P, N") {
  Setup s(2, 3);
  Provenance prov;
  prov.which = "trivial";
  SkewBrace t = brace_from_regular(s.h, left_regular_map(*s.h), prov);
  std::vector<Ideal> fast = enumerate_ideals(t);
  std::set<std::vector<int>> fast_ideals;
  for (const Ideal& ideal : fast)
    if (ideal.is_ideal()) fast_ideals.insert(ideal.elements);
  CHECK(fast_ideals.size() == 3);
  CHECK(fast_ideals.count({0}) == 1);
  CHECK(fast_ideals.count({0, 1, 2, 3}) == 1);

  // The generic lattice walk agrees on the ideal set.
  std::vector<Ideal> gen = enumerate_ideals_generic(t);
  std::set<std::vector<int>> gen_ideals;
  for (const Ideal& ideal : gen)
    if (ideal.is_ideal()) gen_ideals.insert(ideal.elements);
  CHECK(gen_ideals == fast_ideals);
  CHECK_FALSE(is_simple(t));
}

TEST_CASE("B at n = 12 is simple, with P a left ideal that is not circ-normal") {
  Setup s(2, 3);
  SkewBrace b = make_B(s);
  std::vector<Ideal> fast = enumerate_ideals(b);
  std::vector<Ideal> gen = enumerate_ideals_generic(b);
  std::set<std::vector<int>> fast_ideals, gen_ideals;
  for (const Ideal& ideal : fast)
    if (ideal.is_ideal()) fast_ideals.insert(ideal.elements);
  for (const Ideal& ideal : gen)
    if (ideal.is_ideal()) gen_ideals.insert(ideal.elements);
  CHECK(fast_ideals == gen_ideals);
  CHECK(fast_ideals.size() == 2);
  CHECK(is_simple(b));

  // P = {0,1,2,3} is a left ideal, dot-normal, but not circ-normal.
  bool found_p = false;
  for (const Ideal& ideal : gen)
    if (ideal.elements == std::vector<int>{0, 1, 2, 3}) {
      found_p = true;
      CHECK(ideal.left_ideal);
      CHECK(ideal.dot_normal);
      CHECK_FALSE(ideal.circ_normal);
    }
  CHECK(found_p);
}

TEST_CASE("B and Bopp are simple at (3,13)") {
  Setup s(3, 13);
  SkewBrace b = make_B(s);
  CHECK(is_simple(b));
  Provenance prov;
  prov.which = "Bopp";
  SkewBrace bopp = brace_from_regular(s.h, s.c.build_G_star(), prov);
  CHECK(is_simple(bopp));
}

TEST_CASE("opposite_regular of the left-regular map is the right-regular map") {
  Setup s(2, 3);
  RegularSubgroupMap right = opposite_regular(*s.h, left_regular_map(*s.h));
  for (i64 idx = 0; idx < s.h->n(); ++idx) {
    NElem eta = s.h->n_from_index(idx);
    // The element with first component eta^{-1} is (eta^{-1}, conj(eta)).
    CHECK(right.alpha[s.h->n_index(s.h->n_inv(eta))] == s.h->conj_of_eta(eta));
  }
}

TEST_CASE("opposite_regular is involutive and star is an isomorphism") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {3, 13}}) {
    Setup s(p, q);
    RegularSubgroupMap g = s.c.build_G();
    RegularSubgroupMap gss = opposite_regular(*s.h, opposite_regular(*s.h, g));
    for (i64 idx = 0; idx < s.h->n(); ++idx) CHECK(gss.alpha[idx] == g.alpha[idx]);
  }
  // g -> g* is a group isomorphism, exhaustive at n = 12.
  Setup s(2, 3);
  RegularSubgroupMap g = s.c.build_G();
  std::vector<HolElem> im = g.image(*s.h);
  for (const HolElem& a : im)
    for (const HolElem& b : im)
      CHECK(s.h->star(s.h->hol_mul(a, b)) == s.h->hol_mul(s.h->star(a), s.h->star(b)));
}

TEST_CASE("opposite brace axioms and the inversion isomorphism") {
  Setup s(2, 3);
  SkewBrace b = make_B(s);
  SkewBrace bop = opposite_brace(b);
  CHECK(all_pass(verify_axioms(bop, Effort::Exhaustive())));

  Provenance prov;
  prov.which = "Bopp";
  // Build from the star of G directly.
  SkewBrace bstar2 = brace_from_regular(s.h, opposite_regular(*s.h, s.c.build_G()), prov);
  // Inversion in dot is a skew-brace isomorphism opposite_brace(B) -> brace(G*).
  auto theta = [&](int x) { return b.dot_inv(x); };
  for (i64 a = 0; a < b.n(); ++a) {
    for (i64 x = 0; x < b.n(); ++x) {
      int ia = static_cast<int>(a), ix = static_cast<int>(x);
      CHECK(theta(bop.dot(ia, ix)) == bstar2.dot(theta(ia), theta(ix)));
      CHECK(theta(bop.circ(ia, ix)) == bstar2.circ(theta(ia), theta(ix)));
    }
  }
}

TEST_CASE("are_isomorphic finds a witness for (G, G) and none for (G, G*)") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {3, 13}}) {
    Setup s(p, q);
    RegularSubgroupMap g = s.c.build_G();
    RegularSubgroupMap gs = s.c.build_G_star();
    IsoResult self = are_isomorphic(*s.h, g, g);
    REQUIRE(self.witness.has_value());
    IsoResult cross = are_isomorphic(*s.h, g, gs);
    CHECK_FALSE(cross.witness.has_value());
    CHECK(cross.candidates_checked == s.h->aut_count());
  }
}

TEST_CASE("iso witnesses invert") {
  Setup s(2, 3);
  RegularSubgroupMap g = s.c.build_G();
  // Conjugate G by a nontrivial automorphism to get an isomorphic copy.
  AutNElem a = s.h->aut_from_index(7);
  std::vector<HolElem> conj;
  for (const HolElem& e : g.image(*s.h)) conj.push_back(s.h->conj_by_aut(a, e));
  RegularSubgroupMap g2 = map_from_subgroup(*s.h, conj);
  IsoResult fwd = are_isomorphic(*s.h, g, g2);
  REQUIRE(fwd.witness.has_value());
  // The inverse witness conjugates g2 back onto g.
  AutNElem winv = s.h->aut_inv(*fwd.witness);
  for (i64 idx = 0; idx < s.h->n(); ++idx) {
    HolElem c = s.h->conj_by_aut(winv, g2.elem(*s.h, idx));
    CHECK(g.alpha[s.h->n_index(c.eta)] == c.alpha);
  }
}

TEST_CASE("brace automorphism group") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {3, 13}}) {
    Setup s(p, q);
    SkewBrace b = make_B(s);
    RegularSubgroupMap g = s.c.build_G();
    BraceAutGroup aut = brace_automorphisms(*s.h, b, g);
    CHECK(static_cast<int>(aut.elements.size()) == p);
    CHECK(aut.cyclic);
    REQUIRE(aut.generator.has_value());
    // Generated by conjugation by [[J, 0],[0, 1]].
    AutNElem conj_j{0, 1, FpVec::zero(p, p)};
    CHECK(*aut.generator == conj_j);
    // Closed under composition and inverse; every member fixes the identity.
    for (const AutNElem& x : aut.elements) {
      CHECK(s.h->aut_apply(x, s.h->n_identity()) == s.h->n_identity());
      bool inv_in = false, comp_in = true;
      for (const AutNElem& y : aut.elements) {
        if (y == s.h->aut_inv(x)) inv_in = true;
        AutNElem xy = s.h->aut_compose(x, y);
        bool found = false;
        for (const AutNElem& z : aut.elements)
          if (z == xy) found = true;
        comp_in = comp_in && found;
      }
      CHECK(inv_in);
      CHECK(comp_in);
    }
  }
}

TEST_CASE("raw sweep over all dot-automorphisms agrees at n = 12") {
  Setup s(2, 3);
  SkewBrace b = make_B(s);
  RegularSubgroupMap g = s.c.build_G();
  BraceAutGroup aut = brace_automorphisms(*s.h, b, g);
  std::vector<AutNElem> raw = brace_automorphisms_raw(*s.h, b);
  REQUIRE(raw.size() == aut.elements.size());
  for (size_t i = 0; i < raw.size(); ++i) CHECK(raw[i] == aut.elements[i]);
  // The trivial brace admits all of Aut(N).
  Provenance prov;
  prov.which = "trivial";
  SkewBrace t = brace_from_regular(s.h, left_regular_map(*s.h), prov);
  CHECK(brace_automorphisms_raw(*s.h, t).size() == 24);
  BraceAutGroup taut = brace_automorphisms(*s.h, t, left_regular_map(*s.h));
  CHECK(taut.elements.size() == 24);
  CHECK_FALSE(taut.cyclic);
}

TEST_CASE("structure identification at (2,3)") {
  Setup s(2, 3);
  SkewBrace b = make_B(s);
  StructureDescriptor d = identify_structure(b);
  // Additive side: the alternating-group signature.
  CHECK(d.dot.order_profile == std::map<i64, i64>{{1, 1}, {2, 3}, {3, 8}});
  CHECK(d.dot.sylow_p_normal);
  CHECK_FALSE(d.dot.sylow_q_normal);
  CHECK_FALSE(d.dot.abelian);
  // Multiplicative side: the dicyclic signature.
  CHECK(d.circ.order_profile == std::map<i64, i64>{{1, 1}, {2, 1}, {3, 2}, {4, 6}, {6, 2}});
  CHECK_FALSE(d.circ.sylow_p_normal);
  CHECK(d.circ.sylow_q_normal);
  CHECK(d.circ.sylow_p_exponent == 4);
  CHECK(d.circ.sylow_p_class == 1);
}

TEST_CASE("structure identification at (3,13)") {
  Setup s(3, 13);
  SkewBrace b = make_B(s);
  StructureDescriptor d = identify_structure(b);
  CHECK(d.dot.sylow_p_normal);
  CHECK_FALSE(d.dot.sylow_q_normal);
  CHECK_FALSE(d.circ.sylow_p_normal);
  CHECK(d.circ.sylow_q_normal);
  CHECK(d.circ.sylow_p_exponent == 9);
  CHECK(d.circ.sylow_p_class == 2);
  CHECK(d.dot.sylow_p_exponent == 3);
  CHECK(d.dot.sylow_p_class == 1);
}

TEST_CASE("brace_from_regular rejects a map that is not closed") {
  Setup s(2, 3);
  RegularSubgroupMap g = s.c.build_G();
  // Damage one assignment away from the identity slot.
  g.alpha[5] = s.h->aut_from_index((s.h->aut_index(g.alpha[5]) + 1) % s.h->aut_count());
  CHECK_THROWS_WITH_AS(brace_from_regular(s.h, g, Provenance{}), doctest::Contains("NotRegular"), Error);
}

TEST_CASE("structural mode and table mode agree on the full circ table at (3,13)") {
  Setup s(3, 13);
  SkewBrace table = make_B(s);
  SkewBrace structural = make_B(s, /*force_structural=*/true);
  CHECK(structural.mode() == BraceMode::Structural);
  for (i64 a = 0; a < table.n(); ++a)
    for (i64 b2 = 0; b2 < table.n(); ++b2) {
      CHECK(table.circ(static_cast<int>(a), static_cast<int>(b2)) ==
            structural.circ(static_cast<int>(a), static_cast<int>(b2)));
      CHECK(table.dot(static_cast<int>(a), static_cast<int>(b2)) ==
            structural.dot(static_cast<int>(a), static_cast<int>(b2)));
    }
}
