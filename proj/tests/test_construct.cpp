#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <set>

#include "sbforge/construct.hpp"
#include "sbforge/error.hpp"

using namespace sbforge;

namespace {

Construct make_construct(int p, int q) {
  return Construct(std::make_shared<Holo>(build_frame(validate_prime_pair(p, q))));
}

i64 binom(i64 n, i64 k) {
  if (k < 0 || k > n) return 0;
  i64 r = 1;
  for (i64 i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("generator shapes") {
  Construct c = make_construct(2, 3);
  const Holo& h = c.holo();
  CHECK(c.gen_Y(FpVec::zero(2, 2)) == h.hol_identity());
  CHECK(h.hol_apply(c.gen_X(), h.n_identity()) == NElem{1, FpVec::zero(2, 2)});
  // p = 2: Z = [(I, e2), conj(J, e2)] because -e2 = e2 mod 2.
  HolElem z = c.gen_Z();
  CHECK(z.eta == NElem{0, FpVec::unit(2, 2, 2)});
  CHECK(z.alpha == AutNElem{0, 1, FpVec::unit(2, 2, 2)});
}

TEST_CASE("starred generators agree with the star map of the inverses") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {3, 13}}) {
    Construct c = make_construct(p, q);
    const Holo& h = c.holo();
    CHECK(h.star(h.hol_inv(c.gen_X())) == c.gen_X_star());
    CHECK(h.star(h.hol_inv(c.gen_Z())) == c.gen_Z_star());
    for (int i = 1; i < p; ++i) {
      FpVec u = FpVec::unit(p, p, i);
      CHECK(h.star(h.hol_inv(c.gen_Y(u))) == c.gen_Y_star(u));
    }
  }
}

TEST_CASE("z power closed form") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {3, 13}}) {
    Construct c = make_construct(p, q);
    const Holo& h = c.holo();
    CHECK(c.z_power_closed_form(0) == h.hol_identity());
    CHECK(c.z_power_closed_form(p) == c.gen_Y(FpVec::unit(p, p, 1)));
  }
  // p = 3, k = 2: the first-component vector is J^[2] e_3 = 2 e_3 + e_2.
  Construct c3 = make_construct(3, 13);
  FpVec expect = vec_add(vec_scale(2, FpVec::unit(3, 3, 3)), FpVec::unit(3, 3, 2));
  CHECK(c3.z_power_closed_form(2).eta.v == expect);
}

TEST_CASE("binomial identities for J powers applied to e_p") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {3, 13}, {5, 11}}) {
    Construct c = make_construct(p, q);
    const Holo& h = c.holo();
    const FpMat& J = h.frame().J;
    for (int k = 0; k <= p; ++k) {
      FpVec jk = mat_vec(mat_pow(J, k), c.e_p());
      FpVec want = FpVec::zero(p, p);
      for (int i = 0; i <= k && i < p; ++i)
        want = vec_add(want, vec_scale(static_cast<int>(binom(k, i) % p), FpVec::unit(p, p, p - i)));
      CHECK(jk == want);
      FpVec jbr = mat_vec(c.j_bracket(k), c.e_p());
      FpVec want2 = FpVec::zero(p, p);
      for (int hh = 0; hh <= k - 1 && hh < p; ++hh)
        want2 = vec_add(want2, vec_scale(static_cast<int>(binom(k, hh + 1) % p), FpVec::unit(p, p, p - hh)));
      CHECK(jbr == want2);
      // J^[k] e_p - k e_p lies in V_0 for 0 <= k <= p-1.
      if (k <= p - 1) {
        FpVec diff = vec_sub(jbr, vec_scale(k, c.e_p()));
        CHECK(diff.at(p - 1) == 0);
      }
    }
  }
}

TEST_CASE("check_relations passes at both acceptance pairs") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {3, 13}}) {
    Construct c = make_construct(p, q);
    CheckReport rep = c.check_relations();
    for (const auto& it : rep.items) {
      INFO(it.name, " ", it.detail);
      CHECK(it.pass);
    }
  }
}

TEST_CASE("kappa decomposition") {
  Construct c2 = make_construct(2, 3);
  auto d = c2.kappa_decompose(FpVec::unit(2, 2, 2));  // v = e_p
  CHECK(d.kappa == 1);
  CHECK(d.kappa_tilde == 1);
  CHECK(d.pi.is_zero());
  d = c2.kappa_decompose(FpVec::unit(2, 2, 1));  // v = e_1
  CHECK(d.kappa == 0);
  CHECK(d.kappa_tilde == 0);
  CHECK(d.pi == FpVec::unit(2, 2, 1));

  Construct c3 = make_construct(3, 13);
  d = c3.kappa_decompose(vec_scale(2, FpVec::unit(3, 3, 3)));  // v = 2 e_3
  CHECK(d.kappa == 2);
  CHECK(d.kappa_tilde == 2);
  CHECK(d.pi == vec_scale(2, FpVec::unit(3, 3, 2)));
}

TEST_CASE("normal form conversions") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {3, 13}}) {
    Construct c = make_construct(p, q);
    const Holo& h = c.holo();
    // Identity maps to the empty word.
    GNormalForm f0 = c.g_of_eta(h.n_identity());
    CHECK(f0.i == 0);
    CHECK(f0.u.is_zero());
    CHECK(f0.k == 0);
    // Round trip over every element.
    for (i64 idx = 0; idx < h.n(); ++idx) {
      NElem eta = h.n_from_index(idx);
      CHECK(c.eta_of_g(c.g_of_eta(eta)) == eta);
      // The hol element X^i Y_u Z^k has eta as first component.
      CHECK(c.hol_of_g(c.g_of_eta(eta)).eta == eta);
    }
  }
  // p = 2: eta = (1, M e2) has normal form X Z.
  Construct c2 = make_construct(2, 3);
  const Holo& h2 = c2.holo();
  NElem eta{1, mat_vec(h2.frame().M, FpVec::unit(2, 2, 2))};
  GNormalForm f = c2.g_of_eta(eta);
  CHECK(f.i == 1);
  CHECK(f.u.is_zero());
  CHECK(f.k == 1);
  CHECK(c2.gform_to_string(f) == "X^1 Y_[0,0] Z^1");
}

TEST_CASE("normal forms enumerate G without collision") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {3, 13}}) {
    Construct c = make_construct(p, q);
    const Holo& h = c.holo();
    std::set<i64> seen;
    for (int i = 0; i < q; ++i)
      for (i64 uidx = 0; uidx < h.p_pow_p() / p; ++uidx)
        for (int k = 0; k < p; ++k) {
          // u ranges over V_0: embed base-p digits into the first p-1 slots.
          FpVec u = FpVec::zero(p, p);
          i64 v = uidx;
          for (int d = p - 2; d >= 0; --d) {
            u.e[d] = static_cast<std::uint8_t>(v % p);
            v /= p;
          }
          GNormalForm fm{i, u, k};
          seen.insert(h.hol_index(c.hol_of_g(fm)));
        }
    CHECK(static_cast<i64>(seen.size()) == h.n());
  }
}

TEST_CASE("gform_mul matches hol multiplication") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {3, 13}}) {
    Construct c = make_construct(p, q);
    const Holo& h = c.holo();
    for (i64 a = 0; a < h.n(); ++a)
      for (i64 b = 0; b < h.n(); ++b) {
        GNormalForm fa = c.g_of_eta(h.n_from_index(a));
        GNormalForm fb = c.g_of_eta(h.n_from_index(b));
        HolElem prod = h.hol_mul(c.hol_of_g(fa), c.hol_of_g(fb));
        GNormalForm expect = c.g_of_eta(prod.eta);
        CHECK(c.gform_mul(fa, fb) == expect);
        CHECK(c.hol_of_g(expect) == prod);
      }
  }
}

TEST_CASE("build_G is regular and matches the generator closure") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {3, 13}}) {
    Construct c = make_construct(p, q);
    const Holo& h = c.holo();
    RegularSubgroupMap g = c.build_G();
    std::vector<HolElem> im = g.image(h);
    CHECK(static_cast<i64>(im.size()) == h.n());
    CHECK(h.is_regular(im));
    RegularSubgroupMap gs = c.build_G_star();
    CHECK(h.is_regular(gs.image(h)));
  }
}

TEST_CASE("alpha and phi images agree with the composed operations") {
  Construct c = make_construct(2, 3);
  const Holo& h = c.holo();
  for (i64 ai = 0; ai < h.aut_count(); ++ai) {
    AutNElem a = h.aut_from_index(ai);
    for (i64 idx = 0; idx < h.n(); ++idx) {
      NElem eta = h.n_from_index(idx);
      CHECK(c.alpha_image(a, eta) == c.g_of_eta(h.aut_apply(a, eta)));
      CHECK(c.phi_image(a, eta) == c.g_of_eta(h.n_inv(h.aut_apply(a, eta))));
    }
  }
  // Identity automorphism fixes the identity's normal form.
  GNormalForm f = c.phi_image(h.aut_identity(), h.n_identity());
  CHECK(f.i == 0);
  CHECK(f.u.is_zero());
  CHECK(f.k == 0);
}

TEST_CASE("alpha image specialises to the J-conjugation formula") {
  // For w = 0, A = J: g_eta = X^i Y_u Z^k maps to X^{ip} Y_{Ju + (J^k - I) e_p} Z^k.
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {3, 13}}) {
    Construct c = make_construct(p, q);
    const Holo& h = c.holo();
    AutNElem aj{0, 1, FpVec::zero(p, p)};
    const FpMat& J = h.frame().J;
    for (i64 idx = 0; idx < h.n(); ++idx) {
      NElem eta = h.n_from_index(idx);
      GNormalForm f = c.g_of_eta(eta);
      GNormalForm img = c.alpha_image(aj, eta);
      CHECK(img.i == static_cast<int>(static_cast<i64>(f.i) * p % q));
      CHECK(img.k == f.k);
      FpVec want = vec_add(mat_vec(J, f.u),
                           vec_sub(mat_vec(mat_pow(J, f.k), c.e_p()), c.e_p()));
      CHECK(img.u == want);
    }
  }
}

TEST_CASE("sampled image cross-check at (3,13)") {
  Construct c = make_construct(3, 13);
  const Holo& h = c.holo();
  SplitMix64 rng(kSampleSeed);
  for (int t = 0; t < 5000; ++t) {
    AutNElem a = h.aut_from_index(static_cast<i64>(rng.below(h.aut_count())));
    NElem eta = h.n_from_index(static_cast<i64>(rng.below(h.n())));
    CHECK(c.alpha_image(a, eta) == c.g_of_eta(h.aut_apply(a, eta)));
    CHECK(c.phi_image(a, eta) == c.g_of_eta(h.n_inv(h.aut_apply(a, eta))));
  }
}
