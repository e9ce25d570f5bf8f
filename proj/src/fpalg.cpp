#include "sbforge/fpalg.hpp"

#include <algorithm>
#include <sstream>

#include "sbforge/error.hpp"

namespace sbforge {

PrimePair validate_prime_pair(i64 p, i64 q) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, "p = " + std::to_string(p) + " is not prime");
  if (!is_prime(q)) throw Error(Errc::NotPrime, "q = " + std::to_string(q) + " is not prime");
  if (q % p == 0 || order_mod(p % q, q) != p)
    throw Error(Errc::DivisibilityFails,
                "q = " + std::to_string(q) + " does not divide (p^p-1)/(p-1) for p = " + std::to_string(p));
  if (p > kMaxP)
    throw Error(Errc::Unsupported, "p = " + std::to_string(p) + " exceeds the supported bound " + std::to_string(kMaxP));
  PrimePair pair;
  pair.p = static_cast<int>(p);
  pair.q = static_cast<int>(q);
  i64 pp = 1;
  for (int i = 0; i < p; ++i) pp *= p;
  pair.n = pp * q;
  return pair;
}

namespace {

// Arithmetic in K = F_p[x]/(f), elements as coefficient vectors of length p.
struct KField {
  int p;
  std::vector<int> f;  // monic, degree p, coeffs f[0..p]

  std::vector<int> mul(const std::vector<int>& a, const std::vector<int>& b) const {
    const int d = p;
    std::vector<int> prod(2 * d - 1, 0);
    for (int i = 0; i < d; ++i) {
      if (!a[i]) continue;
      for (int j = 0; j < d; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
    for (int i = 2 * d - 2; i >= d; --i) {
      int c = prod[i];
      if (!c) continue;
      prod[i] = 0;
      for (int j = 0; j < d; ++j) prod[i - d + j] = sub_mod(prod[i - d + j], mul_mod(c, f[j], p), p);
    }
    prod.resize(d);
    return prod;
  }

  std::vector<int> pow(std::vector<int> base, i64 e) const {
    std::vector<int> r(p, 0);
    r[0] = 1;
    while (e > 0) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  bool is_one(const std::vector<int>& a) const {
    if (a[0] != 1) return false;
    for (int i = 1; i < p; ++i)
      if (a[i]) return false;
    return true;
  }
};

i64 elem_order(const KField& K, const std::vector<int>& a, i64 group_order) {
  i64 ord = group_order;
  for (auto [r, m] : factorize(group_order)) {
    (void)m;
    while (ord % r == 0 && K.is_one(K.pow(a, ord / r))) ord /= r;
  }
  return ord;
}

// Multiplication-by-a matrix on K in the basis 1, x, ..., x^{p-1}.
FpMat mult_matrix(const KField& K, const std::vector<int>& a) {
  FpMat m = FpMat::zero(K.p, K.p);
  std::vector<int> xvec(K.p, 0);
  xvec[1] = 1;
  std::vector<int> xj(K.p, 0);
  xj[0] = 1;
  for (int j = 0; j < K.p; ++j) {
    std::vector<int> col = K.mul(a, xj);
    for (int i = 0; i < K.p; ++i) m.set(i, j, col[i]);
    xj = K.mul(xj, xvec);
  }
  return m;
}

FpMat companion(const std::vector<int>& monic, int p) {
  const int d = static_cast<int>(monic.size()) - 1;
  FpMat c = FpMat::zero(p, d);
  for (int i = 0; i + 1 < d; ++i) c.set(i + 1, i, 1);
  for (int i = 0; i < d; ++i) c.set(i, d - 1, neg_mod(monic[i], p));
  return c;
}

FpMat jordan_standard(int p) {
  FpMat j = FpMat::identity(p, p);
  for (int i = 0; i + 1 < p; ++i) j.set(i, i + 1, 1);
  return j;
}

// Kernel basis of X -> X*M - M^p*X as p^2-dim row vectors, deterministic RREF.
std::vector<std::vector<int>> intertwiner_kernel(const FpMat& m, const FpMat& mp) {
  const int p = m.mod, d = m.dim, nn = d * d;
  // rows: equations indexed by (i,j); cols: unknowns X_{rc} at r*d+c.
  std::vector<std::vector<int>> sys(nn, std::vector<int>(nn, 0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      auto& row = sys[i * d + j];
      for (int k = 0; k < d; ++k) {
        row[i * d + k] = add_mod(row[i * d + k], m.at(k, j), p);
        row[k * d + j] = sub_mod(row[k * d + j], mp.at(i, k), p);
      }
    }
  // Gaussian elimination.
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < nn && rank < nn; ++col) {
    int pr = -1;
    for (int r = rank; r < nn; ++r)
      if (sys[r][col]) { pr = r; break; }
    if (pr < 0) continue;
    std::swap(sys[pr], sys[rank]);
    int inv = inv_mod(sys[rank][col], p);
    for (int c = 0; c < nn; ++c) sys[rank][c] = mul_mod(sys[rank][c], inv, p);
    for (int r = 0; r < nn; ++r) {
      if (r == rank || !sys[r][col]) continue;
      int f = sys[r][col];
      for (int c = 0; c < nn; ++c) sys[r][c] = sub_mod(sys[r][c], mul_mod(f, sys[rank][c], p), p);
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::vector<bool> is_pivot(nn, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<int>> kernel;
  for (int free = 0; free < nn; ++free) {
    if (is_pivot[free]) continue;
    std::vector<int> v(nn, 0);
    v[free] = 1;
    for (int r = 0; r < rank; ++r)
      v[pivot_col[r]] = neg_mod(sys[r][free], p);
    kernel.push_back(std::move(v));
  }
  return kernel;
}

FpMat from_flat(const std::vector<int>& v, int p, int d) {
  FpMat m = FpMat::zero(p, d);
  for (int i = 0; i < d * d; ++i) m.e[i] = static_cast<std::uint8_t>(v[i]);
  return m;
}

}  // namespace

Frame build_frame(const PrimePair& pair) {
  const int p = pair.p, q = pair.q;
  const i64 ppow = pair.n / q;
  const i64 tord = ppow - 1;

  // (1) first irreducible monic f of degree p, coefficients scanned base p.
  KField K{p, {}};
  {
    bool found = false;
    for (i64 t = 0; t < ppow && !found; ++t) {
      std::vector<int> f(p + 1);
      i64 v = t;
      for (int i = 0; i < p; ++i) { f[i] = static_cast<int>(v % p); v /= p; }
      f[p] = 1;
      if (poly_irreducible(f, p)) {
        K.f = f;
        found = true;
      }
    }
    if (!found) throw Error(Errc::InternalSearchExhausted, "no irreducible polynomial found");
  }

  // (2) least generator of K^x, then alpha = g^{(p^p-1)/q}.
  std::vector<int> alpha;
  {
    bool found = false;
    for (i64 t = 2; t < ppow && !found; ++t) {
      std::vector<int> g(p);
      i64 v = t;
      for (int i = 0; i < p; ++i) { g[i] = static_cast<int>(v % p); v /= p; }
      if (elem_order(K, g, tord) == tord) {
        alpha = K.pow(g, tord / q);
        found = true;
      }
    }
    if (!found) throw Error(Errc::InternalSearchExhausted, "no generator of the unit group found");
  }

  // (3) companion matrix of the minimal polynomial of alpha.
  FpMat m0;
  {
    FpMat mult = mult_matrix(K, alpha);
    std::vector<int> mp = minimal_polynomial(mult);
    if (static_cast<int>(mp.size()) != p + 1)
      throw Error(Errc::InternalSearchExhausted, "alpha does not generate a degree-p extension");
    m0 = companion(mp, p);
  }

  // (4) least invertible solution of J0*M0 = M0^p*J0.
  FpMat j0;
  {
    FpMat m0p = mat_pow(m0, p);
    auto kernel = intertwiner_kernel(m0, m0p);
    const int dim = static_cast<int>(kernel.size());
    i64 count = 1;
    for (int i = 0; i < dim; ++i) count *= p;
    bool found = false;
    for (i64 t = 1; t < count && !found; ++t) {
      std::vector<int> flat(p * p, 0);
      i64 v = t;
      for (int i = 0; i < dim; ++i) {
        int c = static_cast<int>(v % p);
        v /= p;
        if (!c) continue;
        for (int x = 0; x < p * p; ++x) flat[x] = add_mod(flat[x], mul_mod(c, kernel[i][x], p), p);
      }
      FpMat cand = from_flat(flat, p, p);
      if (mat_invertible(cand)) {
        j0 = cand;
        found = true;
      }
    }
    if (!found) throw Error(Errc::InternalSearchExhausted, "no invertible intertwiner found");
  }

  // (5) force J0 to order p: replace by J0^s, s = 1 mod p and 0 mod ord(J0^p).
  {
    i64 d = order_of(mat_pow(j0, p));
    if (d > 1) {
      i64 dinv = pow_mod(d % p, p - 2, p);
      i64 s = d * dinv;  // 1 mod p, 0 mod d
      j0 = mat_pow(j0, s);
    }
  }

  // (6) Jordan-chain change of basis: b_p = w, b_{i-1} = (J0 - I) b_i.
  FpMat m1, j1;
  {
    FpMat nil = mat_sub(j0, FpMat::identity(p, p));
    FpMat nil_top = mat_pow(nil, p - 1);
    // Chain seed: standard basis vectors first, then all vectors by index.
    std::vector<FpVec> seeds;
    for (int i = 1; i <= p; ++i) seeds.push_back(FpVec::unit(p, p, i));
    for (i64 t = 1; t < ppow; ++t) seeds.push_back(FpVec::from_index(p, p, t));
    FpVec w;
    bool found = false;
    for (const FpVec& cand : seeds) {
      if (!mat_vec(nil_top, cand).is_zero()) {
        w = cand;
        found = true;
        break;
      }
    }
    if (!found) throw Error(Errc::InternalSearchExhausted, "no Jordan chain seed found");
    std::vector<FpVec> basis(p);
    basis[p - 1] = w;
    for (int i = p - 1; i >= 1; --i) basis[i - 1] = mat_vec(nil, basis[i]);
    FpMat s = FpMat::zero(p, p);
    for (int c = 0; c < p; ++c)
      for (int r = 0; r < p; ++r) s.set(r, c, basis[c].at(r));
    FpMat sinv = mat_inv(s);
    m1 = mat_mul(mat_mul(sinv, m0), s);
    j1 = mat_mul(mat_mul(sinv, j0), s);
    if (!(j1 == jordan_standard(p)))
      throw Error(Errc::InternalSearchExhausted, "Jordan chain did not produce the standard form");
  }

  // (7) T = least power-basis combination generating the centraliser with
  //     T^{(p^p-1)/q} = M.
  FpMat t;
  {
    std::vector<FpMat> mpows(p);
    mpows[0] = FpMat::identity(p, p);
    for (int i = 1; i < p; ++i) mpows[i] = mat_mul(mpows[i - 1], m1);
    bool found = false;
    for (i64 c = 1; c < ppow && !found; ++c) {
      FpMat cand = FpMat::zero(p, p);
      i64 v = c;
      for (int i = 0; i < p; ++i) {
        int ci = static_cast<int>(v % p);
        v /= p;
        if (ci) cand = mat_add(cand, mat_mul(FpMat::scalar(p, p, ci), mpows[i]));
      }
      if (!mat_invertible(cand)) continue;
      if (order_of(cand) != tord) continue;
      if (!(mat_pow(cand, tord / q) == m1)) continue;
      t = cand;
      found = true;
    }
    if (!found) throw Error(Errc::InternalSearchExhausted, "no centraliser generator found");
  }

  Frame f;
  f.pair = pair;
  f.M = m1;
  f.T = t;
  f.J = jordan_standard(p);
  return f;
}

namespace {

// Exact order given a factored candidate exponent; 0 when a^E != I.
i64 order_given_exponent(const FpMat& a, i64 e) {
  if (!mat_pow(a, e).is_identity()) return 0;
  i64 ord = e;
  for (auto [r, m] : factorize(e)) {
    (void)m;
    while (ord % r == 0 && mat_pow(a, ord / r).is_identity()) ord /= r;
  }
  return ord;
}

}  // namespace

CheckReport verify_frame(const Frame& f) {
  CheckReport rep;
  const int p = f.pair.p, q = f.pair.q;
  const i64 ppow = f.pair.n / q;
  const i64 tord = ppow - 1;
  const FpMat I = FpMat::identity(p, p);

  // (i) irreducibility of the minimal polynomial of M, degree p.
  {
    CheckItem it{"i_M_irreducible_minpoly", false, ""};
    std::vector<int> mp = minimal_polynomial(f.M);
    it.pass = static_cast<int>(mp.size()) == p + 1 && poly_irreducible(mp, p);
    if (!it.pass) it.detail = "min poly degree " + std::to_string(mp.size() - 1);
    rep.items.push_back(it);
  }

  // (ii) M - I invertible.
  {
    CheckItem it{"ii_M_minus_I_invertible", mat_invertible(mat_sub(f.M, I)), ""};
    rep.items.push_back(it);
  }

  // (iii) (M^i - I)w span V for every w in the test set.
  {
    CheckItem it{"iii_twisted_spans", true, ""};
    std::vector<FpVec> testset;
    for (int i = 1; i <= p; ++i) testset.push_back(FpVec::unit(p, p, i));
    FpVec ones = FpVec::zero(p, p);
    for (int i = 0; i < p; ++i) ones.e[i] = 1;
    testset.push_back(ones);
    for (const FpVec& w : testset) {
      FpMat cols = FpMat::zero(p, p);
      FpMat mi = I;
      for (int i = 1; i <= p; ++i) {
        mi = mat_mul(mi, f.M);
        FpVec col = mat_vec(mat_sub(mi, I), w);
        for (int r = 0; r < p; ++r) cols.set(r, i - 1, col.at(r));
      }
      if (mat_rank(cols) != p) {
        it.pass = false;
        it.detail = "fails for w = " + vec_to_string(w);
        break;
      }
    }
    rep.items.push_back(it);
  }

  // (iv) T order and the power relation back to M.
  {
    CheckItem it{"iv_T_generates_centraliser", false, ""};
    it.pass = order_of(f.T) == tord && mat_pow(f.T, tord / q) == f.M;
    rep.items.push_back(it);
  }

  // (v) non-scalar powers of T leave no invariant subspace.
  {
    CheckItem it{"v_T_powers_irreducible", true, ""};
    FpMat a = I;
    for (i64 i = 1; i < tord; ++i) {
      a = mat_mul(a, f.T);
      if (a.is_scalar()) continue;
      std::vector<int> mp = minimal_polynomial(a);
      if (static_cast<int>(mp.size()) != p + 1 || !poly_irreducible(mp, p)) {
        it.pass = false;
        it.detail = "T^" + std::to_string(i) + " has reducible action";
        break;
      }
    }
    rep.items.push_back(it);
  }

  // (vi) min poly of J is (X-1)^p.
  {
    CheckItem it{"vi_J_minpoly", false, ""};
    FpMat nil = mat_sub(f.J, I);
    it.pass = mat_pow(nil, p).is_zero() && !mat_pow(nil, p - 1).is_zero();
    rep.items.push_back(it);
  }

  // (vii) the normaliser elements T^i J^j: distinctness, the conjugation
  // exponent, and the order classification. A = T^i J^j has order p iff
  // (p-1) | i and j != 0, and order q iff A = M^r with 1 <= r <= q-1.
  {
    CheckItem it{"vii_normaliser", true, ""};
    const int dl = static_cast<int>(tord) / q;
    std::vector<std::pair<u64, u64>> keys;
    keys.reserve(tord * p);
    FpMat ti = I;
    for (i64 i = 0; i < tord && it.pass; ++i) {
      FpMat a = ti;
      for (int j = 0; j < p && it.pass; ++j) {
        keys.push_back(mat_key(a));
        FpMat conj = mat_mul(mat_mul(a, f.M), mat_inv(a));
        int s = static_cast<int>(pow_mod(p, j, q));
        if (!(conj == mat_pow(f.M, s))) {
          it.pass = false;
          it.detail = "conjugation exponent wrong at (i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ")";
          break;
        }
        i64 ord = order_given_exponent(a, tord * p);
        if (ord == 0) {
          it.pass = false;
          it.detail = "order does not divide (p^p-1)p at (i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ")";
          break;
        }
        bool expect_p = (j != 0) && (i % (p - 1) == 0);
        bool expect_q = (j == 0) && (i % dl == 0) && (i != 0);
        if ((ord == p) != expect_p || (ord == q) != expect_q) {
          it.pass = false;
          it.detail = "order classification wrong at (i,j)=(" + std::to_string(i) + "," + std::to_string(j) +
                      "), order " + std::to_string(ord);
          break;
        }
        a = mat_mul(a, f.J);
      }
      ti = mat_mul(ti, f.T);
    }
    if (it.pass) {
      std::sort(keys.begin(), keys.end());
      if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) {
        it.pass = false;
        it.detail = "T^i J^j not pairwise distinct";
      } else if (static_cast<i64>(keys.size()) != tord * p) {
        it.pass = false;
        it.detail = "normaliser size mismatch";
      }
    }
    rep.items.push_back(it);
  }

  return rep;
}

}  // namespace sbforge
