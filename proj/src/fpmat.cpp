#include "sbforge/fpmat.hpp"

#include <sstream>

namespace sbforge {

FpVec FpVec::zero(int p, int dim) {
  FpVec v;
  v.mod = static_cast<std::uint8_t>(p);
  v.dim = static_cast<std::uint8_t>(dim);
  return v;
}

FpVec FpVec::unit(int p, int dim, int i) {
  FpVec v = zero(p, dim);
  v.e[i - 1] = 1;
  return v;
}

bool FpVec::is_zero() const {
  for (int i = 0; i < dim; ++i)
    if (e[i]) return false;
  return true;
}

i64 FpVec::index() const {
  i64 idx = 0;
  for (int i = 0; i < dim; ++i) idx = idx * mod + e[i];
  return idx;
}

FpVec FpVec::from_index(int p, int dim, i64 idx) {
  FpVec v = zero(p, dim);
  for (int i = dim - 1; i >= 0; --i) {
    v.e[i] = static_cast<std::uint8_t>(idx % p);
    idx /= p;
  }
  return v;
}

FpVec vec_add(const FpVec& a, const FpVec& b) {
  FpVec c = a;
  for (int i = 0; i < a.dim; ++i) c.e[i] = static_cast<std::uint8_t>(add_mod(a.e[i], b.e[i], a.mod));
  return c;
}

FpVec vec_sub(const FpVec& a, const FpVec& b) {
  FpVec c = a;
  for (int i = 0; i < a.dim; ++i) c.e[i] = static_cast<std::uint8_t>(sub_mod(a.e[i], b.e[i], a.mod));
  return c;
}

FpVec vec_neg(const FpVec& a) {
  FpVec c = a;
  for (int i = 0; i < a.dim; ++i) c.e[i] = static_cast<std::uint8_t>(neg_mod(a.e[i], a.mod));
  return c;
}

FpVec vec_scale(int c, const FpVec& a) {
  FpVec r = a;
  int cc = norm_mod(c, a.mod);
  for (int i = 0; i < a.dim; ++i) r.e[i] = static_cast<std::uint8_t>(mul_mod(cc, a.e[i], a.mod));
  return r;
}

std::string vec_to_string(const FpVec& v) {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < v.dim; ++i) {
    if (i) os << ',';
    os << int(v.e[i]);
  }
  os << ']';
  return os.str();
}

FpMat FpMat::zero(int p, int dim) {
  FpMat m;
  m.mod = static_cast<std::uint8_t>(p);
  m.dim = static_cast<std::uint8_t>(dim);
  return m;
}

FpMat FpMat::identity(int p, int dim) {
  FpMat m = zero(p, dim);
  for (int i = 0; i < dim; ++i) m.e[i * dim + i] = 1;
  return m;
}

FpMat FpMat::scalar(int p, int dim, int lambda) {
  FpMat m = zero(p, dim);
  int l = norm_mod(lambda, p);
  for (int i = 0; i < dim; ++i) m.e[i * dim + i] = static_cast<std::uint8_t>(l);
  return m;
}

bool FpMat::is_identity() const { return *this == identity(mod, dim); }
bool FpMat::is_zero() const { return *this == zero(mod, dim); }

bool FpMat::is_scalar() const {
  int d = at(0, 0);
  return *this == scalar(mod, dim, d);
}

FpMat mat_mul(const FpMat& a, const FpMat& b) {
  const int d = a.dim, p = a.mod;
  FpMat c = FpMat::zero(p, d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      int aik = a.e[i * d + k];
      if (!aik) continue;
      for (int j = 0; j < d; ++j)
        c.e[i * d + j] = static_cast<std::uint8_t>((c.e[i * d + j] + aik * b.e[k * d + j]) % p);
    }
  return c;
}

FpMat mat_add(const FpMat& a, const FpMat& b) {
  FpMat c = a;
  const int nn = a.dim * a.dim;
  for (int i = 0; i < nn; ++i) c.e[i] = static_cast<std::uint8_t>(add_mod(a.e[i], b.e[i], a.mod));
  return c;
}

FpMat mat_sub(const FpMat& a, const FpMat& b) {
  FpMat c = a;
  const int nn = a.dim * a.dim;
  for (int i = 0; i < nn; ++i) c.e[i] = static_cast<std::uint8_t>(sub_mod(a.e[i], b.e[i], a.mod));
  return c;
}

FpVec mat_vec(const FpMat& m, const FpVec& v) {
  const int d = m.dim, p = m.mod;
  FpVec r = FpVec::zero(p, d);
  for (int i = 0; i < d; ++i) {
    int acc = 0;
    for (int j = 0; j < d; ++j) acc += m.e[i * d + j] * v.e[j];
    r.e[i] = static_cast<std::uint8_t>(acc % p);
  }
  return r;
}

FpMat mat_pow(const FpMat& a, i64 e) {
  FpMat base = e < 0 ? mat_inv(a) : a;
  u64 k = e < 0 ? static_cast<u64>(-e) : static_cast<u64>(e);
  FpMat r = FpMat::identity(a.mod, a.dim);
  while (k) {
    if (k & 1) r = mat_mul(r, base);
    base = mat_mul(base, base);
    k >>= 1;
  }
  return r;
}

namespace {

// Gauss-Jordan over F_p; returns false when a is singular.
bool invert(const FpMat& a, FpMat& out) {
  const int d = a.dim, p = a.mod;
  FpMat w = a;
  out = FpMat::identity(p, d);
  for (int col = 0; col < d; ++col) {
    int pivot = -1;
    for (int r = col; r < d; ++r)
      if (w.e[r * d + col]) { pivot = r; break; }
    if (pivot < 0) return false;
    if (pivot != col) {
      for (int j = 0; j < d; ++j) {
        std::swap(w.e[pivot * d + j], w.e[col * d + j]);
        std::swap(out.e[pivot * d + j], out.e[col * d + j]);
      }
    }
    int inv = inv_mod(w.e[col * d + col], p);
    for (int j = 0; j < d; ++j) {
      w.e[col * d + j] = static_cast<std::uint8_t>(mul_mod(w.e[col * d + j], inv, p));
      out.e[col * d + j] = static_cast<std::uint8_t>(mul_mod(out.e[col * d + j], inv, p));
    }
    for (int r = 0; r < d; ++r) {
      if (r == col) continue;
      int f = w.e[r * d + col];
      if (!f) continue;
      for (int j = 0; j < d; ++j) {
        w.e[r * d + j] = static_cast<std::uint8_t>(sub_mod(w.e[r * d + j], mul_mod(f, w.e[col * d + j], p), p));
        out.e[r * d + j] = static_cast<std::uint8_t>(sub_mod(out.e[r * d + j], mul_mod(f, out.e[col * d + j], p), p));
      }
    }
  }
  return true;
}

}  // namespace

FpMat mat_inv(const FpMat& a) {
  FpMat out;
  if (!invert(a, out)) throw Error(Errc::Singular, "matrix not invertible");
  return out;
}

bool mat_invertible(const FpMat& a) {
  FpMat out;
  return invert(a, out);
}

FpMat bracket_power(const FpMat& a, i64 k) {
  FpMat sum = FpMat::zero(a.mod, a.dim);
  FpMat pw = FpMat::identity(a.mod, a.dim);
  for (i64 i = 0; i < k; ++i) {
    sum = mat_add(sum, pw);
    pw = mat_mul(pw, a);
  }
  return sum;
}

i64 order_of(const FpMat& a) {
  if (a.dim != a.mod)
    throw Error(Errc::Unsupported, "order_of expects a p x p matrix over F_p");
  if (!mat_invertible(a)) throw Error(Errc::Singular, "order_of of singular matrix");
  const int p = a.mod;
  // |GL_p(F_p)| = p^{p(p-1)/2} * prod_{k=1..p} (p^k - 1), factored piecewise.
  std::vector<std::pair<i64, int>> fac;
  fac.emplace_back(p, p * (p - 1) / 2);
  i64 pk = 1;
  for (int k = 1; k <= p; ++k) {
    pk *= p;
    for (auto [r, m] : factorize(pk - 1)) {
      bool found = false;
      for (auto& f : fac)
        if (f.first == r) { f.second += m; found = true; break; }
      if (!found) fac.emplace_back(r, m);
    }
  }
  i64 ord = 1;
  for (auto [r, m] : fac) for (int i = 0; i < m; ++i) ord *= r;
  for (auto [r, m] : fac) {
    (void)m;
    while (ord % r == 0 && mat_pow(a, ord / r).is_identity()) ord /= r;
  }
  return ord;
}

std::vector<int> minimal_polynomial(const FpMat& a) {
  const int d = a.dim, p = a.mod;
  const int nn = d * d;
  // Rows: flattened powers of a; track the combination that reduced each row.
  std::vector<std::vector<int>> basis;        // reduced rows (length nn)
  std::vector<std::vector<int>> combo;        // coefficients over original powers
  std::vector<int> lead;                      // leading column of each basis row
  FpMat pw = FpMat::identity(p, d);
  for (int deg = 0;; ++deg) {
    std::vector<int> row(nn), cf(deg + 1, 0);
    for (int i = 0; i < nn; ++i) row[i] = pw.e[i];
    cf[deg] = 1;
    // Reduce against current basis.
    for (size_t b = 0; b < basis.size(); ++b) {
      int f = row[lead[b]];
      if (!f) continue;
      for (int i = 0; i < nn; ++i) row[i] = sub_mod(row[i], mul_mod(f, basis[b][i], p), p);
      for (size_t i = 0; i < combo[b].size() && i < cf.size(); ++i)
        cf[i] = sub_mod(cf[i], mul_mod(f, combo[b][i], p), p);
    }
    int l = -1;
    for (int i = 0; i < nn; ++i)
      if (row[i]) { l = i; break; }
    if (l < 0) {
      // a^deg is dependent: cf gives the monic minimal polynomial.
      return cf;
    }
    int inv = inv_mod(row[l], p);
    for (int i = 0; i < nn; ++i) row[i] = mul_mod(row[i], inv, p);
    for (auto& c : cf) c = mul_mod(c, inv, p);
    basis.push_back(std::move(row));
    combo.push_back(std::move(cf));
    lead.push_back(l);
    pw = mat_mul(pw, a);
  }
}

namespace {

// Remainder of monic-divisor polynomial division over F_p.
std::vector<int> poly_rem(std::vector<int> num, const std::vector<int>& den, int p) {
  const int dd = static_cast<int>(den.size()) - 1;
  for (int i = static_cast<int>(num.size()) - 1; i >= dd; --i) {
    int f = num[i];
    if (!f) continue;
    for (int j = 0; j <= dd; ++j)
      num[i - dd + j] = sub_mod(num[i - dd + j], mul_mod(f, den[j], p), p);
  }
  num.resize(dd);
  return num;
}

}  // namespace

bool poly_irreducible(const std::vector<int>& coeffs, int p) {
  const int deg = static_cast<int>(coeffs.size()) - 1;
  if (deg <= 0) return false;
  if (deg == 1) return true;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (int d = 1; 2 * d <= deg; ++d) {
    i64 count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (i64 t = 0; t < count; ++t) {
      std::vector<int> div(d + 1);
      i64 v = t;
      for (int i = 0; i < d; ++i) { div[i] = static_cast<int>(v % p); v /= p; }
      div[d] = 1;
      std::vector<int> rem = poly_rem(coeffs, div, p);
      bool zero = true;
      for (int c : rem)
        if (c) { zero = false; break; }
      if (zero) return false;
    }
  }
  return true;
}

int mat_rank(const FpMat& a) {
  const int d = a.dim, p = a.mod;
  FpMat w = a;
  int rank = 0;
  for (int col = 0; col < d && rank < d; ++col) {
    int pivot = -1;
    for (int r = rank; r < d; ++r)
      if (w.e[r * d + col]) { pivot = r; break; }
    if (pivot < 0) continue;
    for (int j = 0; j < d; ++j) std::swap(w.e[pivot * d + j], w.e[rank * d + j]);
    int inv = inv_mod(w.e[rank * d + col], p);
    for (int j = 0; j < d; ++j) w.e[rank * d + j] = static_cast<std::uint8_t>(mul_mod(w.e[rank * d + j], inv, p));
    for (int r = 0; r < d; ++r) {
      if (r == rank) continue;
      int f = w.e[r * d + col];
      if (!f) continue;
      for (int j = 0; j < d; ++j)
        w.e[r * d + j] = static_cast<std::uint8_t>(sub_mod(w.e[r * d + j], mul_mod(f, w.e[rank * d + j], p), p));
    }
    ++rank;
  }
  return rank;
}

std::pair<u64, u64> mat_key(const FpMat& a) {
  u64 lo = 0, hi = 0;
  const int nn = a.dim * a.dim;
  for (int i = 0; i < nn; ++i) {
    u64 bits = a.e[i];
    int pos = 3 * i;
    if (pos < 64) {
      lo |= bits << pos;
      if (pos > 61) hi |= bits >> (64 - pos);
    } else {
      hi |= bits << (pos - 64);
    }
  }
  hi = hi * 0x1000003 + a.dim;
  return {lo, hi};
}

std::string mat_to_string(const FpMat& m) {
  std::ostringstream os;
  os << '[';
  for (int r = 0; r < m.dim; ++r) {
    if (r) os << ',';
    os << '[';
    for (int c = 0; c < m.dim; ++c) {
      if (c) os << ',';
      os << m.at(r, c);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace sbforge
