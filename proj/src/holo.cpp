#include "sbforge/holo.hpp"

#include <algorithm>
#include <unordered_set>

#include "sbforge/error.hpp"

namespace sbforge {

Holo::Holo(Frame frame) : frame_(std::move(frame)) {
  p_ = frame_.pair.p;
  q_ = frame_.pair.q;
  n_ = frame_.pair.n;
  ppow_ = n_ / q_;
  tord_ = ppow_ - 1;

  Mpow_.resize(q_);
  Mpow_[0] = FpMat::identity(p_, p_);
  for (int k = 1; k < q_; ++k) Mpow_[k] = mat_mul(Mpow_[k - 1], frame_.M);

  std::vector<FpMat> jpow(p_);
  jpow[0] = FpMat::identity(p_, p_);
  for (int j = 1; j < p_; ++j) jpow[j] = mat_mul(jpow[j - 1], frame_.J);

  norm_mats_.resize(tord_ * p_);
  dlog_.reserve(tord_ * p_ * 2);
  FpMat ti = FpMat::identity(p_, p_);
  for (i64 i = 0; i < tord_; ++i) {
    for (int j = 0; j < p_; ++j) {
      FpMat a = mat_mul(ti, jpow[j]);
      norm_mats_[i * p_ + j] = a;
      dlog_.emplace(mat_key(a), std::make_pair(static_cast<int>(i), j));
    }
    ti = mat_mul(ti, frame_.T);
  }

  dl_ = decompose_normalizer(frame_.M).first;

  pjq_.resize(p_);
  for (int j = 0; j < p_; ++j) pjq_[j] = static_cast<int>(pow_mod(p_, j, q_));
}

NElem Holo::n_identity() const { return {0, FpVec::zero(p_, p_)}; }

NElem Holo::n_mul(const NElem& a, const NElem& b) const {
  return {add_mod(a.k, b.k, q_), vec_add(a.v, mat_vec(Mpow_[a.k], b.v))};
}

NElem Holo::n_inv(const NElem& a) const {
  int k = neg_mod(a.k, q_);
  return {k, vec_neg(mat_vec(Mpow_[k], a.v))};
}

FpMat Holo::n_block(const NElem& a) const {
  FpMat b = FpMat::zero(p_, p_ + 1);
  const FpMat& mk = Mpow_[a.k];
  for (int r = 0; r < p_; ++r) {
    for (int c = 0; c < p_; ++c) b.set(r, c, mk.at(r, c));
    b.set(r, p_, a.v.at(r));
  }
  b.set(p_, p_, 1);
  return b;
}

i64 Holo::n_index(const NElem& a) const { return static_cast<i64>(a.k) * ppow_ + a.v.index(); }

NElem Holo::n_from_index(i64 idx) const {
  return {static_cast<int>(idx / ppow_), FpVec::from_index(p_, p_, idx % ppow_)};
}

AutNElem Holo::aut_identity() const { return {0, 0, FpVec::zero(p_, p_)}; }

const FpMat& Holo::aut_matrix(const AutNElem& a) const { return norm_mats_[static_cast<i64>(a.i) * p_ + a.j]; }

FpMat Holo::aut_block(const AutNElem& a) const {
  FpMat b = FpMat::zero(p_, p_ + 1);
  const FpMat& m = aut_matrix(a);
  for (int r = 0; r < p_; ++r) {
    for (int c = 0; c < p_; ++c) b.set(r, c, m.at(r, c));
    b.set(r, p_, a.w.at(r));
  }
  b.set(p_, p_, 1);
  return b;
}

NElem Holo::aut_apply(const AutNElem& a, const NElem& x) const {
  int kk = static_cast<int>(static_cast<i64>(x.k) * pjq_[a.j] % q_);
  FpVec v = mat_vec(aut_matrix(a), x.v);
  if (!a.w.is_zero()) v = vec_add(v, vec_sub(a.w, mat_vec(Mpow_[kk], a.w)));
  return {kk, v};
}

AutNElem Holo::aut_compose(const AutNElem& a, const AutNElem& b) const {
  FpMat prod = mat_mul(aut_matrix(a), aut_matrix(b));
  auto [i, j] = decompose_normalizer(prod);
  return {i, j, vec_add(mat_vec(aut_matrix(a), b.w), a.w)};
}

AutNElem Holo::aut_inv(const AutNElem& a) const {
  FpMat inv = mat_inv(aut_matrix(a));
  auto [i, j] = decompose_normalizer(inv);
  return {i, j, vec_neg(mat_vec(inv, a.w))};
}

i64 Holo::aut_index(const AutNElem& a) const {
  return (static_cast<i64>(a.i) * p_ + a.j) * ppow_ + a.w.index();
}

AutNElem Holo::aut_from_index(i64 idx) const {
  FpVec w = FpVec::from_index(p_, p_, idx % ppow_);
  idx /= ppow_;
  return {static_cast<int>(idx / p_), static_cast<int>(idx % p_), w};
}

std::vector<AutNElem> Holo::aut_enumerate() const {
  std::vector<AutNElem> out;
  out.reserve(aut_count());
  for (i64 idx = 0; idx < aut_count(); ++idx) out.push_back(aut_from_index(idx));
  return out;
}

AutNElem Holo::conj_of_eta(const NElem& eta) const {
  return {static_cast<int>(static_cast<i64>(eta.k) * dl_ % tord_), 0, eta.v};
}

std::pair<int, int> Holo::decompose_normalizer(const FpMat& a) const {
  auto it = dlog_.find(mat_key(a));
  if (it == dlog_.end()) throw Error(Errc::NotInNormalizer, "matrix not of the form T^i J^j");
  return it->second;
}

AutNElem Holo::aut_from_matrix(const FpMat& a, const FpVec& w) const {
  auto [i, j] = decompose_normalizer(a);
  return {i, j, w};
}

i64 Holo::aut_order(const AutNElem& a, i64 cap) const {
  AutNElem x = a;
  const AutNElem id = aut_identity();
  for (i64 ord = 1; ord <= cap; ++ord) {
    if (x == id) return ord;
    x = aut_compose(x, a);
  }
  return 0;
}

HolElem Holo::hol_identity() const { return {n_identity(), aut_identity()}; }

HolElem Holo::hol_mul(const HolElem& g, const HolElem& h) const {
  return {n_mul(g.eta, aut_apply(g.alpha, h.eta)), aut_compose(g.alpha, h.alpha)};
}

HolElem Holo::hol_inv(const HolElem& g) const {
  AutNElem b = aut_inv(g.alpha);
  return {aut_apply(b, n_inv(g.eta)), b};
}

NElem Holo::hol_apply(const HolElem& g, const NElem& x) const {
  return n_mul(g.eta, aut_apply(g.alpha, x));
}

i64 Holo::hol_index(const HolElem& g) const { return n_index(g.eta) * aut_count() + aut_index(g.alpha); }

HolElem Holo::hol_from_index(i64 idx) const {
  return {n_from_index(idx / aut_count()), aut_from_index(idx % aut_count())};
}

i64 Holo::hol_order(const HolElem& g, i64 cap) const {
  HolElem x = g;
  const HolElem id = hol_identity();
  for (i64 ord = 1; ord <= cap; ++ord) {
    if (x == id) return ord;
    x = hol_mul(x, g);
  }
  return 0;
}

HolElem Holo::star(const HolElem& g) const {
  return {n_inv(g.eta), aut_compose(conj_of_eta(g.eta), g.alpha)};
}

HolElem Holo::conj_by_aut(const AutNElem& a, const HolElem& g) const {
  return {aut_apply(a, g.eta), aut_compose(aut_compose(a, g.alpha), aut_inv(a))};
}

std::vector<HolElem> Holo::subgroup_closure(const std::vector<HolElem>& gens, i64 bound) const {
  std::vector<HolElem> side = gens;
  for (const HolElem& g : gens) side.push_back(hol_inv(g));
  std::unordered_set<u64> seen;
  std::vector<HolElem> out;
  std::vector<HolElem> queue;
  HolElem id = hol_identity();
  seen.insert(static_cast<u64>(hol_index(id)));
  out.push_back(id);
  queue.push_back(id);
  while (!queue.empty()) {
    HolElem g = queue.back();
    queue.pop_back();
    for (const HolElem& s : side) {
      HolElem h = hol_mul(g, s);
      u64 key = static_cast<u64>(hol_index(h));
      if (seen.insert(key).second) {
        if (static_cast<i64>(out.size()) + 1 > bound)
          throw Error(Errc::BoundExceeded, "closure exceeds bound " + std::to_string(bound));
        out.push_back(h);
        queue.push_back(h);
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [this](const HolElem& a, const HolElem& b) { return hol_index(a) < hol_index(b); });
  return out;
}

bool Holo::is_regular(const std::vector<HolElem>& g) const {
  if (static_cast<i64>(g.size()) != n_) return false;
  std::vector<bool> hit(n_, false);
  for (const HolElem& e : g) {
    i64 idx = n_index(e.eta);
    if (hit[idx]) return false;
    hit[idx] = true;
  }
  return true;
}

bool Holo::acts_freely(const std::vector<HolElem>& g) const {
  const HolElem id = hol_identity();
  for (const HolElem& e : g) {
    if (e == id) continue;
    for (i64 x = 0; x < n_; ++x) {
      NElem pt = n_from_index(x);
      if (hol_apply(e, pt) == pt) return false;
    }
  }
  return true;
}

std::vector<HolElem> RegularSubgroupMap::image(const Holo& h) const {
  std::vector<HolElem> out;
  out.reserve(alpha.size());
  for (i64 idx = 0; idx < static_cast<i64>(alpha.size()); ++idx) out.push_back(elem(h, idx));
  return out;
}

RegularSubgroupMap left_regular_map(const Holo& h) {
  RegularSubgroupMap g;
  g.alpha.assign(h.n(), h.aut_identity());
  return g;
}

RegularSubgroupMap map_from_subgroup(const Holo& h, const std::vector<HolElem>& g) {
  if (static_cast<i64>(g.size()) != h.n())
    throw Error(Errc::NotRegular, "subgroup size " + std::to_string(g.size()) + " != n");
  RegularSubgroupMap out;
  out.alpha.assign(h.n(), h.aut_identity());
  std::vector<bool> hit(h.n(), false);
  for (const HolElem& e : g) {
    i64 idx = h.n_index(e.eta);
    if (hit[idx]) throw Error(Errc::NotRegular, "repeated first component");
    hit[idx] = true;
    out.alpha[idx] = e.alpha;
  }
  return out;
}

}  // namespace sbforge
