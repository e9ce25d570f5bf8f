#include "sbforge/construct.hpp"

#include <algorithm>

#include "sbforge/error.hpp"

namespace sbforge {

Construct::Construct(std::shared_ptr<const Holo> holo) : h_(std::move(holo)) {
  const int p = h_->p();
  const FpMat& J = h_->frame().J;
  jbr_.resize(p * p + 2);
  for (i64 k = 0; k <= p * p + 1; ++k) jbr_[k] = bracket_power(J, k);
  jpow_.resize(p + 1);
  jpow_[0] = FpMat::identity(p, p);
  for (int k = 1; k <= p; ++k) jpow_[k] = mat_mul(jpow_[k - 1], J);
  ep_ = FpVec::unit(p, p, p);
}

HolElem Construct::gen_X() const { return {{1, FpVec::zero(h_->p(), h_->p())}, h_->aut_identity()}; }

HolElem Construct::gen_Y(const FpVec& v) const { return {{0, v}, {0, 0, vec_neg(v)}}; }

HolElem Construct::gen_Z() const { return {{0, ep_}, {0, 1, vec_neg(ep_)}}; }

HolElem Construct::gen_X_star() const {
  int i = static_cast<int>((h_->t_order() - h_->m_dlog()) % h_->t_order());
  return {{1, FpVec::zero(h_->p(), h_->p())}, {i, 0, FpVec::zero(h_->p(), h_->p())}};
}

HolElem Construct::gen_Y_star(const FpVec& u) const { return {{0, u}, h_->aut_identity()}; }

HolElem Construct::gen_Z_star() const {
  const int p = h_->p();
  FpVec jinv_ep = mat_vec(mat_inv(h_->frame().J), ep_);
  return {{0, jinv_ep}, {0, p - 1, FpVec::zero(p, p)}};
}

HolElem Construct::z_power_closed_form(i64 k) const {
  const int p = h_->p();
  FpVec t = mat_vec(jbr_[k], ep_);
  return {{0, t}, {0, static_cast<int>(k % p), vec_neg(t)}};
}

KappaDecomposition Construct::kappa_decompose(const FpVec& v) const {
  const int p = h_->p();
  KappaDecomposition d;
  d.kappa = v.at(p - 1);
  d.kappa_tilde = d.kappa;
  d.pi = vec_sub(v, mat_vec(jbr_[d.kappa_tilde], ep_));
  if (d.pi.at(p - 1) != 0)
    throw Error(Errc::InternalSearchExhausted, "pi(v) left V_0");
  return d;
}

GNormalForm Construct::g_of_eta(const NElem& eta) const {
  const int q = h_->q();
  FpVec v = mat_vec(h_->m_pow(neg_mod(eta.k, q)), eta.v);
  KappaDecomposition d = kappa_decompose(v);
  return {eta.k, d.pi, d.kappa_tilde};
}

NElem Construct::eta_of_g(const GNormalForm& f) const {
  FpVec v = vec_add(f.u, mat_vec(jbr_[f.k], ep_));
  int k = norm_mod(f.i, h_->q());
  return {k, mat_vec(h_->m_pow(k), v)};
}

HolElem Construct::hol_of_g(const GNormalForm& f) const {
  FpVec v = vec_add(f.u, mat_vec(jbr_[f.k], ep_));
  NElem eta{norm_mod(f.i, h_->q()), mat_vec(h_->m_pow(norm_mod(f.i, h_->q())), v)};
  return {eta, {0, f.k, vec_neg(v)}};
}

GNormalForm Construct::gform_mul(const GNormalForm& a, const GNormalForm& b) const {
  const int p = h_->p(), q = h_->q();
  int i = static_cast<int>((a.i + static_cast<i64>(b.i) * h_->p_pow_mod_q(a.k)) % q);
  FpVec u = vec_add(a.u, mat_vec(jpow_[a.k], b.u));
  int k = a.k + b.k;
  if (k >= p) {
    u = vec_add(u, FpVec::unit(p, p, 1));
    k -= p;
  }
  return {i, u, k};
}

std::string Construct::gform_to_string(const GNormalForm& f) const {
  return "X^" + std::to_string(norm_mod(f.i, h_->q())) + " Y_" + vec_to_string(f.u) + " Z^" +
         std::to_string(f.k);
}

RegularSubgroupMap Construct::build_G() const {
  const i64 n = h_->n();
  RegularSubgroupMap g;
  g.alpha.resize(n);
  for (i64 idx = 0; idx < n; ++idx) {
    NElem eta = h_->n_from_index(idx);
    GNormalForm f = g_of_eta(eta);
    FpVec v = vec_add(f.u, mat_vec(jbr_[f.k], ep_));
    g.alpha[idx] = {0, f.k, vec_neg(v)};
  }
  // Cross-check the formula path against plain closure of the generators.
  const int p = h_->p();
  std::vector<HolElem> gens{gen_X(), gen_Y(FpVec::unit(p, p, p - 1)), gen_Z()};
  std::vector<HolElem> cl = h_->subgroup_closure(gens, n);
  std::vector<HolElem> im = g.image(*h_);
  std::sort(im.begin(), im.end(),
            [this](const HolElem& a, const HolElem& b) { return h_->hol_index(a) < h_->hol_index(b); });
  if (cl.size() != im.size() || !std::equal(cl.begin(), cl.end(), im.begin()))
    throw Error(Errc::ClosureMismatch, "formula path for G disagrees with generator closure");
  return g;
}

RegularSubgroupMap Construct::build_G_star() const {
  RegularSubgroupMap gs = opposite_regular(*h_, build_G());
  const int p = h_->p();
  std::vector<HolElem> gens{gen_X_star(), gen_Y_star(FpVec::unit(p, p, p - 1)), gen_Z_star()};
  std::vector<HolElem> cl = h_->subgroup_closure(gens, h_->n());
  std::vector<HolElem> im = gs.image(*h_);
  std::sort(im.begin(), im.end(),
            [this](const HolElem& a, const HolElem& b) { return h_->hol_index(a) < h_->hol_index(b); });
  if (cl.size() != im.size() || !std::equal(cl.begin(), cl.end(), im.begin()))
    throw Error(Errc::ClosureMismatch, "star of G disagrees with the starred generator closure");
  return gs;
}

GNormalForm Construct::alpha_image(const AutNElem& a, const NElem& eta) const {
  const int q = h_->q();
  GNormalForm f = g_of_eta(eta);
  int s = h_->p_pow_mod_q(a.j);
  int is = static_cast<int>(static_cast<i64>(norm_mod(f.i, q)) * s % q);
  FpVec arg = vec_add(f.u, mat_vec(jbr_[f.k], ep_));
  FpVec v = mat_vec(h_->aut_matrix(a), arg);
  if (!a.w.is_zero())
    v = vec_add(v, vec_sub(mat_vec(h_->m_pow(neg_mod(is, q)), a.w), a.w));
  KappaDecomposition d = kappa_decompose(v);
  return {is, d.pi, d.kappa_tilde};
}

GNormalForm Construct::phi_image(const AutNElem& a, const NElem& eta) const {
  const int q = h_->q();
  GNormalForm f = g_of_eta(eta);
  int s = h_->p_pow_mod_q(a.j);
  int is = static_cast<int>(static_cast<i64>(norm_mod(f.i, q)) * s % q);
  FpVec arg = mat_vec(h_->m_pow(norm_mod(f.i, q)), vec_add(f.u, mat_vec(jbr_[f.k], ep_)));
  FpVec y = vec_neg(mat_vec(h_->aut_matrix(a), arg));
  if (!a.w.is_zero())
    y = vec_add(y, vec_sub(mat_vec(h_->m_pow(is), a.w), a.w));
  KappaDecomposition d = kappa_decompose(y);
  return {neg_mod(is, q), d.pi, d.kappa_tilde};
}

CheckReport Construct::check_relations() const {
  CheckReport rep;
  const int p = h_->p(), q = h_->q();
  const HolElem id = h_->hol_identity();
  const FpMat& J = h_->frame().J;
  HolElem X = gen_X(), Z = gen_Z();

  auto hol_pow = [&](const HolElem& g, i64 e) {
    HolElem r = id;
    for (i64 i = 0; i < e; ++i) r = h_->hol_mul(r, g);
    return r;
  };

  {
    CheckItem it{"rel_i_Xq", hol_pow(X, q) == id, ""};
    rep.items.push_back(it);
  }
  {
    CheckItem it{"rel_ii_Zp_is_Ye1", hol_pow(Z, p) == gen_Y(FpVec::unit(p, p, 1)), ""};
    rep.items.push_back(it);
  }
  {
    CheckItem it{"rel_iii_ZX", h_->hol_mul(Z, X) == h_->hol_mul(hol_pow(X, p), Z), ""};
    rep.items.push_back(it);
  }
  {
    CheckItem it{"rel_iv_YX_commute", true, ""};
    for (int i = 1; i <= p; ++i) {
      HolElem y = gen_Y(FpVec::unit(p, p, i));
      if (!(h_->hol_mul(y, X) == h_->hol_mul(X, y))) {
        it.pass = false;
        it.detail = "fails at e_" + std::to_string(i);
        break;
      }
    }
    rep.items.push_back(it);
  }
  {
    CheckItem it{"rel_v_Y_additive", true, ""};
    for (int i = 1; i <= p && it.pass; ++i)
      for (int j = 1; j <= p; ++j) {
        FpVec vi = FpVec::unit(p, p, i), vj = FpVec::unit(p, p, j);
        if (!(h_->hol_mul(gen_Y(vi), gen_Y(vj)) == gen_Y(vec_add(vi, vj)))) {
          it.pass = false;
          it.detail = "fails at (e_" + std::to_string(i) + ", e_" + std::to_string(j) + ")";
          break;
        }
      }
    rep.items.push_back(it);
  }
  {
    CheckItem it{"rel_vi_ZY", true, ""};
    for (int i = 1; i <= p; ++i) {
      FpVec v = FpVec::unit(p, p, i);
      if (!(h_->hol_mul(Z, gen_Y(v)) == h_->hol_mul(gen_Y(mat_vec(J, v)), Z))) {
        it.pass = false;
        it.detail = "fails at e_" + std::to_string(i);
        break;
      }
    }
    rep.items.push_back(it);
  }
  {
    // Z Y_v Z^{-1} Y_v^{-1} = Y_{Jv - v}, specialised to Y_{e_{i-1}} on e_i.
    CheckItem it{"commutator", true, ""};
    HolElem zinv = h_->hol_inv(Z);
    for (i64 vidx = 0; vidx < h_->p_pow_p() && it.pass; ++vidx) {
      FpVec v = FpVec::from_index(p, p, vidx);
      HolElem y = gen_Y(v);
      HolElem lhs = h_->hol_mul(h_->hol_mul(h_->hol_mul(Z, y), zinv), h_->hol_inv(y));
      if (!(lhs == gen_Y(vec_sub(mat_vec(J, v), v)))) {
        it.pass = false;
        it.detail = "fails at v = " + vec_to_string(v);
      }
    }
    for (int i = 2; i <= p && it.pass; ++i) {
      HolElem y = gen_Y(FpVec::unit(p, p, i));
      HolElem lhs = h_->hol_mul(h_->hol_mul(h_->hol_mul(Z, y), zinv), h_->hol_inv(y));
      if (!(lhs == gen_Y(FpVec::unit(p, p, i - 1)))) {
        it.pass = false;
        it.detail = "fails at e_" + std::to_string(i);
      }
    }
    rep.items.push_back(it);
  }
  {
    CheckItem it{"zk_closed_form", true, ""};
    HolElem acc = id;
    for (i64 k = 0; k <= static_cast<i64>(p) * p; ++k) {
      if (!(z_power_closed_form(k) == acc)) {
        it.pass = false;
        it.detail = "fails at k = " + std::to_string(k);
        break;
      }
      acc = h_->hol_mul(acc, Z);
    }
    rep.items.push_back(it);
  }
  {
    CheckItem it{"z_order_p2", h_->hol_order(Z, static_cast<i64>(p) * p) == static_cast<i64>(p) * p, ""};
    rep.items.push_back(it);
  }

  // Starred relations.
  HolElem Xs = gen_X_star(), Zs = gen_Z_star();
  {
    CheckItem it{"star_Xq", hol_pow(Xs, q) == id, ""};
    rep.items.push_back(it);
  }
  {
    CheckItem it{"star_Zp_is_Ye1", hol_pow(Zs, p) == gen_Y_star(FpVec::unit(p, p, 1)), ""};
    rep.items.push_back(it);
  }
  {
    CheckItem it{"star_XZ", h_->hol_mul(Xs, Zs) == h_->hol_mul(Zs, hol_pow(Xs, p)), ""};
    rep.items.push_back(it);
  }
  {
    CheckItem it{"star_XY_commute", true, ""};
    for (int i = 1; i <= p; ++i) {
      HolElem y = gen_Y_star(FpVec::unit(p, p, i));
      if (!(h_->hol_mul(Xs, y) == h_->hol_mul(y, Xs))) {
        it.pass = false;
        it.detail = "fails at e_" + std::to_string(i);
        break;
      }
    }
    rep.items.push_back(it);
  }
  {
    CheckItem it{"star_Y_additive", true, ""};
    for (int i = 1; i <= p && it.pass; ++i)
      for (int j = 1; j <= p; ++j) {
        FpVec vi = FpVec::unit(p, p, i), vj = FpVec::unit(p, p, j);
        if (!(h_->hol_mul(gen_Y_star(vi), gen_Y_star(vj)) == gen_Y_star(vec_add(vi, vj)))) {
          it.pass = false;
          it.detail = "fails at (e_" + std::to_string(i) + ", e_" + std::to_string(j) + ")";
          break;
        }
      }
    rep.items.push_back(it);
  }
  {
    CheckItem it{"star_YZ", true, ""};
    for (int i = 1; i <= p; ++i) {
      FpVec v = FpVec::unit(p, p, i);
      if (!(h_->hol_mul(gen_Y_star(v), Zs) == h_->hol_mul(Zs, gen_Y_star(mat_vec(J, v))))) {
        it.pass = false;
        it.detail = "fails at e_" + std::to_string(i);
        break;
      }
    }
    rep.items.push_back(it);
  }

  return rep;
}

}  // namespace sbforge
