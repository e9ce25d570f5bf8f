#pragma once

// The explicit machinery of the construction: generators X, Y_v, Z and their
// starred counterparts, the closed form for Z^k, the normal form X^i Y_u Z^k
// for elements of the regular subgroup G, and the kappa/pi bookkeeping that
// converts between N and normal forms.

#include <memory>
#include <string>

#include "sbforge/brace.hpp"
#include "sbforge/holo.hpp"

namespace sbforge {

struct GNormalForm {
  int i = 0;   // exponent of X, mod q
  FpVec u;     // member of V_0 (last coordinate zero)
  int k = 0;   // exponent of Z, in [0, p)
  friend bool operator==(const GNormalForm& a, const GNormalForm& b) {
    return a.i == b.i && a.u == b.u && a.k == b.k;
  }
};

struct KappaDecomposition {
  int kappa = 0;        // last coordinate of v
  int kappa_tilde = 0;  // its integer lift in [0, p)
  FpVec pi;             // v - J^{[kappa_tilde]} e_p, in V_0
};

class Construct {
 public:
  explicit Construct(std::shared_ptr<const Holo> holo);

  const Holo& holo() const { return *h_; }
  std::shared_ptr<const Holo> holo_ptr() const { return h_; }

  HolElem gen_X() const;
  HolElem gen_Y(const FpVec& v) const;
  HolElem gen_Z() const;
  HolElem gen_X_star() const;
  HolElem gen_Y_star(const FpVec& u) const;
  HolElem gen_Z_star() const;

  // Z^k = [(I, J^{[k]} e_p), conj(J^k, -J^{[k]} e_p)].
  HolElem z_power_closed_form(i64 k) const;

  // All generator relations, the commutator identities, the Z^k closed form
  // for 0 <= k <= p^2, the order of Z, and the starred relations.
  CheckReport check_relations() const;

  KappaDecomposition kappa_decompose(const FpVec& v) const;

  GNormalForm g_of_eta(const NElem& eta) const;
  NElem eta_of_g(const GNormalForm& f) const;
  // The hol element X^i Y_u Z^k itself.
  HolElem hol_of_g(const GNormalForm& f) const;

  // Product of normal forms with the eager Z^p -> Y_{e_1} rewrite.
  GNormalForm gform_mul(const GNormalForm& a, const GNormalForm& b) const;

  std::string gform_to_string(const GNormalForm& f) const;

  // eta -> alpha_eta for G = <X, Y_{e_{p-1}}, Z>, checked against the closure
  // of the generators (ClosureMismatch on disagreement).
  RegularSubgroupMap build_G() const;
  // The star image, checked against the closure of the starred generators.
  RegularSubgroupMap build_G_star() const;

  // g_{alpha(eta)} by the closed formula, for alpha = conj((A, w)).
  GNormalForm alpha_image(const AutNElem& a, const NElem& eta) const;
  // g_{alpha(eta)^{-1}} by the closed formula.
  GNormalForm phi_image(const AutNElem& a, const NElem& eta) const;

  const FpMat& j_bracket(i64 k) const { return jbr_[k]; }
  const FpVec& e_p() const { return ep_; }

 private:
  std::shared_ptr<const Holo> h_;
  std::vector<FpMat> jbr_;   // J^{[k]} for 0 <= k <= p^2
  std::vector<FpMat> jpow_;  // J^k for 0 <= k <= p
  FpVec ep_;
};

}  // namespace sbforge
