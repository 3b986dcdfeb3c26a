#pragma once
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "motivic/ring.hpp"

namespace motivic {

// The exterior quotient E(n)^v = M[tau_0..tau_n]/J as a Hopf algebroid over the
// coefficient ring, together with its dual E(n) on Q_0..Q_n. Basis elements of
// E(n)^v are square-free tau-monomials indexed by bit masks K.
//
// Elements are kept in "right form": sum_K e_K * eta_R(c_K). Comodules store
// alpha(x) = sum_K e_K (x) theta_K(x) with all coefficients pushed into the
// module, and theta_K is the action of the dual basis element Q_K.
class ExteriorPair {
 public:
  ExteriorPair(const CoefficientRing& ring, int n);

  const CoefficientRing& ring() const { return ring_; }
  int p() const { return ring_.p(); }
  int n() const { return n_; }
  int size() const { return 1 << (n_ + 1); }
  Deg tau_degree(int i) const;
  Deg degree(int K) const;
  static int popcount(int K) { return __builtin_popcount(static_cast<unsigned>(K)); }
  std::string mask_name(int K, bool dual = false) const;

  // e_K e_L = coef * e_M; coef empty when the product vanishes
  struct Prod {
    int mask = 0;
    RingElem coef;
  };
  Prod product(int K, int L) const;
  // sign of e_K e_L = sign e_{K|L} for disjoint masks (shuffle sign)
  int shuffle_sign(int K, int L) const;

  using Elem = std::vector<RingElem>;  // right-form element, one coefficient per mask
  Elem zero() const { return Elem(size()); }
  Elem mul(const Elem& a, const Elem& b) const;
  // eta_L(a) in right form
  Elem eta_left(const Mono& a) const;
  bool primitive(const Mono& a) const;
  // true when some coefficient generator is not primitive
  bool twisted() const { return twist_gen_ >= 0; }
  int twist_generator() const { return twist_gen_; }

  // theta_L(a y) = sum coef * theta_K(y) over the returned (L, K, coef)
  struct TwistTerm {
    int L, K;
    RingElem coef;
  };
  const std::vector<TwistTerm>& twist(const Mono& a) const;

  // coproduct of e_J computed multiplicatively from primitive tau_i:
  // Delta(e_J) = sum coef e_K (x) e_L
  struct CoTerm {
    int K, L;
    RingElem coef;
  };
  std::vector<CoTerm> coproduct(int J) const;

  // J relation summary, e.g. "tau_0^2 = rho tau_1, tau_1^2 = 0"
  std::string relations() const;
  // multiplication table of the dual algebra on the Q_K basis, derived from the
  // coproduct: Q_K Q_L = sign Q_{K|L} or 0 (as operators: first Q_K then Q_L)
  std::string dual_relations() const;

 private:
  CoefficientRing ring_;
  int n_;
  int twist_gen_ = -1;  // generator with eta_R != eta_L
  int twist_by_ = -1;   // the square-zero/primitive generator appearing in the twist
  bool rho_relation_ = false;
  mutable std::mutex mu_;
  mutable std::map<Mono, std::unique_ptr<std::vector<TwistTerm>>> twist_cache_;

  void mul_gen(int mask, const RingElem& coef, int i, std::vector<Prod>& out) const;
};

}  // namespace motivic
