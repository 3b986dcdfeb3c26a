#pragma once
#include <array>
#include <map>
#include <string>
#include <vector>

#include "motivic/module.hpp"

namespace motivic {

// normal-form monomial xi_1^{e_1} xi_2^{e_2} ... tau_{j_1} tau_{j_2} ... (j ascending)
struct SMono {
  std::array<int16_t, 8> xi{};  // xi[k] = exponent of xi_k, k >= 1
  uint16_t tau = 0;             // bit j = tau_j present
  auto operator<=>(const SMono&) const = default;
};
using SElem = std::map<SMono, RingElem>;

// The motivic dual Steenrod algebra over a coefficient ring (conjugate generators),
// restricted to what the quotients A//E(n)^v and their E(c)^v-coactions need.
class DualSteenrod {
 public:
  // literal_relation = use the relation for rho-twisted fields exactly as
  // displayed in the source (with the extra rho tau_0 xi_{i+1} term)
  explicit DualSteenrod(const CoefficientRing& ring, bool literal_relation = false);

  const CoefficientRing& ring() const { return ring_; }
  int p() const { return ring_.p(); }
  Deg xi_degree(int k) const;
  Deg tau_degree(int j) const;
  Deg degree(const SMono& m) const;
  long weight(const SMono& m) const;
  std::string name(const SMono& m) const;
  static SMono xi(int k, int e = 1);
  static SMono tau(int j);

  SElem mul(const SMono& a, const SMono& b) const;
  SElem mul(const SElem& a, const SElem& b) const;
  SElem add(const SElem& a, const SElem& b) const;
  Deg degree(const SElem& x) const;

  // normal-form monomials of A//E(n)^v (n = -1: all of A^v) of weight <= max_weight
  std::vector<SMono> basis_mod(int n, long max_weight) const;

  // alpha(m) in right form over E(c)^v: result[K] is the e_K-component
  std::vector<SElem> coaction(const ExteriorPair& Ec, const SMono& m) const;
  std::vector<SElem> coaction(const ExteriorPair& Ec, const SElem& x) const;
  // m Q_i
  SElem right_action(const ExteriorPair& Ec, const SMono& m, int i) const;

  // A-span of the given monomials as a FinModule with the E(c)-action; throws if
  // the span is not closed under the action
  FinModule span_module(std::shared_ptr<const ExteriorPair> Ec,
                        const std::vector<SMono>& monos) const;

 private:
  CoefficientRing ring_;
  bool literal_;
  int tau_gen_ = -1, rho_gen_ = -1;
  void mul_tau(const SMono& m, const RingElem& coef, int j, SElem& out) const;
};

// ranks and degrees of E(n)^v match the cell structure S^{0,0} v S^{1,0} v ...
bool relative_steenrod_check(const ExteriorPair& E, std::string* detail = nullptr);

}  // namespace motivic
