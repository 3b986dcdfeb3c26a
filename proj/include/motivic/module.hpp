#pragma once
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "motivic/gamma.hpp"
#include "motivic/linalg.hpp"

namespace motivic {

// one F_p-basis term a * b_k of a module element
struct ETerm {
  int b;
  Mono m;
  int c;
  bool operator==(const ETerm&) const = default;
};
// sorted by (b, m), no zero coefficients
using Elem = std::vector<ETerm>;

struct BasisElem {
  Deg deg;
  std::string label;
};

// A-linear combination of module basis elements
struct ACoef {
  int b;
  RingElem coef;
};
using AComb = std::vector<ACoef>;

// Finitely generated A-free right E(n)-module, equivalently a left E(n)^v-comodule.
// theta[K][b] = Q_K acting on basis element b (right form of the coaction).
class FinModule {
 public:
  FinModule() = default;
  explicit FinModule(std::shared_ptr<const ExteriorPair> E) : E_(std::move(E)) {}

  const ExteriorPair& E() const { return *E_; }
  std::shared_ptr<const ExteriorPair> E_ptr() const { return E_; }
  const CoefficientRing& ring() const { return E_->ring(); }
  int p() const { return E_->p(); }
  int rank() const { return static_cast<int>(basis_.size()); }
  const BasisElem& basis(int b) const { return basis_[b]; }
  const std::vector<BasisElem>& basis() const { return basis_; }

  int add_basis(Deg d, std::string label);
  void set_action(int K, int b, AComb v);
  const AComb& action(int K, int b) const { return theta_[K][b]; }

  std::string tag;
  bool truncated = false;

  // F_p-basis in degree d: pairs (basis index, coefficient monomial)
  std::vector<std::pair<int, Mono>> fp_basis(Deg d) const;
  Vec to_vec(const Elem& x, const std::vector<std::pair<int, Mono>>& fpb) const;
  Elem from_vec(const Vec& v, const std::vector<std::pair<int, Mono>>& fpb) const;

  Elem basis_elem(int b) const { return {{b, Mono{}, 1}}; }
  Elem theta(int K, const Elem& x) const;
  Elem mul(const Mono& a, const Elem& x) const;
  Elem add(const Elem& x, const Elem& y) const;
  Elem scale(const Elem& x, int c) const;
  Deg degree(const Elem& x) const;
  std::string str(const Elem& x) const;

  // degrees spanned by the A-basis
  Deg top() const;
  Deg bottom() const;
  // (s, w) -> number of A-basis elements
  std::map<Deg, int> rank_by_degree() const;

  // checks Q_K Q_L = coproduct coefficients on every basis element and on
  // coefficient multiples up to the given A-degree depth; returns "" if all hold
  std::string check_axioms(int depth = 3) const;

 private:
  std::shared_ptr<const ExteriorPair> E_;
  std::vector<BasisElem> basis_;
  std::vector<std::vector<AComb>> theta_;  // [K][b], K = 0 unused
};

Elem normalize(Elem x, int p);

// constructions
FinModule unit_module(std::shared_ptr<const ExteriorPair> E);
FinModule free_module(std::shared_ptr<const ExteriorPair> E, Deg top_generator_degree);
FinModule suspend(const FinModule& M, Deg d);
FinModule direct_sum(const FinModule& M, const FinModule& N);
FinModule tensor(const FinModule& M, const FinModule& N);
// restriction to E(m), m <= n
FinModule restrict_to(const FinModule& M, std::shared_ptr<const ExteriorPair> Em);
// quotient by the A-submodule spanned by coefficient-free relation vectors over the
// A-basis; the span must be closed under every Q_K
FinModule quotient(const FinModule& M, const std::vector<Vec>& relations);
// quotient by the A-span of homogeneous A-combinations whose constant parts are
// independent (so the span is A-free on them and a complement is A-free)
FinModule quotient(const FinModule& M, const std::vector<AComb>& relations);

Elem to_elem(const AComb& v, int p);

// A-linear map given by the images of the source A-basis
struct ModuleMap {
  std::vector<AComb> img;
};
Elem apply(const FinModule& N, const ModuleMap& f, const Elem& x);
// "" when f is degree preserving and commutes with every Q_K
std::string check_module_map(const FinModule& M, const FinModule& N, const ModuleMap& f);
// F_p-rank of f in degree d
int map_rank(const FinModule& M, const FinModule& N, const ModuleMap& f, Deg d);

}  // namespace motivic
