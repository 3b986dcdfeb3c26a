#pragma once
#include <memory>
#include <string>
#include <vector>

#include "motivic/steenrod.hpp"

namespace motivic {

// shared E(n) for a field, n in {0, 1}
std::shared_ptr<const ExteriorPair> exterior(const FieldSpec& spec, int n);

// B_n(k), n in {-1, 0}: span of the monomials of weight <= k in A//E(n)^v with the
// right E(n+1)-action
FinModule brown_gitler(const FieldSpec& spec, int n, long k);

// L(k) over E(1): free on x_1..x_k modulo x_{i+1}Q_1 = x_i Q_0 and x_i Q_0 Q_1 = 0;
// basis labels "xi" and "xi Q_K"; L(0) is the unit module
FinModule lightning_flash(const FieldSpec& spec, int k);

// (E(1)//E(0))^v = M{1, tau_1} with tau_1 Q_1 = 1
FinModule e1_mod_e0_dual(const FieldSpec& spec);

// A//E(n)^v through weight p*k_max with the E(n)-action; stratum[b] = k for a
// basis monomial of weight pk. bar drops the k = 0 stratum.
struct StratifiedModule {
  FinModule module;
  std::vector<SMono> monos;
  std::vector<int> stratum;
};
StratifiedModule homology_BPGL(const FieldSpec& spec, int n, int k_max, bool bar = false);

// checks that each stratum k is isomorphic to Sigma^{2k(p-1),k(p-1)} B_{n-1}(k) via
// x -> xi_1^{k - wt x} * (x with indices raised by one); "" on success
std::string verify_stratification(const FieldSpec& spec, const StratifiedModule& H, int n);

// inclusion Sigma^{2(p-1),p-1} L(k-1) -> L(k), x_i -> x_{i+1}
ModuleMap lightning_inclusion(const FinModule& Lsmall, const FinModule& Lbig);
// verifies the short exact sequence Sigma L(k-1) -> L(k) -> (E(1)//E(0))^v; "" on success
std::string lightning_ses(const FieldSpec& spec, int k);

}  // namespace motivic
