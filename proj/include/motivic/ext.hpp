#pragma once
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "motivic/comodules.hpp"

namespace motivic {

// Minimal free resolution P_f -> ... -> P_0 -> N over R = A<Q_0..Q_n>.
// P_f is kept as a FinModule whose A-basis is (generator j, mask K) at index
// j * 2^{n+1} + K.
class Resolution {
 public:
  Resolution(FinModule N, int f_max);

  const FinModule& target() const { return N_; }
  const ExteriorPair& E() const { return N_.E(); }
  int length() const { return static_cast<int>(P_.size()) - 1; }
  const FinModule& P(int f) const { return P_[f]; }
  int ngens(int f) const { return static_cast<int>(gens_[f].size()); }
  Deg gen_degree(int f, int j) const { return gens_[f][j]; }
  int gen_index(int j) const { return j * E().size(); }
  // d of generator j of stage f: an element of P_{f-1}, or of N for f = 0
  const Elem& d(int f, int j) const { return d_[f][j]; }
  // d of an arbitrary element of P_f
  Elem apply_d(int f, const Elem& x) const;
  // extends f (given on the generators of P_f, images in X) R-linearly
  static Elem apply_map(const FinModule& X, int size, const std::vector<Elem>& gen_images,
                        const Elem& x);

  // d d = 0, minimality, exactness in every degree of the given set; "" on success
  std::string verify(const std::vector<Deg>& degrees) const;

 private:
  FinModule N_;
  std::vector<FinModule> P_;
  std::vector<std::vector<Deg>> gens_;
  std::vector<std::vector<Elem>> d_;
  void extend();
  int add_generator(int f, Deg top, Elem boundary);
};

// resolution of the unit module over E(n), shared per (field, n)
std::shared_ptr<const Resolution> unit_resolution(const FieldSpec& spec, int n, int f_max);

// chain maps P_{f+1} -> P_f lifting the v_i cocycle of the resolved module N
class VLift {
 public:
  VLift(std::shared_ptr<const Resolution> R, int i);
  Deg shift() const { return shift_; }
  // image in P_f of generator j of P_{f+1}
  const Elem& image(int f, int j) const;

 private:
  std::shared_ptr<const Resolution> R_;
  int i_;
  Deg shift_;
  mutable std::mutex mu_;
  mutable std::vector<std::vector<Elem>> V_;
  mutable std::vector<std::vector<bool>> have_;
};

struct ExtChart {
  std::string field, module, algebra;
  int p = 2;
  Window window;
  std::map<Deg3, int> dims;
  // product name -> source degree -> matrix (row = source class, column = target class)
  std::map<std::string, std::map<Deg3, Matrix>> products;
  std::map<std::string, Deg3> product_degree;
  // number of classes in the torsion summand B per degree
  std::map<Deg3, int> b_classes;
  bool truncated = false;

  int dim(Deg3 d) const {
    auto it = dims.find(d);
    return it == dims.end() ? 0 : it->second;
  }
  int total() const;
};

// Ext_{E(n)^v}(N, M) from a resolution of N, as cohomology of Hom_R(P, M), with
// v_0, v_1 products and products by the primitive coefficient generators
ExtChart ext_from_resolution(std::shared_ptr<const Resolution> R, const FinModule& M,
                             const Window& win, bool with_products = true);
// Ext(unit, M)
ExtChart ext_chart(const FinModule& M, const Window& win, bool with_products = true);
// Ext(L(k), L(m)) over E(1)
ExtChart ext_bimodule(const FieldSpec& spec, int k, int m, const Window& win,
                      bool with_products = true);
// counts filtration-0 negative-stem classes killed by v_0 and v_1 (the B summand)
void tag_torsion(ExtChart& c);

// dimensions of Ext(unit, M) from the reduced cobar complex
ExtChart cobar_ext_oracle(const FinModule& M, const Window& win);

// Ext_{E(1)}((E(1)//E(0))^v (x) Sigma^{a,b}, M) versus Sigma Ext_{E(0)}(unit, M):
// returns the chart Ext_{E(0)}(unit, M) shifted by (-(2p-1), 0, -(p-1))
ExtChart wrong_side_change_of_rings(const FinModule& M, const Window& win);

}  // namespace motivic
