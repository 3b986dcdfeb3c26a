#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "motivic/comodules.hpp"

using namespace motivic;

namespace {

std::vector<FieldSpec> all_fields() {
  return {FieldSpec::complex(2),    FieldSpec::real(2),      FieldSpec::finite(5, 2),
          FieldSpec::finite(3, 2),  FieldSpec::complex(3),   FieldSpec::real(3),
          FieldSpec::finite(19, 3), FieldSpec::finite(7, 3), FieldSpec::finite(2, 3),
          FieldSpec::finite(8, 3)};
}

std::vector<std::string> labels(const FinModule& M) {
  std::vector<std::string> r;
  for (auto& b : M.basis()) r.push_back(b.label);
  return r;
}

}  // namespace

TEST_CASE("Brown-Gitler comodules") {
  auto C2 = FieldSpec::complex(2);
  CHECK(brown_gitler(C2, 0, 0).rank() == 1);
  CHECK(brown_gitler(C2, -1, 0).rank() == 1);
  // weight <= 2 spans
  CHECK(labels(brown_gitler(C2, 0, 2)) == std::vector<std::string>{"1", "xi1", "tau1"});
  CHECK(labels(brown_gitler(C2, -1, 2)) == std::vector<std::string>{"1", "tau0", "xi1", "tau1"});
  auto B = brown_gitler(C2, 0, 2);
  auto t1 = B.basis_elem(2);
  CHECK(B.str(B.theta(1, t1)) == "xi1");
  CHECK(B.str(B.theta(2, t1)) == "1");
  for (auto spec : all_fields()) {
    CAPTURE(spec.name());
    for (int n : {-1, 0})
      for (int k = 0; k <= 8; ++k) {
        auto Bk = brown_gitler(spec, n, k), Bk1 = brown_gitler(spec, n, k + 1);
        CHECK(Bk.check_axioms(1) == "");
        // monotone: B(k) is the initial segment of B(k+1)
        auto a = labels(Bk), b = labels(Bk1);
        for (auto& l : a) CHECK(std::find(b.begin(), b.end(), l) != b.end());
      }
  }
}

TEST_CASE("lightning flash modules") {
  for (auto spec : all_fields()) {
    CAPTURE(spec.name());
    CHECK(lightning_flash(spec, 0).rank() == 1);
    for (int k = 1; k <= 5; ++k) {
      auto L = lightning_flash(spec, k);
      CHECK(L.rank() == 2 * k + 1);
      CHECK(L.check_axioms(2) == "");
      CHECK(lightning_ses(spec, k) == "");
    }
    CHECK(e1_mod_e0_dual(spec).check_axioms(2) == "");
  }
  auto L = lightning_flash(FieldSpec::complex(3), 2);
  std::multiset<Deg> degs;
  for (auto& b : L.basis()) degs.insert(b.deg);
  CHECK(degs == std::multiset<Deg>{{0, 0}, {4, 2}, {5, 2}, {8, 4}, {9, 4}});
}

TEST_CASE("tensor products") {
  for (auto spec : all_fields()) {
    CAPTURE(spec.name());
    auto E = exterior(spec, 1);
    auto L1 = lightning_flash(spec, 1), L2 = lightning_flash(spec, 2);
    auto U = unit_module(E);
    auto T = tensor(L1, U);
    CHECK(T.rank() == L1.rank());
    for (int b = 0; b < L1.rank(); ++b) CHECK(T.basis(b).deg == L1.basis(b).deg);
    for (int K = 1; K < 4; ++K)
      for (int b = 0; b < L1.rank(); ++b) CHECK(T.theta(K, T.basis_elem(b)) == L1.theta(K, L1.basis_elem(b)));
    auto LL = tensor(L1, L2), LL2 = tensor(L2, L1);
    CHECK(LL.check_axioms(1) == "");
    CHECK(LL.rank_by_degree() == LL2.rank_by_degree());
    std::map<Deg, int> conv;
    for (auto& [d1, r1] : L1.rank_by_degree())
      for (auto& [d2, r2] : L2.rank_by_degree()) conv[d1 + d2] += r1 * r2;
    CHECK(LL.rank_by_degree() == conv);
  }
  // Q_0 acts as a derivation on L(1) (x) L(1) over F_2
  auto spec = FieldSpec::complex(2);
  auto L1 = lightning_flash(spec, 1);
  auto T = tensor(L1, L1);
  for (int b = 0; b < L1.rank(); ++b)
    for (int c = 0; c < L1.rank(); ++c) {
      Elem lhs = T.theta(1, T.basis_elem(b * L1.rank() + c));
      Elem rhs;
      for (auto& t : L1.theta(1, L1.basis_elem(b))) rhs.push_back({t.b * L1.rank() + c, t.m, t.c});
      for (auto& t : L1.theta(1, L1.basis_elem(c))) rhs.push_back({b * L1.rank() + t.b, t.m, t.c});
      CHECK(lhs == normalize(rhs, 2));
    }
}

TEST_CASE("homology of BPGL<n> and its weight stratification") {
  auto C2 = FieldSpec::complex(2);
  auto H = homology_BPGL(C2, 1, 2);
  // strata at p = 2 through weight 4: B_0(0), Sigma^{2,1} B_0(1), Sigma^{4,2} B_0(2)
  std::map<int, int> size;
  for (int s : H.stratum) ++size[s];
  CHECK(size[0] == brown_gitler(C2, 0, 0).rank());
  CHECK(size[1] == brown_gitler(C2, 0, 1).rank());
  CHECK(size[2] == brown_gitler(C2, 0, 2).rank());
  auto Hb = homology_BPGL(C2, 1, 2, true);
  auto rb = Hb.module.rank_by_degree();
  CHECK(rb.count(Deg{0, 0}) == 0);
  CHECK(rb.begin()->first == Deg{2, 1});
  CHECK(rb.begin()->second == 1);
  auto r = H.module.rank_by_degree();
  r[Deg{0, 0}] -= 1;
  if (r[Deg{0, 0}] == 0) r.erase(Deg{0, 0});
  CHECK(r == rb);
  for (auto spec : all_fields()) {
    CAPTURE(spec.name());
    for (int n : {0, 1}) {
      int kmax = spec.p == 2 ? 8 : 6;
      auto Hn = homology_BPGL(spec, n, kmax);
      CHECK(verify_stratification(spec, Hn, n) == "");
      CHECK(verify_stratification(spec, homology_BPGL(spec, n, kmax, true), n) == "");
    }
  }
}
