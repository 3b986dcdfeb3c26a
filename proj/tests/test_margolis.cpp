#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "motivic/comodules.hpp"
#include "motivic/margolis.hpp"

using namespace motivic;

namespace {

std::vector<FieldSpec> all_fields() {
  return {FieldSpec::complex(2),    FieldSpec::real(2),      FieldSpec::finite(5, 2),
          FieldSpec::finite(3, 2),  FieldSpec::complex(3),   FieldSpec::real(3),
          FieldSpec::finite(19, 3), FieldSpec::finite(7, 3), FieldSpec::finite(2, 3),
          FieldSpec::finite(8, 3)};
}

ModuleMap identity(const FinModule& M) {
  ModuleMap f;
  for (int b = 0; b < M.rank(); ++b) f.img.push_back({{b, M.ring().one()}});
  return f;
}

}  // namespace

TEST_CASE("Margolis homology of lightning flashes") {
  for (auto spec : all_fields()) {
    CAPTURE(spec.name());
    const int p = spec.p;
    for (int k = 1; k <= 4; ++k) {
      auto L = lightning_flash(spec, k);
      auto H0 = margolis_homology(L, 0), H1 = margolis_homology(L, 1);
      CHECK(H0.dims == std::map<Deg, int>{{{0, 0}, 1}});
      // Q_0 x_k
      CHECK(H1.dims == std::map<Deg, int>{{Deg{2 * p - 2, p - 1} * k, 1}});
      CHECK_FALSE(is_free(L));
    }
  }
}

TEST_CASE("free modules") {
  for (auto spec : all_fields()) {
    CAPTURE(spec.name());
    for (int n : {0, 1}) {
      auto E = exterior(spec, n);
      auto F = free_module(E, {0, 0});
      for (int i = 0; i <= n; ++i) CHECK(margolis_homology(F, i).total() == 0);
      CHECK(x_free(F));
      CHECK(is_free(F));
      auto S = split_free_summands(F);
      CHECK(S.core.rank() == 0);
      CHECK(S.free == std::vector<Deg>{{0, 0}});
      auto F2 = direct_sum(free_module(E, {7, 3}), suspend(lightning_flash(spec, 2), {1, 0}));
      if (n == 1) {
        auto S2 = split_free_summands(F2);
        CHECK(S2.core.rank() == 5);
        CHECK(S2.free.size() == 1);
      }
    }
    for (int k = 1; k <= 6; ++k) CHECK(is_free(brown_gitler(spec, -1, k)));
    CHECK_FALSE(is_free(brown_gitler(spec, -1, 0)));
  }
}

TEST_CASE("stable equivalences") {
  for (auto spec : all_fields()) {
    CAPTURE(spec.name());
    auto L = lightning_flash(spec, 1);
    CHECK(stable_equivalence(L, L, identity(L)));
    ModuleMap zero;
    zero.img.resize(L.rank());
    CHECK_FALSE(stable_equivalence(L, L, zero));
    CHECK(check_module_map(L, L, zero) == "");
    // L(1) (+) free is stably equivalent to L(1)
    auto E = exterior(spec, 1);
    auto LF = direct_sum(L, free_module(E, {3 * spec.p, 2}));
    auto f = find_stable_equivalence(L, LF);
    REQUIRE(f);
    CHECK(check_module_map(L, LF, *f) == "");
    CHECK_FALSE(find_stable_equivalence(L, lightning_flash(spec, 2)));
  }
}

TEST_CASE("Brown-Gitler splitting: core is L(nu_p(k!))") {
  for (auto spec : all_fields()) {
    CAPTURE(spec.name());
    const int p = spec.p;
    for (int k = 0; k <= 8; ++k) {
      CAPTURE(k);
      auto B = brown_gitler(spec, 0, k);
      auto S = split_free_summands(B);
      int nu = static_cast<int>(nu_factorial(k, p));
      CHECK(S.core.rank() == 2 * nu + 1);
      CHECK(B.rank() == S.core.rank() + 4 * static_cast<int>(S.free.size()));
      CHECK(split_free_summands(S.core).free.empty());
      auto L = lightning_flash(spec, nu);
      auto f = find_stable_equivalence(L, S.core);
      REQUIRE(f);
      CHECK(check_module_map(L, S.core, *f) == "");
      auto g = find_stable_equivalence(L, B);
      REQUIRE(g);
      // Q_1 class of B_0(k): prod xi_i^{d_i}, d_i the base-p digits of k in positions i >= 1
      auto H1 = margolis_homology(B, 1);
      REQUIRE(H1.total() == 1);
      Deg expect{0, 0};
      long kk = k / p;
      for (int i = 1; kk; ++i, kk /= p) expect = expect + Deg{static_cast<int>(2 * ipow(p, i) - 2), static_cast<int>(ipow(p, i) - 1)} * static_cast<int>(kk % p);
      CHECK(H1.classes[0].first == expect);
      CHECK(margolis_homology(B, 0).dims == std::map<Deg, int>{{{0, 0}, 1}});
    }
  }
}
