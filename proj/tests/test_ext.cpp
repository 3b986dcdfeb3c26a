#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "motivic/ext.hpp"

using namespace motivic;

namespace {

std::vector<FieldSpec> all_fields() {
  return {FieldSpec::complex(2),    FieldSpec::real(2),      FieldSpec::finite(5, 2),
          FieldSpec::finite(3, 2),  FieldSpec::complex(3),   FieldSpec::real(3),
          FieldSpec::finite(19, 3), FieldSpec::finite(7, 3), FieldSpec::finite(2, 3),
          FieldSpec::finite(8, 3)};
}

}  // namespace

TEST_CASE("resolutions are minimal and exact") {
  for (auto spec : all_fields()) {
    CAPTURE(spec.name());
    for (int n : {0, 1}) {
      auto R = unit_resolution(spec, n, 5);
      std::vector<Deg> degs;
      for (int s = -12; s <= 1; ++s)
        for (int w = -8; w <= 1; ++w) degs.push_back({s, w});
      CHECK(R->verify(degs) == "");
      // generator count matches the classical exterior algebra: f+1 (n=1) or 1 (n=0)
      for (int f = 0; f <= 5; ++f) CHECK(R->ngens(f) == (n ? f + 1 : 1));
    }
    Resolution RL(lightning_flash(spec, 2), 4);
    std::vector<Deg> degs;
    for (int s = -10; s <= 10; ++s)
      for (int w = -6; w <= 5; ++w) degs.push_back({s, w});
    CHECK(RL.verify(degs) == "");
  }
  // free module: length 0
  auto spec = FieldSpec::complex(2);
  Resolution RF(free_module(exterior(spec, 1), {3, 1}), 3);
  CHECK(RF.ngens(0) == 1);
  for (int f = 1; f <= 3; ++f) CHECK(RF.ngens(f) == 0);
}

TEST_CASE("resolution and cobar oracle agree") {
  Window w{-4, 8, 4, -6, 4};
  for (auto spec : all_fields()) {
    CAPTURE(spec.name());
    for (int n : {0, 1}) {
      CAPTURE(n);
      auto E = exterior(spec, n);
      std::vector<FinModule> mods{unit_module(E), restrict_to(lightning_flash(spec, 1), E),
                                  restrict_to(brown_gitler(spec, 0, 2), E)};
      for (auto& M : mods) {
        CAPTURE(M.tag);
        auto a = ext_chart(M, w, false);
        auto b = cobar_ext_oracle(M, w);
        CHECK(a.dims == b.dims);
      }
    }
  }
}

TEST_CASE("Ext over E(1) of the complex unit: F_p[tau, v_0, v_1]") {
  for (int p : {2, 3}) {
    auto spec = FieldSpec::complex(p);
    Window w{0, 12, 6, -10, 6};
    auto c = ext_chart(unit_module(exterior(spec, 1)), w);
    std::map<Deg3, int> expect;
    for (int a = 0; a <= 6; ++a)
      for (int b = 0; a + b <= 6; ++b)
        for (int k = 0; k < 40; ++k) {
          Deg3 d{b * (2 * p - 2), a + b, b * (p - 1) - k};
          if (w.contains(d)) expect[d]++;
        }
    CHECK(c.dims == expect);
    // v_1 in (2p-2, 1, p-1); v_0 v_1 nonzero
    CHECK(c.dim({2 * p - 2, 1, p - 1}) == 1);
    auto& v0 = c.products.at("v0");
    auto& v1 = c.products.at("v1");
    CHECK(v0.at({0, 0, 0}).rows[0].get(0) != 0);
    CHECK(v1.at({0, 0, 0}).rows[0].get(0) != 0);
    CHECK(c.products.at("tau").at({0, 0, 0}).rows[0].get(0) != 0);
  }
}

TEST_CASE("Ext of L(1) over C: v_1 x_0 = v_0 x_1") {
  auto spec = FieldSpec::complex(2);
  Window w{-2, 8, 4, -4, 4};
  auto c = ext_chart(lightning_flash(spec, 1), w);
  CHECK(c.dim({0, 0, 0}) == 1);
  CHECK(c.dim({0, 1, 0}) == 1);
  CHECK(c.dim({2, 1, 1}) == 1);
  // x_0 at (0,0,0), x_1 at (2,0,1): v_1 x_0 and v_0 x_1 both hit (2,1,1)
  CHECK(c.dim({2, 0, 1}) == 1);
  CHECK(c.products.at("v1").at({0, 0, 0}).rows[0].get(0) != 0);
  CHECK(c.products.at("v0").at({2, 0, 1}).rows[0].get(0) != 0);
}

TEST_CASE("wrong-side change of rings") {
  Window w{-8, 8, 4, -6, 4};
  for (auto spec : all_fields()) {
    CAPTURE(spec.name());
    auto E1 = exterior(spec, 1);
    auto M = unit_module(E1);
    auto Q = e1_mod_e0_dual(spec);
    auto direct = ext_from_resolution(std::make_shared<Resolution>(Q, w.f_max + 1), M, w, false);
    auto shifted = wrong_side_change_of_rings(M, w);
    CHECK(direct.dims == shifted.dims);
  }
}
