#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "motivic/adams.hpp"

using namespace motivic;

namespace {

// log_p (q^n - 1)_p
int soule_log(const FieldSpec& F, int n) {
  return static_cast<int>(nu(ipow(F.q, n) - 1, F.p));
}

}  // namespace

TEST_CASE("differential rules") {
  auto F5 = FieldSpec::finite(5, 2);
  auto r5 = differential_rules(F5, Target::BPGL0, 3);
  REQUIRE(r5.size() == 4);
  CHECK(r5[0].r == 2);
  CHECK(r5[0].str == "d_2(tau) = u v0^2");
  CHECK(r5[1].r == 3);

  auto F3 = FieldSpec::finite(3, 2);
  auto printed = differential_rules(F3, Target::BPGL0, 3, PageConvention::Printed);
  REQUIRE(printed.size() == 3);  // s >= 1
  CHECK(printed[0].str == "d_4(tau^2) = rho tau v0^4");
  auto soule = differential_rules(F3, Target::BPGL0, 3);
  CHECK(soule[0].str == "d_3(tau^2) = rho tau v0^3");
  CHECK(soule[1].r == 4);  // (3^4 - 1)_2 = 16

  CHECK(differential_rules(FieldSpec::complex(2), Target::BPGL1).empty());
  CHECK(differential_rules(FieldSpec::real(3), Target::BPGL0).empty());

  // untwisted conventions agree
  for (auto F : {FieldSpec::finite(5, 2), FieldSpec::finite(19, 3), FieldSpec::finite(37, 3)}) {
    REQUIRE(F.bocksteinTrivial);
    auto a = differential_rules(F, Target::BPGL1, 3);
    auto b = differential_rules(F, Target::BPGL1, 3, PageConvention::Printed);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].r == b[i].r);
  }
  for (auto F : {F5, F3, FieldSpec::finite(7, 3), FieldSpec::finite(2, 3), FieldSpec::finite(8, 3)})
    for (auto& d : differential_rules(F, Target::BPGL1, 4)) {
      CHECK(degree_law_holds(F, d));
      CHECK(std::find(d.scope.begin(), d.scope.end(), "v1") != d.scope.end());
    }
}

TEST_CASE("run_ss by hand: F_5, p = 2") {
  Window W{-10, 0, 10, -10, 0};
  auto F = FieldSpec::finite(5, 2);
  auto e2 = bpgl_e2(F, Target::BPGL0, W);
  auto same = run_ss(e2, {});
  CHECK(same.count_alive() == static_cast<int>(e2.classes.size()));

  auto einf = run_ss(e2, differential_rules(F, Target::BPGL0, 4));
  CHECK(einf.errors.empty());
  // surviving (0,*) column: the v_0-tower on 1 only
  for (auto& c : einf.classes)
    if (c.deg.s == 0 && einf.alive(c.key)) CHECK(c.deg.w == 0);
  // d_2(tau) = u v_0^2 leaves u, u v_0
  int u_col = 0;
  for (auto& c : einf.classes)
    if (c.deg.s == -1 && c.deg.w == -1 && einf.alive(c.key)) ++u_col;
  CHECK(u_col == 2);
  auto T = assemble_homotopy(einf, {});
  CHECK(T.descriptor({0, 0}) == "Z_2");
  CHECK(T.descriptor({-1, -1}) == "Z/4");
  CHECK(T.zero({0, -1}));
}

TEST_CASE("Leibniz: tau^2 uses its own rule") {
  Window W{-2, 0, 8, -4, 0};
  auto F = FieldSpec::finite(5, 2);
  auto only_tau = differential_rules(F, Target::BPGL0, 0);
  auto P = run_ss(bpgl_e2(F, Target::BPGL0, W), only_tau);
  Mono t2;
  t2.e = {0, 2};
  CHECK(P.alive({0, t2, 0, 0}));  // 2 tau d(tau) = 0
}

TEST_CASE("Bockstein path agrees with the resolution") {
  Window W{-6, 8, 5, -8, 3};
  for (auto F : {FieldSpec::finite(3, 2), FieldSpec::finite(5, 2), FieldSpec::finite(7, 3),
                 FieldSpec::finite(2, 3), FieldSpec::finite(19, 3)})
    for (int n : {0, 1}) {
      CAPTURE(F.name());
      CAPTURE(n);
      auto c = ext_chart(unit_module(exterior(F, n)), W);
      CHECK(compare_charts(c, bockstein_ss(F, n, W)).empty());
    }
  CHECK_THROWS_AS(bockstein_presentation(FieldSpec::real(2), 1), std::invalid_argument);
  // p = 5: gamma zeta^j survive at f = 0, gamma v_0 = 0
  auto F = FieldSpec::finite(2, 5);
  REQUIRE(!F.bocksteinTrivial);
  auto pres = bockstein_presentation(F, 1);
  for (int j = 1; j <= 4; ++j) {
    Mono g;
    g.e = {1, static_cast<int16_t>(j)};
    CHECK(pres(g, 0, 0));
    CHECK(pres(g, 1, 0) == (j == 4));
  }
  Mono gam;
  gam.e = {1, 0};
  CHECK(!pres(gam, 1, 0));
  Mono z5;
  z5.e = {0, 5};
  CHECK(pres(z5, 0, 0));
}

TEST_CASE("Soule groups") {
  Window W{-3, 2, 14, -6, 0};
  for (auto F : {FieldSpec::finite(3, 2), FieldSpec::finite(5, 2), FieldSpec::finite(7, 3),
                 FieldSpec::finite(19, 3), FieldSpec::finite(2, 3)}) {
    CAPTURE(F.name());
    auto T = bpgl_homotopy(F, Target::BPGL0, W);
    CHECK(T.flags.empty());
    CHECK(T.descriptor({0, 0}) == "Z_" + std::to_string(F.p));
    for (int w = -6; w <= -1; ++w) {
      CAPTURE(w);
      CHECK(T.free_rank({-1, w}) == 0);
      CHECK(T.torsion_log({-1, w}) == soule_log(F, -w));
      CHECK(T.zero({0, w}));
    }
  }
  // the printed twisted pages give Z/16 at (-1,-2) over F_3
  auto P = bpgl_homotopy(FieldSpec::finite(3, 2), Target::BPGL0, W, PageConvention::Printed);
  CHECK(P.descriptor({-1, -2}) == "Z/16");
  auto C = bpgl_homotopy(FieldSpec::complex(2), Target::BPGL0, W);
  CHECK(C.descriptor({0, 0}) == "Z_2");
  CHECK(C.descriptor({0, -1}) == "Z_2");
  CHECK(C.zero({-1, -1}));
}

TEST_CASE("Quillen orders") {
  Window W{-2, 10, 14, -6, 4};
  auto F = FieldSpec::finite(3, 2);
  auto T = bpgl_homotopy(F, Target::BPGL1, W);
  CHECK(T.flags.empty());
  for (int n = 1; n <= 5; ++n)
    for (int b = 0; b < n; ++b) {
      const Deg d{2 * b - 1, b - n};
      if (d.w < W.w_min) continue;
      CAPTURE(n);
      CAPTURE(b);
      CHECK(T.free_rank(d) == 0);
      CHECK(T.torsion_log(d) == soule_log(F, n));
      CHECK(T.zero({2 * b, b - n}));  // K_{2n}
    }
  CHECK(T.descriptor({2, 1}) == "Z_2");  // v_1
  CHECK(T.descriptor({-1, -1}) == "Z/2");
  CHECK(T.descriptor({-1, -2}) == "Z/8");
}

TEST_CASE("cooperations") {
  Window W{-4, 10, 6, -4, 6};
  auto C = FieldSpec::complex(2);
  auto R = cooperations(Target::BPGL1, C, 3, W);
  REQUIRE(R.summands.size() == 4);
  CHECK(R.summands[0].label == "k0: L(0)");
  CHECK(R.summands[2].label == "k2: L(1)");
  CHECK(R.summands[3].label == "k3: L(1)");
  for (int k = 0; k <= 3; ++k) CHECK(check_cooperation_e2(Target::BPGL1, C, k, W).empty());
  // k = 2: pi BPGL0 {x0} + pi BPGL1 {x1}, shifted by (4,2)
  auto& T = R.summands[2].table;
  CHECK(T.descriptor({4, 2}) == "Z_2");
  CHECK(T.descriptor({6, 3}) == "Z_2");  // v_1 x0 = 2 x1
  CHECK(T.descriptor({8, 4}) == "Z_2");
  CHECK(T.extensions == std::vector<std::string>{"v1 k2.x0 = 2 k2.x1"});
  CHECK(R.total.flags.empty());

  auto R0 = cooperations(Target::BPGL0, FieldSpec::finite(3, 2), 3, W);
  for (int k = 0; k <= 3; ++k) {
    CHECK(check_cooperation_e2(Target::BPGL0, FieldSpec::finite(3, 2), k, W).empty());
    CHECK(R0.summands[k].label == "k" + std::to_string(k) + (k ? ": free" : ": M"));
  }
  // pi BPGL0 plus filtration-0 F_2 classes
  CHECK(R0.total.descriptor({0, 0}) == "Z_2");
  CHECK(R0.total.descriptor({-1, -2}) == "Z/8");
}

TEST_CASE("n-line") {
  Window W{-4, 8, 5, -4, 4};
  auto C = FieldSpec::complex(2);
  auto one = n_line(1, C, W);
  auto coop = cooperations(Target::BPGL1, C, 4, W);
  HomotopyTable rest;
  for (int k = 1; k <= 4; ++k) rest.merge(coop.summands[k].table);
  for (auto& [d, v] : rest.groups) {
    CAPTURE(d.str());
    CHECK(one.total.descriptor(d) == rest.descriptor(d));
  }
  auto two = n_line(2, C, W);
  bool found = false;
  for (auto& s : two.summands)
    if (s.I == std::vector<int>{1, 1}) {
      found = true;
      CHECK(s.m == 0);
      CHECK(s.label == "I(1,1): L(0)");
      CHECK(s.table.descriptor({4, 2}) == "Z_2");
    }
  CHECK(found);
}

TEST_CASE("Bockstein bimodule blocks agree with the resolution") {
  Window W{-12, 8, 5, -8, 4};
  for (auto F : {FieldSpec::finite(7, 3), FieldSpec::finite(2, 3)})
    for (int k = 0; k <= 2; ++k)
      for (int m = 0; m <= 2; ++m) {
        CAPTURE(F.name());
        CAPTURE(k);
        CAPTURE(m);
        auto blocks = bimodule_blocks(F, k, m, e2_presentation(F, 0), e2_presentation(F, 1));
        CHECK(compare_charts(ext_bimodule(F, k, m, W), blocks_chart(F, blocks, W), false).empty());
      }
}

TEST_CASE("collapse verification") {
  Window W{-12, 12, 8, -6, 8};
  for (int k = 0; k <= 3; ++k) {
    auto rep = verify_collapse(FieldSpec::complex(2), k, W);
    CAPTURE(k);
    CHECK(rep.generators > 0);
    CHECK(rep.ok());
  }
  // v_1-types of twisted odd-p generators come from the Bockstein blocks
  auto rep = verify_collapse(FieldSpec::finite(7, 3), 3, Window{-12, 4, 8, -8, 4});
  CHECK(rep.notes.empty());
  CHECK(rep.ok());
}

TEST_CASE("homotopy table serialization") {
  auto T = bpgl_homotopy(FieldSpec::finite(3, 2), Target::BPGL0, Window{-2, 1, 8, -2, 0});
  const std::string tsv = T.tsv();
  CHECK(tsv.rfind("s\tw\tgroup\tgenerators\n", 0) == 0);
  CHECK(tsv.find("-1\t-2\tZ/8\trho tau") != std::string::npos);
  CHECK(T.json().find("\"homotopy/v1\"") != std::string::npos);
}
