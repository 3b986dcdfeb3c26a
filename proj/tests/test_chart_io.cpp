#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "motivic/chart_io.hpp"

using namespace motivic;

TEST_CASE("edge degrees") {
  auto R = FieldSpec::real(2);
  CHECK(edge_degree(R, "v0") == Deg3{0, 1, 0});
  CHECK(edge_degree(R, "v1") == Deg3{2, 1, 1});
  CHECK(edge_degree(FieldSpec::complex(3), "v1") == Deg3{4, 1, 2});
  CHECK(edge_degree(R, "rho") == Deg3{-1, 0, -1});
  CHECK(edge_degree(R, "rho tau^2") == Deg3{-1, 0, -3});
  CHECK(edge_degree(R, "d", 3) == Deg3{-1, 3, 0});
  CHECK_THROWS_AS(edge_degree(R, "gamma"), ConfigError);
}

TEST_CASE("ext chart round trip") {
  auto C = FieldSpec::complex(2);
  auto c = ext_chart(unit_module(exterior(C, 1)), Window{0, 12, 8, -8, 8});
  auto doc = chart_from_ext(c, "ext");
  CHECK(validate(doc).empty());
  CHECK(static_cast<int>(doc.classes.size()) == c.total());
  CHECK(parse_chart(to_json(doc)) == doc);
  CHECK(render_svg(doc) == render_svg(parse_chart(to_json(doc))));
}

TEST_CASE("E_2 page and homotopy documents") {
  auto F = FieldSpec::finite(3, 2);
  Window W{-4, 6, 6, -4, 3};
  auto page = run_ss(bpgl_e2(F, Target::BPGL1, W), differential_rules(F, Target::BPGL1, 3));
  auto doc = chart_from_page(page, "homotopy");
  CHECK(validate(doc).empty());
  int diffs = 0, rho = 0;
  for (auto& e : doc.edges) {
    diffs += e.kind == "d";
    rho += e.kind == "rho";
  }
  CHECK(diffs > 0);
  CHECK(rho > 0);
  CHECK(parse_chart(to_json(doc)) == doc);
  auto h = chart_from_homotopy(bpgl_homotopy(F, Target::BPGL0, W), "homotopy");
  CHECK(validate(h).empty());
  CHECK(!h.classes.empty());
}

TEST_CASE("invalid documents") {
  ChartDocument doc;
  doc.field = "C";
  doc.classes = {{{0, 0, 0}, "a", ""}, {{0, 1, 0}, "b", ""}};
  doc.edges = {{0, 1, "v0", 0}};
  CHECK(validate(doc).empty());
  doc.edges = {{0, 2, "v0", 0}};
  CHECK(!validate(doc).empty());
  doc.edges = {{0, 1, "v1", 0}};
  CHECK(!validate(doc).empty());
  CHECK_THROWS_AS(parse_chart("{\"schema\":\"chart/v0\"}"), ConfigError);
  CHECK_THROWS_AS(parse_chart("not json"), ConfigError);
}

TEST_CASE("rendering") {
  ChartDocument empty;
  empty.field = "C";
  auto svg = render_svg(empty);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("<circle") == std::string::npos);

  // Ext_{E(0)}(unit) over C: one dot at (0,0) carrying a tower arrow
  auto c = ext_chart(unit_module(exterior(FieldSpec::complex(2), 0)), Window{-2, 4, 6, -6, 2});
  auto s = render_svg(chart_from_ext(c, "ext"));
  size_t dots = 0;
  for (size_t i = s.find("<circle"); i != std::string::npos; i = s.find("<circle", i + 1)) ++dots;
  CHECK(dots == 1);
  CHECK(s.find("<path") != std::string::npos);
  CHECK(s.find("(s,f,w)=(0,0,0)") != std::string::npos);

  // summands get distinct palette colors
  auto coop = cooperations(Target::BPGL1, FieldSpec::complex(2), 3, Window{-2, 12, 6, -4, 8});
  auto svg2 = render_svg(chart_from_homotopy(coop.total, "cooperations"));
  CHECK(svg2.find("#1f77b4") != std::string::npos);
  CHECK(svg2.find("#d62728") != std::string::npos);
}

TEST_CASE("module json") {
  auto L = lightning_flash(FieldSpec::complex(2), 2);
  auto j = module_json(L);
  CHECK(j.find("\"module/v1\"") != std::string::npos);
  CHECK(j.find("\"x1\"") != std::string::npos);
}
