#pragma once
#include <string>
#include <vector>

#include "motivic/adams.hpp"

namespace motivic {

struct ChartClass {
  Deg3 deg;
  std::string label;
  std::string summand;
  bool operator==(const ChartClass&) const = default;
};

// kind: "v0", "v1", a coefficient monomial ("rho", "tau", "u", "gamma", "zeta", ...)
// or "d" with the page in r
struct ChartEdge {
  int source = 0, target = 0;
  std::string kind;
  int r = 0;
  bool operator==(const ChartEdge&) const = default;
};

struct ChartDocument {
  std::string field;
  int prime = 2;
  Window window;
  std::string producer;
  std::vector<ChartClass> classes;
  std::vector<ChartEdge> edges;
  bool operator==(const ChartDocument&) const = default;
};

// (s, f, w) change along an edge of the given kind; throws ConfigError for unknown kinds
Deg3 edge_degree(const FieldSpec& spec, const std::string& kind, int r = 0);
// "" when every endpoint exists and every edge is degree consistent
std::string validate(const ChartDocument& doc);

ChartDocument chart_from_ext(const ExtChart& c, const std::string& producer);
// classes of an E_2 page in the window, v_0 / v_1 edges inside blocks, differentials
ChartDocument chart_from_page(const SSPage& page, const std::string& producer);
// one class per cyclic summand, placed at its Adams filtration
ChartDocument chart_from_homotopy(const HomotopyTable& T, const std::string& producer);

// schema "chart/v1"
std::string to_json(const ChartDocument& doc);
// throws ConfigError on schema violations
ChartDocument parse_chart(const std::string& text);

struct RenderOptions {
  int cell = 28;
  // draw only classes that are not tau (or zeta) multiples of another class
  bool collapse_tau = true;
};
// x = s, y = f; colors by summand tag from a fixed palette
std::string render_svg(const ChartDocument& doc, const RenderOptions& opt = {});

// schema "module/v1": basis with degrees, sparse Q_K action
std::string module_json(const FinModule& M);

}  // namespace motivic
