#include "motivic/chart_io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>

namespace motivic {

using nlohmann::json;

namespace {

const char* const kPalette[12] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
                                  "#e377c2", "#17becf", "#bcbd22", "#7f7f7f", "#393b79", "#637939"};

std::string xml_escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    switch (c) {
      case '&': o += "&amp;"; break;
      case '<': o += "&lt;"; break;
      case '>': o += "&gt;"; break;
      case '"': o += "&quot;"; break;
      default: o += c;
    }
  }
  return o;
}

std::string group_name(int p, int log_order) {
  if (log_order < 0) return "Z_" + std::to_string(p);
  return "Z/" + std::to_string(ipow(p, log_order));
}

}  // namespace

Deg3 edge_degree(const FieldSpec& spec, const std::string& kind, int r) {
  const int p = spec.p;
  if (kind == "v0") return {0, 1, 0};
  if (kind == "v1") return {2 * p - 2, 1, p - 1};
  if (kind == "d") return {-1, r, 0};
  // a coefficient monomial such as "rho tau^2"
  CoefficientRing ring(spec);
  std::istringstream in(kind);
  std::string tok;
  Deg3 d{0, 0, 0};
  bool any = false;
  while (in >> tok) {
    int e = 1;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      e = std::stoi(tok.substr(caret + 1));
      tok = tok.substr(0, caret);
    }
    const int g = ring.gen_index(tok);
    if (g < 0) throw ConfigError("unknown edge kind '" + kind + "'");
    d.s += e * ring.gen(g).deg.s;
    d.w += e * ring.gen(g).deg.w;
    any = true;
  }
  if (!any) throw ConfigError("empty edge kind");
  return d;
}

std::string validate(const ChartDocument& doc) {
  FieldSpec spec;
  try {
    spec = FieldSpec::parse(doc.field, doc.prime);
  } catch (const std::exception& e) {
    return e.what();
  }
  const int n = static_cast<int>(doc.classes.size());
  for (size_t i = 0; i < doc.edges.size(); ++i) {
    const auto& e = doc.edges[i];
    if (e.source < 0 || e.source >= n || e.target < 0 || e.target >= n)
      return "edge " + std::to_string(i) + ": endpoint missing";
    Deg3 want;
    try {
      want = edge_degree(spec, e.kind, e.r);
    } catch (const std::exception& ex) {
      return "edge " + std::to_string(i) + ": " + ex.what();
    }
    const Deg3 a = doc.classes[e.source].deg, b = doc.classes[e.target].deg;
    const Deg3 got{b.s - a.s, b.f - a.f, b.w - a.w};
    if (got != want)
      return "edge " + std::to_string(i) + " (" + e.kind + "): degree change " + got.str() +
             ", expected " + want.str();
  }
  return "";
}

ChartDocument chart_from_ext(const ExtChart& c, const std::string& producer) {
  ChartDocument doc;
  doc.field = c.field;
  doc.prime = c.p;
  doc.window = c.window;
  doc.producer = producer;
  std::map<Deg3, int> first;
  for (auto& [d, n] : c.dims) {
    if (n == 0) continue;
    first[d] = static_cast<int>(doc.classes.size());
    for (int i = 0; i < n; ++i)
      doc.classes.push_back(
          {d, "x" + d.str() + (n > 1 ? "_" + std::to_string(i) : ""), c.module});
  }
  for (auto& [name, by_deg] : c.products)
    for (auto& [d, m] : by_deg) {
      auto src = first.find(d);
      const Deg3 sh = c.product_degree.at(name);
      auto dst = first.find({d.s + sh.s, d.f + sh.f, d.w + sh.w});
      if (src == first.end() || dst == first.end()) continue;
      for (int i = 0; i < m.nrows(); ++i)
        for (int j = 0; j < m.cols; ++j)
          if (m.rows[i].get(j)) doc.edges.push_back({src->second + i, dst->second + j, name, 0});
    }
  return doc;
}

ChartDocument chart_from_page(const SSPage& page, const std::string& producer) {
  ChartDocument doc;
  doc.field = page.field.name();
  doc.prime = page.field.p;
  doc.window = page.window;
  doc.producer = producer;
  std::map<ClassKey, int> index;
  for (auto& cl : page.classes) {
    index[cl.key] = static_cast<int>(doc.classes.size());
    doc.classes.push_back({cl.deg, page.name(cl.key), page.blocks[std::get<0>(cl.key)].label});
  }
  auto link = [&](int i, const ClassKey& to, const std::string& kind) {
    auto it = index.find(to);
    if (it != index.end()) doc.edges.push_back({i, it->second, kind, 0});
  };
  const CoefficientRing& R = *page.ring;
  for (auto& cl : page.classes) {
    const int i = index[cl.key];
    const auto& [bi, c, a, b] = cl.key;
    link(i, {bi, c, a + 1, b}, "v0");
    const auto& B = page.blocks[bi];
    if (B.has(c, a, b + 1))
      link(i, {bi, c, a, b + 1}, "v1");
    else if (B.v1_into >= 0)
      link(i, {B.v1_into, c, a + B.v1_da, b}, "v1");
    for (int g = 0; g < R.ngens(); ++g) {
      Mono out;
      if (R.mul(c, R.gen_mono(g), out) == 0) continue;
      link(i, {bi, out, a, b}, R.gen(g).name);
    }
    if (cl.dies && cl.source && cl.partner >= 0)
      doc.edges.push_back({i, cl.partner, "d", cl.dies});
  }
  return doc;
}

ChartDocument chart_from_homotopy(const HomotopyTable& T, const std::string& producer) {
  ChartDocument doc;
  doc.field = T.field;
  doc.prime = T.p;
  doc.window = T.window;
  doc.producer = producer;
  for (auto& [d, v] : T.groups)
    for (auto& g : v)
      doc.classes.push_back(
          {{d.s, g.f, d.w}, group_name(T.p, g.log_order) + " " + g.generator, g.summand});
  return doc;
}

std::string to_json(const ChartDocument& doc) {
  json j;
  j["schema"] = "chart/v1";
  j["metadata"] = {{"field", doc.field},
                   {"prime", doc.prime},
                   {"producer", doc.producer},
                   {"window",
                    {{"s_min", doc.window.s_min},
                     {"s_max", doc.window.s_max},
                     {"f_max", doc.window.f_max},
                     {"w_min", doc.window.w_min},
                     {"w_max", doc.window.w_max}}}};
  j["classes"] = json::array();
  for (auto& c : doc.classes)
    j["classes"].push_back({{"s", c.deg.s},
                            {"f", c.deg.f},
                            {"w", c.deg.w},
                            {"label", c.label},
                            {"summand", c.summand}});
  j["edges"] = json::array();
  for (auto& e : doc.edges) {
    json x{{"source", e.source}, {"target", e.target}, {"kind", e.kind}};
    if (e.kind == "d") x["r"] = e.r;
    j["edges"].push_back(x);
  }
  return j.dump(1);
}

ChartDocument parse_chart(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("chart: ") + e.what());
  }
  if (!j.is_object() || j.value("schema", "") != "chart/v1")
    throw ConfigError("chart: schema must be \"chart/v1\"");
  ChartDocument doc;
  try {
    const auto& m = j.at("metadata");
    doc.field = m.at("field").get<std::string>();
    doc.prime = m.at("prime").get<int>();
    doc.producer = m.value("producer", "");
    const auto& w = m.at("window");
    doc.window = {w.at("s_min").get<int>(), w.at("s_max").get<int>(), w.at("f_max").get<int>(),
                  w.at("w_min").get<int>(), w.at("w_max").get<int>()};
    for (auto& c : j.at("classes"))
      doc.classes.push_back({{c.at("s").get<int>(), c.at("f").get<int>(), c.at("w").get<int>()},
                             c.value("label", ""),
                             c.value("summand", "")});
    for (auto& e : j.at("edges"))
      doc.edges.push_back({e.at("source").get<int>(), e.at("target").get<int>(),
                           e.at("kind").get<std::string>(), e.value("r", 0)});
  } catch (const json::exception& e) {
    throw ConfigError(std::string("chart: ") + e.what());
  }
  if (auto err = validate(doc); !err.empty()) throw ConfigError("chart: " + err);
  return doc;
}

std::string render_svg(const ChartDocument& doc, const RenderOptions& opt) {
  const int n = static_cast<int>(doc.classes.size());
  std::vector<bool> visible(n, true);
  if (opt.collapse_tau)
    for (auto& e : doc.edges)
      if (e.kind == "tau" || e.kind == "zeta") visible[e.target] = false;

  // v_0-chains that reach the top of the window are drawn as a dot with an arrow
  std::vector<int> v0_next(n, -1);
  std::vector<bool> v0_target(n, false);
  for (auto& e : doc.edges)
    if (e.kind == "v0" && visible[e.source] && visible[e.target] && v0_next[e.source] < 0) {
      v0_next[e.source] = e.target;
      v0_target[e.target] = true;
    }
  std::vector<bool> arrow(n, false);
  for (int i = 0; i < n; ++i) {
    if (!visible[i] || v0_target[i]) continue;
    int j = i;
    std::vector<int> chain;
    while (v0_next[j] >= 0 && chain.size() < static_cast<size_t>(n)) {
      j = v0_next[j];
      chain.push_back(j);
    }
    if (!chain.empty() && doc.classes[j].deg.f >= doc.window.f_max) {
      arrow[i] = true;
      for (int c : chain) visible[c] = false;
    }
  }

  int s_lo = doc.window.s_min, s_hi = doc.window.s_max, f_hi = doc.window.f_max;
  for (int i = 0; i < n; ++i) {
    const Deg3 d = doc.classes[i].deg;
    s_lo = std::min(s_lo, d.s);
    s_hi = std::max(s_hi, d.s);
    f_hi = std::max(f_hi, d.f);
  }
  const int cell = opt.cell, margin = 2 * cell;
  const int width = (s_hi - s_lo + 1) * cell + 2 * margin;
  const int height = (f_hi + 1) * cell + 2 * margin;
  auto X = [&](int s) { return margin + (s - s_lo) * cell + cell / 2.0; };
  auto Y = [&](int f) { return margin + (f_hi - f) * cell + cell / 2.0; };

  // position within a cell: visible classes side by side in document order
  std::map<std::pair<int, int>, std::vector<int>> at;
  for (int i = 0; i < n; ++i)
    if (visible[i]) at[{doc.classes[i].deg.s, doc.classes[i].deg.f}].push_back(i);
  std::vector<double> px(n), py(n);
  for (auto& [sf, v] : at) {
    const double step = std::min(cell * 0.3, cell * 0.8 / static_cast<double>(v.size()));
    for (size_t k = 0; k < v.size(); ++k) {
      px[v[k]] = X(sf.first) + (static_cast<double>(k) - (v.size() - 1) / 2.0) * step;
      py[v[k]] = Y(sf.second);
    }
  }
  std::map<std::string, int> color;
  for (auto& c : doc.classes)
    if (!color.count(c.summand)) {
      const int k = static_cast<int>(color.size());
      color[c.summand] = k;
    }

  std::string o;
  o += R"(<?xml version="1.0" encoding="UTF-8"?>)"
       "\n";
  o += fmt::format(
      R"(<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">)"
      "\n",
      width, height, width, height);
  o += fmt::format("<title>{} p={} {}</title>\n", xml_escape(doc.field), doc.prime,
                   xml_escape(doc.producer));
  o += fmt::format(R"(<rect x="0" y="0" width="{}" height="{}" fill="white"/>)"
                   "\n",
                   width, height);
  o += R"(<g stroke="#e0e0e0" stroke-width="1">)"
       "\n";
  for (int s = s_lo; s <= s_hi + 1; ++s) {
    const int x = margin + (s - s_lo) * cell;
    o += fmt::format(R"(<line x1="{}" y1="{}" x2="{}" y2="{}"/>)"
                     "\n",
                     x, margin, x, height - margin);
  }
  for (int f = 0; f <= f_hi + 1; ++f) {
    const int y = margin + f * cell;
    o += fmt::format(R"(<line x1="{}" y1="{}" x2="{}" y2="{}"/>)"
                     "\n",
                     margin, y, width - margin, y);
  }
  o += "</g>\n";
  o += R"(<g font-family="sans-serif" font-size="10" fill="#404040" text-anchor="middle">)"
       "\n";
  for (int s = s_lo; s <= s_hi; ++s)
    o += fmt::format(R"(<text x="{:.1f}" y="{}">{}</text>)"
                     "\n",
                     X(s), height - margin + 14, s);
  for (int f = 0; f <= f_hi; ++f)
    o += fmt::format(R"(<text x="{}" y="{:.1f}">{}</text>)"
                     "\n",
                     margin - 10, Y(f) + 3, f);
  o += "</g>\n";

  o += R"(<g stroke-width="1.2" fill="none">)"
       "\n";
  for (auto& e : doc.edges) {
    if (!visible[e.source] || !visible[e.target]) continue;
    const bool diff = e.kind == "d";
    const char* stroke = diff ? "#c00000" : "#202020";
    o += fmt::format(R"(<line x1="{:.1f}" y1="{:.1f}" x2="{:.1f}" y2="{:.1f}" stroke="{}"{}>)",
                     px[e.source], py[e.source], px[e.target], py[e.target], stroke,
                     diff ? R"( stroke-dasharray="3,2")" : "");
    o += fmt::format("<title>{}{}</title></line>\n", xml_escape(e.kind),
                     diff ? std::to_string(e.r) : "");
  }
  for (int i = 0; i < n; ++i) {
    if (!arrow[i]) continue;
    const double top = margin - cell / 4.0;
    o += fmt::format(R"(<line x1="{:.1f}" y1="{:.1f}" x2="{:.1f}" y2="{:.1f}" stroke="#202020"/>)"
                     "\n",
                     px[i], py[i], px[i], top);
    o += fmt::format(R"(<path d="M {:.1f} {:.1f} L {:.1f} {:.1f} L {:.1f} {:.1f} Z" fill="#202020"/>)"
                     "\n",
                     px[i] - 3, top + 5, px[i], top, px[i] + 3, top + 5);
  }
  o += "</g>\n<g>\n";
  for (int i = 0; i < n; ++i) {
    if (!visible[i]) continue;
    const auto& c = doc.classes[i];
    o += fmt::format(R"(<circle cx="{:.1f}" cy="{:.1f}" r="{:.1f}" fill="{}">)", px[i], py[i],
                     cell * 0.1 + 1, kPalette[color[c.summand] % 12]);
    o += fmt::format("<title>{} (s,f,w)={}{}</title></circle>\n", xml_escape(c.label),
                     c.deg.str(), c.summand.empty() ? "" : " [" + xml_escape(c.summand) + "]");
  }
  o += "</g>\n</svg>\n";
  return o;
}

std::string module_json(const FinModule& M) {
  const CoefficientRing& R = M.ring();
  json j;
  j["schema"] = "module/v1";
  j["field"] = R.spec().name();
  j["prime"] = M.p();
  j["algebra"] = "E" + std::to_string(M.E().n());
  j["tag"] = M.tag;
  j["truncated"] = M.truncated;
  j["basis"] = json::array();
  for (auto& b : M.basis()) j["basis"].push_back({{"label", b.label}, {"s", b.deg.s}, {"w", b.deg.w}});
  j["action"] = json::array();
  for (int K = 1; K < M.E().size(); ++K)
    for (int b = 0; b < M.rank(); ++b) {
      const AComb& v = M.action(K, b);
      if (v.empty()) continue;
      json terms = json::array();
      for (auto& t : v) {
        json coef = json::array();
        for (auto& x : t.coef) coef.push_back({{"mono", R.name(x.m)}, {"c", x.c}});
        terms.push_back({{"target", t.b}, {"coef", coef}});
      }
      j["action"].push_back({{"op", M.E().mask_name(K)}, {"source", b}, {"terms", terms}});
    }
  return j.dump(1);
}

}  // namespace motivic
