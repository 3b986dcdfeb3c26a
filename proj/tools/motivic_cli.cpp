#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <regex>
#include <sstream>

#include "motivic/chart_io.hpp"
#include "motivic/margolis.hpp"
#include "motivic/suites.hpp"

using namespace motivic;
using nlohmann::json;

namespace {

// bad values of well-formed flags
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string field = "C";
  int prime = 2;
  std::string window;
  std::string out;
  std::string format;
};

void add_common(CLI::App* c, Common& o, const std::string& default_format,
                const std::vector<std::string>& formats) {
  c->add_option("--field", o.field, "C, R or Fq:<q>")->capture_default_str();
  c->add_option("--prime", o.prime, "2 or an odd prime")->capture_default_str();
  c->add_option("--window", o.window, "s=a..b,f=0..c,w=a..b");
  c->add_option("--out", o.out, "output file (default stdout)");
  o.format = default_format;
  c->add_option("--format", o.format)
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
}

FieldSpec field_of(const Common& o) {
  try {
    return FieldSpec::parse(o.field, o.prime);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

Window parse_window(const std::string& text, Window w) {
  if (text.empty()) return w;
  static const std::regex part(R"(\s*([sfw])\s*=\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*)");
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::smatch m;
    if (!std::regex_match(item, m, part)) throw UsageError("bad window item '" + item + "'");
    const int a = std::stoi(m[2]), b = std::stoi(m[3]);
    if (a > b) throw UsageError("empty window range '" + item + "'");
    switch (m[1].str()[0]) {
      case 's': w.s_min = a, w.s_max = b; break;
      case 'w': w.w_min = a, w.w_max = b; break;
      default:
        if (a != 0) throw UsageError("filtration range must start at 0");
        w.f_max = b;
    }
  }
  return w;
}

void emit(const Common& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw std::runtime_error("cannot write " + o.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::string fmt_line(std::initializer_list<int> v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : "\t") + std::to_string(x);
  return s + "\n";
}

std::string chart_tsv(const ExtChart& c) {
  std::string s = "s\tf\tw\tdim\n";
  for (auto& [d, n] : c.dims)
    if (n) s += fmt_line({d.s, d.f, d.w, n});
  return s;
}

FinModule parse_module(const FieldSpec& F, const std::string& spec, int n) {
  static const std::regex re(R"((M|L:(\d+)|BG:(-1|0):(\d+)))");
  std::smatch m;
  if (!std::regex_match(spec, m, re)) throw UsageError("bad module '" + spec + "'");
  auto E = exterior(F, n);
  if (spec == "M") return unit_module(E);
  FinModule M;
  if (spec[0] == 'L') {
    M = lightning_flash(F, std::stoi(m[2]));
  } else {
    const int bn = std::stoi(m[3]);
    M = brown_gitler(F, bn, std::stol(m[4]));
    if (bn + 1 < n) throw UsageError("B_" + m[3].str() + "(k) is only an E(" +
                                     std::to_string(bn + 1) + ")-module");
  }
  return M.E().n() == n ? M : restrict_to(M, E);
}

json parse_json(const std::string& s) { return json::parse(s); }

std::string render_chart(const ChartDocument& doc, const std::string& format) {
  if (format == "svg") return render_svg(doc);
  return to_json(doc);
}

std::string coop_output(const CooperationsResult& R, const std::string& field, int p,
                        const Window& W, const std::string& format, const std::string& what) {
  if (format == "tsv") return R.total.tsv();
  if (format == "chart" || format == "svg") {
    ChartDocument doc = chart_from_homotopy(R.total, what);
    // one color per summand k (or I), not per block
    for (auto& c : doc.classes) c.summand = c.summand.substr(0, c.summand.find('.'));
    doc.field = field;
    doc.prime = p;
    doc.window = W;
    return render_chart(doc, format);
  }
  json j;
  j["schema"] = what + "/v1";
  j["field"] = field;
  j["prime"] = p;
  j["summands"] = json::array();
  for (auto& s : R.summands) {
    json pts = json::array();
    for (Deg d : s.w_points) pts.push_back({d.s, d.w});
    j["summands"].push_back({{"k", s.k},
                             {"I", s.I},
                             {"m", s.m},
                             {"label", s.label},
                             {"free_bottom_cells", pts},
                             {"flags", s.flags},
                             {"table", parse_json(s.table.json())}});
  }
  j["total"] = parse_json(R.total.json());
  return j.dump(1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Motivic Ext, Adams spectral sequence and chart tool"};
  app.set_config("--config", "", "key = value file mirroring the flags");
  app.require_subcommand(1);

  // coefficients
  Common co;
  auto* c_coef = app.add_subcommand("coefficients", "coefficient ring of the base field");
  add_common(c_coef, co, "json", {"json"});

  // ext
  Common ce;
  std::string module = "M", algebra = "E1";
  bool no_products = false;
  auto* c_ext = app.add_subcommand("ext", "Ext chart by minimal resolution");
  add_common(c_ext, ce, "json", {"json", "tsv", "svg", "module"});
  c_ext->add_option("--module", module, "M | L:k | BG:n:k | LL:k:m")->capture_default_str();
  c_ext->add_option("--algebra", algebra)->check(CLI::IsMember({"E0", "E1"}))->capture_default_str();
  c_ext->add_flag("--no-products", no_products, "skip v_0, v_1 and coefficient products");

  // decompose
  Common cd;
  long dk = 0;
  int dn = 0;
  auto* c_dec = app.add_subcommand("decompose", "Brown-Gitler splitting report");
  add_common(c_dec, cd, "json", {"json"});
  c_dec->add_option("--k", dk)->required()->check(CLI::Range(0L, 64L));
  c_dec->add_option("--n", dn, "B_n(k), n in {-1, 0}")->check(CLI::Range(-1, 0))->capture_default_str();

  // homotopy
  Common chm;
  std::string target, convention = "soule";
  auto* c_hom = app.add_subcommand("homotopy", "homotopy of BPGL<0> or BPGL<1>");
  add_common(c_hom, chm, "tsv", {"tsv", "json", "chart", "svg", "page"});
  c_hom->add_option("target", target, "BPGL0 | BPGL1")->required()->check(CLI::IsMember({"BPGL0", "BPGL1"}));
  c_hom->add_option("--convention", convention, "differential pages")
      ->check(CLI::IsMember({"soule", "printed"}))
      ->capture_default_str();

  // cooperations
  Common cc;
  std::string ctarget = "BPGL1";
  int k_max = 4;
  auto* c_coop = app.add_subcommand("cooperations", "homotopy of BPGL<n> ^ BPGL<n> by summand");
  add_common(c_coop, cc, "json", {"json", "tsv", "chart", "svg"});
  c_coop->add_option("--target", ctarget)->check(CLI::IsMember({"BPGL0", "BPGL1"}))->capture_default_str();
  c_coop->add_option("--k-max", k_max)->check(CLI::Range(0, 32))->capture_default_str();

  // nline
  Common cn;
  int nl = 1;
  auto* c_nl = app.add_subcommand("nline", "BPGL<1>-Adams E_1 page, n-line");
  add_common(c_nl, cn, "json", {"json", "tsv", "chart", "svg"});
  c_nl->add_option("--n", nl)->check(CLI::Range(0, 8))->capture_default_str();

  // render
  Common cr;
  std::string in;
  bool no_collapse = false;
  auto* c_ren = app.add_subcommand("render", "SVG from a chart/v1 document");
  c_ren->add_option("--in", in, "chart JSON file, - for stdin")->required();
  c_ren->add_option("--out", cr.out);
  c_ren->add_flag("--no-collapse", no_collapse, "draw tau multiples and towers class by class");

  // verify
  Common cv;
  std::vector<int> suites;
  bool quick = false;
  auto* c_ver = app.add_subcommand("verify", "oracle and closed-form comparison suites");
  c_ver->add_option("--suite", suites, "suite numbers (default all)")->check(CLI::Range(1, suite_count()));
  c_ver->add_flag("--quick", quick, "small windows");
  c_ver->add_option("--out", cv.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (*c_coef) {
      const FieldSpec F = field_of(co);
      CoefficientRing R(F);
      const Window W = parse_window(co.window, Window{-6, 2, 0, -6, 0});
      json j{{"schema", "coefficients/v1"},
             {"field", F.name()},
             {"prime", F.p},
             {"presentation", R.presentation()}};
      j["generators"] = json::array();
      for (int g = 0; g < R.ngens(); ++g)
        j["generators"].push_back({{"name", R.gen(g).name},
                                   {"s", R.gen(g).deg.s},
                                   {"w", R.gen(g).deg.w},
                                   {"square_zero", R.gen(g).square_zero}});
      if (F.kind == FieldKind::Finite) {
        j["q"] = F.q;
        j["order_of_q"] = F.i;
        j["twisted"] = !F.bocksteinTrivial;
      }
      j["ranks"] = json::array();
      for (int s = W.s_min; s <= W.s_max; ++s)
        for (int w = W.w_min; w <= W.w_max; ++w)
          if (auto n = R.basis({s, w}).size()) j["ranks"].push_back({{"s", s}, {"w", w}, {"dim", n}});
      emit(co, j.dump(1));
    } else if (*c_ext) {
      const FieldSpec F = field_of(ce);
      const Window W = parse_window(ce.window, Window{});
      const int n = algebra == "E1" ? 1 : 0;
      ExtChart chart;
      static const std::regex ll(R"(LL:(\d+):(\d+))");
      std::smatch m;
      if (std::regex_match(module, m, ll)) {
        if (n != 1) throw UsageError("Ext(L(k), L(m)) is over E1");
        if (ce.format == "module") throw UsageError("LL:k:m is a pair of modules");
        chart = ext_bimodule(F, std::stoi(m[1]), std::stoi(m[2]), W, !no_products);
      } else {
        FinModule M = parse_module(F, module, n);
        if (ce.format == "module") {
          emit(ce, module_json(M));
          return 0;
        }
        chart = ext_chart(M, W, !no_products);
        chart.module = module;
      }
      if (ce.format == "tsv")
        emit(ce, chart_tsv(chart));
      else
        emit(ce, render_chart(chart_from_ext(chart, "ext " + module + " " + algebra), ce.format));
    } else if (*c_dec) {
      const FieldSpec F = field_of(cd);
      FinModule B = brown_gitler(F, dn, dk);
      const std::string name = "B_" + std::to_string(dn) + "(" + std::to_string(dk) + ")";
      auto S = split_free_summands(B);
      const int nu_k = nu_factorial(dk, F.p);
      json j{{"schema", "decompose/v1"},
             {"field", F.name()},
             {"prime", F.p},
             {"module", name},
             {"algebra", "E" + std::to_string(dn + 1)},
             {"rank", B.rank()},
             {"nu_p_k_factorial", nu_k},
             // the modules are finite, so verdicts cover every degree
             {"verdict_scope", B.truncated ? "window" : "whole module"}};
      json core{{"rank", S.core.rank()}};
      if (dn == 0) {
        auto f = find_stable_equivalence(lightning_flash(F, nu_k), S.core);
        core["label"] = f ? "L(" + std::to_string(nu_k) + ")" : "unidentified";
        core["stably_equivalent_to_L_nu"] = f.has_value();
      } else {
        core["label"] = S.core.rank() == 0 ? "0" : S.core.rank() == 1 ? "M" : "unidentified";
      }
      j["core"] = core;
      j["free"] = json::array();
      for (Deg t : S.free) j["free"].push_back({{"top", {t.s, t.w}}});
      for (int i = 0; i <= dn + 1; ++i) {
        json h = json::array();
        for (auto& [d, k] : margolis_homology(B, i).dims) h.push_back({{"s", d.s}, {"w", d.w}, {"dim", k}});
        j["margolis"]["Q" + std::to_string(i)] = h;
      }
      j["is_free"] = is_free(B);
      emit(cd, j.dump(1));
    } else if (*c_hom) {
      const FieldSpec F = field_of(chm);
      const Window W = parse_window(chm.window, Window{-6, 10, 12, -8, 4});
      const Target t = parse_target(target);
      const auto conv = convention == "soule" ? PageConvention::Soule : PageConvention::Printed;
      if (chm.format == "page") {
        auto page = run_ss(bpgl_e2(F, t, W), differential_rules(F, t, 6, conv));
        emit(chm, to_json(chart_from_page(page, "homotopy " + target)));
      } else {
        auto T = bpgl_homotopy(F, t, W, conv);
        if (chm.format == "tsv")
          emit(chm, T.tsv());
        else if (chm.format == "json")
          emit(chm, T.json());
        else
          emit(chm, render_chart(chart_from_homotopy(T, "homotopy " + target),
                                 chm.format == "svg" ? "svg" : "json"));
        if (!T.flags.empty()) {
          std::cerr << json{{"warning", T.flags}}.dump() << "\n";
          return 1;
        }
      }
    } else if (*c_coop) {
      const FieldSpec F = field_of(cc);
      const Window W = parse_window(cc.window, Window{-6, 12, 8, -6, 8});
      auto R = cooperations(parse_target(ctarget), F, k_max, W);
      emit(cc, coop_output(R, F.name(), F.p, W, cc.format, "cooperations"));
    } else if (*c_nl) {
      const FieldSpec F = field_of(cn);
      const Window W = parse_window(cn.window, Window{-6, 12, 8, -6, 8});
      auto R = n_line(nl, F, W);
      emit(cn, coop_output(R, F.name(), F.p, W, cn.format, "nline"));
    } else if (*c_ren) {
      std::stringstream buf;
      if (in == "-") {
        buf << std::cin.rdbuf();
      } else {
        std::ifstream f(in);
        if (!f) throw UsageError("cannot read " + in);
        buf << f.rdbuf();
      }
      RenderOptions opt;
      opt.collapse_tau = !no_collapse;
      emit(cr, render_svg(parse_chart(buf.str()), opt));
    } else if (*c_ver) {
      if (suites.empty())
        for (int i = 1; i <= suite_count(); ++i) suites.push_back(i);
      std::vector<SuiteResult> res;
      bool ok = true;
      for (int id : suites) {
        res.push_back(run_suite(id, quick));
        ok &= res.back().pass();
      }
      emit(cv, suite_json(res));
      return ok ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cout << json{{"error", {{"kind", "usage"}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cout << json{{"error", {{"kind", "config"}, {"message", e.what()}}}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cout << json{{"error", {{"kind", "computation"}, {"message", e.what()}}}}.dump() << "\n";
    return 1;
  }
  return 0;
}
