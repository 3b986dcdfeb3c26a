#include "motivic/closed_forms.hpp"

#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>

namespace motivic {

CaseDescriptor CaseDescriptor::parse(const std::string& s, const FieldSpec& field) {
  CaseDescriptor c;
  c.field = field;
  int k = 0, m = 0;
  if (s == "ExtE0") {
    c.kind = Kind::ExtE0;
  } else if (s == "ExtE1") {
    c.kind = Kind::ExtE1;
  } else if (std::sscanf(s.c_str(), "ExtLL:%d:%d", &k, &m) == 2) {
    c.kind = Kind::ExtLL;
    c.k = k;
    c.m = m;
  } else if (std::sscanf(s.c_str(), "ExtL:%d", &m) == 1) {
    c.kind = Kind::ExtL;
    c.m = m;
  } else {
    throw std::invalid_argument("unsupported descriptor: " + s);
  }
  if (c.k < 0 || c.m < 0) throw std::invalid_argument("unsupported descriptor: " + s);
  return c;
}

std::string CaseDescriptor::str() const {
  switch (kind) {
    case Kind::ExtE0: return "ExtE0";
    case Kind::ExtE1: return "ExtE1";
    case Kind::ExtL: return "ExtL:" + std::to_string(m);
    case Kind::ExtLL: return "ExtLL:" + std::to_string(k) + ":" + std::to_string(m);
  }
  return "";
}

MonoPred ext_unit_presentation(const FieldSpec& spec, int n) {
  const int p = spec.p;
  auto v1_ok = [n](int b) { return n == 1 || b == 0; };
  if (spec.kind == FieldKind::Real && p == 2) {
    // F_2[rho, tau^4, v_0, tau^2 v_0, v_1]/(rho v_0, rho^3 v_1), (tau^2 v_0)^2 = tau^4 v_0^2
    // over E(0): F_2[rho, tau^2, v_0]/(rho v_0)
    return [n, v1_ok](const Mono& c, int a, int b) {
      const int r = c.e[0], t = c.e[1];
      if (!v1_ok(b)) return false;
      if (n == 0) return t % 2 == 0 && (r == 0 || a == 0);
      if (r > 0) return a == 0 && t % 4 == 0 && (r < 3 || b == 0);
      return a == 0 ? t % 4 == 0 : t % 2 == 0;
    };
  }
  if (spec.kind == FieldKind::Finite && !spec.bocksteinTrivial) {
    // F_p[z, t^p, v_0, (v_1), z t, ..., z t^{p-1}]/(z^2, z v_0, products of the z t^j)
    return [p, v1_ok](const Mono& c, int a, int b) {
      if (!v1_ok(b)) return false;
      const int z = c.e[0], t = c.e[1];
      if (z == 0) return t % p == 0;
      return t % p != 0 || a == 0;
    };
  }
  // coefficients tensor F_p[v_0] or F_p[v_0, v_1]
  return [v1_ok](const Mono&, int, int b) { return v1_ok(b); };
}

namespace {

Deg3 v0_deg() { return {0, 1, 0}; }
Deg3 v1_deg(int p) { return {2 * (p - 1), 1, p - 1}; }

ClassBlock block(std::string label, std::string summand, Deg3 base, MonoPred has) {
  return {std::move(label), std::move(summand), base, std::move(has), -1, 1};
}

}  // namespace

// E(0)-copies on x_0..x_{m-1}, an E(1)-copy on x_m, v_1 x_i = v_0 x_{i+1}
std::vector<ClassBlock> lightning_blocks(const FieldSpec& spec, int m, const MonoPred& e0,
                                         const MonoPred& e1) {
  const int p = spec.p;
  std::vector<ClassBlock> out;
  for (int i = 0; i <= m; ++i) {
    out.push_back(block("x" + std::to_string(i), "x", {2 * i * (p - 1), 0, i * (p - 1)},
                        i < m ? e0 : e1));
    if (i < m) out.back().v1_into = i + 1;
  }
  return out;
}

// Ext(L(k), L(m)) through the long exact sequences of
// 0 -> Sigma^{2(p-1),p-1} L(k-1) -> L(k) -> (E(1)//E(0))^v -> 0,
// the third term computed by the wrong-side change of rings; the only differential
// runs from the lowest x-tower to the y-tower, d(c v_0^a x) = c v_0^{a+e} y
std::vector<ClassBlock> bimodule_blocks(const FieldSpec& spec, int k, int m, const MonoPred& e0,
                                        const MonoPred& e1) {
  const int p = spec.p;
  std::vector<ClassBlock> blocks = lightning_blocks(spec, m, e0, e1);
  std::vector<int> xs;
  for (int i = 0; i <= m; ++i) xs.push_back(i);
  int newest_y = -1;
  const MonoPred point = [](const Mono&, int a, int b) { return a == 0 && b == 0; };
  for (int step = 1; step <= k; ++step) {
    for (auto& b : blocks) {
      b.base.s -= 2 * (p - 1);
      b.base.w -= p - 1;
    }
    const int e = step <= m ? 1 : step - m;
    const int xb = xs.front();
    const MonoPred hx = blocks[xb].has;
    MonoPred xsurv = [hx, e0, e](const Mono& c, int a, int b) {
      return hx(c, a, b) && (b >= 1 || !e0(c, a + e, 0));
    };
    MonoPred ysurv = [hx, e0, e](const Mono& c, int a, int b) {
      return e0(c, a, b) && !(a >= e && hx(c, a - e, 0));
    };
    const Deg3 xbase = blocks[xb].base;
    if (step <= m) {
      blocks[xb] = block("ker" + std::to_string(step), "B", xbase, xsurv);
      xs.erase(xs.begin());
      for (size_t j = 0; j < xs.size(); ++j) blocks[xs[j]].label = "x" + std::to_string(j);
    } else {
      const Deg3 v1 = v1_deg(p);
      blocks[xb] = block("x", "x", {xbase.s + v1.s, xbase.f + v1.f, xbase.w + v1.w},
                         [hx](const Mono& c, int a, int b) { return hx(c, a, b + 1); });
      blocks.push_back(block("ker" + std::to_string(step), "B", xbase,
                             [xsurv](const Mono& c, int a, int b) {
                               return b == 0 && xsurv(c, a, 0);
                             }));
      // v_1 (c x) = c (v_1 x) lands in the relabelled block
      blocks.back().v1_into = xb;
      blocks.back().v1_da = 0;
    }
    blocks.push_back(block("y" + std::to_string(step), step <= m ? "B" : "y",
                           {-(2 * p - 1), 0, -(p - 1)}, ysurv));
    const int y = static_cast<int>(blocks.size()) - 1;
    if (newest_y >= 0) blocks[newest_y].v1_into = y;
    newest_y = y;
    for (int i = 1; i <= m; ++i)
      blocks.push_back(block("w" + std::to_string(step) + "." + std::to_string(i), "W",
                             {2 * (i - 1) * (p - 1) - 1, 0, (i - 1) * (p - 1)}, point));
  }
  return blocks;
}

std::vector<ClassBlock> closed_form_blocks(const CaseDescriptor& c) {
  switch (c.kind) {
    case CaseDescriptor::Kind::ExtE0:
      return {block("1", "x", {0, 0, 0}, ext_unit_presentation(c.field, 0))};
    case CaseDescriptor::Kind::ExtE1:
      return {block("1", "x", {0, 0, 0}, ext_unit_presentation(c.field, 1))};
    case CaseDescriptor::Kind::ExtL:
      return lightning_blocks(c.field, c.m, ext_unit_presentation(c.field, 0),
                              ext_unit_presentation(c.field, 1));
    case CaseDescriptor::Kind::ExtLL:
      return bimodule_blocks(c.field, c.k, c.m, ext_unit_presentation(c.field, 0),
                             ext_unit_presentation(c.field, 1));
  }
  throw std::invalid_argument("unsupported descriptor");
}

ExtChart closed_form_chart(const CaseDescriptor& cd, const Window& win) {
  ExtChart chart = blocks_chart(cd.field, closed_form_blocks(cd), win);
  chart.module = cd.str();
  chart.algebra = cd.kind == CaseDescriptor::Kind::ExtE0 ? "E0" : "E1";
  return chart;
}

ExtChart blocks_chart(const FieldSpec& spec, const std::vector<ClassBlock>& blocks,
                      const Window& win) {
  const int p = spec.p;
  const CoefficientRing R(spec);

  ExtChart chart;
  chart.field = spec.name();
  chart.algebra = "E1";
  chart.p = p;
  chart.window = win;

  using Key = std::tuple<int, Mono, int, int>;  // block, c, a, b
  std::map<Deg3, std::vector<Key>> classes;
  std::map<Key, std::pair<Deg3, int>> where;
  const Deg3 v1 = v1_deg(p);
  for (int bi = 0; bi < static_cast<int>(blocks.size()); ++bi) {
    const auto& B = blocks[bi];
    for (int b = 0; B.base.f + b <= win.f_max; ++b)
      for (int a = 0; B.base.f + a + b <= win.f_max; ++a)
        for (int s = win.s_min; s <= win.s_max; ++s)
          for (int w = win.w_min; w <= win.w_max; ++w) {
            const Deg cd0{s - B.base.s - b * v1.s, w - B.base.w - b * v1.w};
            for (const Mono& c : R.basis(cd0)) {
              if (!B.has(c, a, b)) continue;
              const Deg3 d{s, B.base.f + a + b, w};
              Key key{bi, c, a, b};
              where[key] = {d, static_cast<int>(classes[d].size())};
              classes[d].push_back(key);
            }
          }
  }
  for (auto& [d, v] : classes) chart.dims[d] = static_cast<int>(v.size());

  chart.product_degree["v0"] = v0_deg();
  chart.product_degree["v1"] = v1;
  auto target = [&](const Key& key, bool is_v1) -> std::optional<Key> {
    auto [bi, c, a, b] = key;
    const auto& B = blocks[bi];
    if (!is_v1) {
      if (B.has(c, a + 1, b)) return Key{bi, c, a + 1, b};
      return std::nullopt;
    }
    if (B.has(c, a, b + 1)) return Key{bi, c, a, b + 1};
    if (B.v1_into >= 0 && blocks[B.v1_into].has(c, a + B.v1_da, b))
      return Key{B.v1_into, c, a + B.v1_da, b};
    return std::nullopt;
  };
  for (const char* name : {"v0", "v1"}) {
    const bool is_v1 = name[1] == '1';
    const Deg3 pd = chart.product_degree[name];
    for (auto& [d, v] : classes) {
      const Deg3 e{d.s + pd.s, d.f + pd.f, d.w + pd.w};
      if (!win.contains(e)) continue;
      Matrix M(p, static_cast<int>(v.size()), chart.dim(e));
      for (int r = 0; r < static_cast<int>(v.size()); ++r) {
        auto t = target(v[r], is_v1);
        if (!t) continue;
        auto it = where.find(*t);
        if (it == where.end()) continue;
        M.rows[r].set(it->second.second, 1);
      }
      chart.products[name][d] = std::move(M);
    }
  }
  tag_torsion(chart);
  return chart;
}

std::vector<std::string> compare_charts(const ExtChart& computed, const ExtChart& expected,
                                        bool check_products) {
  std::vector<std::string> out;
  std::map<Deg3, std::pair<int, int>> all;
  for (auto& [d, n] : computed.dims)
    if (expected.window.contains(d)) all[d].first = n;
  for (auto& [d, n] : expected.dims)
    if (computed.window.contains(d)) all[d].second = n;
  for (auto& [d, pr] : all)
    if (pr.first != pr.second)
      out.push_back("dim " + d.str() + ": computed " + std::to_string(pr.first) + ", expected " +
                    std::to_string(pr.second));
  if (!check_products) return out;
  for (const char* name : {"v0", "v1"}) {
    auto ci = computed.products.find(name);
    auto ei = expected.products.find(name);
    if (ci == computed.products.end() || ei == expected.products.end()) continue;
    for (auto& [d, M] : ei->second) {
      auto it = ci->second.find(d);
      if (it == ci->second.end()) continue;
      if (computed.dim(d) != expected.dim(d)) continue;
      const int rc = rank(it->second), re = rank(M);
      if (rc != re)
        out.push_back(std::string(name) + " rank at " + d.str() + ": computed " +
                      std::to_string(rc) + ", expected " + std::to_string(re));
    }
  }
  return out;
}

}  // namespace motivic
