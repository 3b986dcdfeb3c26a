#include "motivic/adams.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "motivic/margolis.hpp"

namespace motivic {

Target parse_target(const std::string& s) {
  if (s == "BPGL0" || s == "0") return Target::BPGL0;
  if (s == "BPGL1" || s == "1") return Target::BPGL1;
  throw ConfigError("unknown target: " + s);
}

std::string target_name(Target t) { return t == Target::BPGL0 ? "BPGL0" : "BPGL1"; }

namespace {

Deg3 v1_deg(int p) { return {2 * (p - 1), 1, p - 1}; }

// nu_p(q^N - 1), computed modulo the largest power of p below 2^62
int nu_pow_minus_one(long q, long long N, int p) {
  unsigned long long mod = 1;
  int kmax = 0;
  while (mod <= (1ULL << 62) / static_cast<unsigned>(p)) {
    mod *= p;
    ++kmax;
  }
  unsigned __int128 base = static_cast<unsigned long long>(q) % mod, acc = 1;
  for (long long e = N; e; e >>= 1) {
    if (e & 1) acc = acc * base % mod;
    base = base * base % mod;
  }
  unsigned long long x = (static_cast<unsigned long long>(acc) + mod - 1) % mod;
  if (x == 0) throw std::overflow_error("valuation exceeds working precision");
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

std::string v0_str(int a) {
  if (a == 0) return "";
  return a == 1 ? "v0" : "v0^" + std::to_string(a);
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (auto& s : parts)
    if (!s.empty() && s != "1") out += (out.empty() ? "" : " ") + s;
  return out.empty() ? "1" : out;
}

Deg3 plus(Deg3 a, Deg3 b) { return {a.s + b.s, a.f + b.f, a.w + b.w}; }

// bottom cell of a free E(n)-module with the given top cell
Deg free_bottom(const FieldSpec& spec, int n, Deg top) {
  auto E = exterior(spec, n);
  return top - E->degree(E->size() - 1);
}

ClassBlock point_block(std::string label, Deg d) {
  return {std::move(label), "W", {d.s, 0, d.w},
          [](const Mono&, int a, int b) { return a == 0 && b == 0; }, -1, 1};
}

// largest family index needed for classes of weight down to w_min
int rule_depth(const FieldSpec& spec, const Window& win, int extra_weight = 0) {
  const long span = static_cast<long>(win.w_max - win.w_min) + (spec.p - 1) * win.f_max +
                    extra_weight + 2;
  int s = 0;
  for (long pw = 1; pw <= span; pw *= spec.p) ++s;
  return s;
}

struct Diff {
  int r;
  ClassKey other;
  bool is_source;
};

const DifferentialRule* rule_for(const std::vector<DifferentialRule>& rules, int s) {
  for (auto& d : rules)
    if (d.s == s) return &d;
  return nullptr;
}

// the differential a class takes part in, if the rules give one; the partner need not exist
std::optional<Diff> find_diff(const SSPage& P, const ClassKey& k) {
  if (P.rules.empty()) return std::nullopt;
  const auto& [bi, c, a, b] = k;
  const auto& B = P.blocks[bi];
  if (B.summand != "x") return std::nullopt;
  const int p = P.field.p;
  if (c.e[0] == 0 && c.e[1] > 0) {
    const int n = c.e[1];
    const auto* d = rule_for(P.rules, nu(n, p));
    if (!d) return std::nullopt;
    Mono t;
    t.e = {1, static_cast<int16_t>(n - 1)};
    return Diff{d->r, ClassKey{bi, t, a + d->r, b}, true};
  }
  if (c.e[0] == 1) {
    const int n = c.e[1] + 1;
    const auto* d = rule_for(P.rules, nu(n, p));
    if (!d || a < d->r) return std::nullopt;
    Mono src;
    src.e = {0, static_cast<int16_t>(n)};
    ClassKey sk{bi, src, a - d->r, b};
    if (!B.has(src, a - d->r, b)) return std::nullopt;
    return Diff{d->r, sk, false};
  }
  return std::nullopt;
}

bool block_has(const SSPage& P, const ClassKey& k) {
  const auto& [bi, c, a, b] = k;
  if (a < 0 || b < 0) return false;
  return P.blocks[bi].has(c, a, b);
}

}  // namespace

std::vector<DifferentialRule> differential_rules(const FieldSpec& spec, Target t, int s_max,
                                                 PageConvention conv) {
  std::vector<DifferentialRule> out;
  if (spec.kind != FieldKind::Finite) return out;
  const CoefficientRing R(spec);
  const int p = spec.p;
  const long q = spec.q;
  const bool twisted = !spec.bocksteinTrivial;
  const std::string z = R.gen(0).name, tn = R.gen(1).name;
  for (int s = twisted ? 1 : 0; s <= s_max; ++s) {
    const long long ps = ipow(p, s);
    int r = 0;
    if (conv == PageConvention::Soule) {
      r = nu_pow_minus_one(q, spec.i * ps, p);
    } else if (p == 2) {
      r = (twisted ? nu(static_cast<long long>(q) * q - 1, 2) : nu(q - 1, 2)) + s;
    } else {
      r = nu_pow_minus_one(q, twisted ? static_cast<long long>(p) * spec.i : spec.i, p) + s;
    }
    DifferentialRule d;
    d.s = s;
    d.r = r;
    d.source.e = {0, static_cast<int16_t>(ps)};
    d.target.e = {1, static_cast<int16_t>(ps - 1)};
    d.target_v0 = r;
    const Deg sd = R.degree(d.source), td = R.degree(d.target);
    d.source_deg = {sd.s, 0, sd.w};
    d.target_deg = {td.s, r, td.w};
    d.scope = {"v0", "coefficients", "x_i"};
    if (t == Target::BPGL1) d.scope.insert(d.scope.begin() + 1, "v1");
    d.str = "d_" + std::to_string(r) + "(" + R.name(d.source) + ") = " +
            join({R.name(d.target), v0_str(r)});
    out.push_back(std::move(d));
  }
  return out;
}

bool degree_law_holds(const FieldSpec& spec, const DifferentialRule& d) {
  const CoefficientRing R(spec);
  const Deg sd = R.degree(d.source), td = R.degree(d.target);
  return d.source_deg == Deg3{sd.s, 0, sd.w} && d.target_deg == Deg3{td.s, d.target_v0, td.w} &&
         d.target_v0 == d.r && d.target_deg == plus(d.source_deg, {-1, d.r, 0});
}

MonoPred bockstein_presentation(const FieldSpec& spec, int n) {
  if (spec.kind != FieldKind::Finite)
    throw std::invalid_argument("no square-zero twist generator over " + spec.name());
  auto v1_ok = [n](int b) { return n == 1 || b == 0; };
  if (spec.bocksteinTrivial) return [v1_ok](const Mono&, int, int b) { return v1_ok(b); };
  const int p = spec.p;
  // cycles: z-multiples and t^k with p | k; boundaries: z t^{k-1} v_0^{a+1} with p not | k
  return [p, v1_ok](const Mono& c, int a, int b) {
    if (!v1_ok(b)) return false;
    if (c.e[0] == 0) return c.e[1] % p == 0;
    return a == 0 || (c.e[1] + 1) % p == 0;
  };
}

ExtChart bockstein_ss(const FieldSpec& spec, int n, const Window& win) {
  std::vector<ClassBlock> blocks{{"1", "x", {0, 0, 0}, bockstein_presentation(spec, n), -1, 1}};
  ExtChart c = blocks_chart(spec, blocks, win);
  c.module = "M";
  c.algebra = n ? "E1" : "E0";
  return c;
}

MonoPred e2_presentation(const FieldSpec& spec, int n) {
  if (spec.kind == FieldKind::Finite && !spec.bocksteinTrivial)
    return bockstein_presentation(spec, n);
  return ext_unit_presentation(spec, n);
}

bool SSPage::alive(const ClassKey& k) const {
  if (!block_has(*this, k)) return false;
  auto d = find_diff(*this, k);
  if (!d || d->r >= page) return true;
  // a source whose target is missing is recorded as an error and kept
  if (d->is_source) return !block_has(*this, d->other);
  return false;
}

Deg3 SSPage::degree(const ClassKey& k) const {
  const auto& [bi, c, a, b] = k;
  const Deg cd = ring->degree(c);
  const Deg3 v1 = v1_deg(field.p);
  const Deg3& base = blocks[bi].base;
  return {base.s + cd.s + b * v1.s, base.f + a + b, base.w + cd.w + b * v1.w};
}

std::string SSPage::name(const ClassKey& k) const {
  const auto& [bi, c, a, b] = k;
  std::string v1 = b == 0 ? "" : b == 1 ? "v1" : "v1^" + std::to_string(b);
  std::string g = blocks[bi].label == "1" ? "" : blocks[bi].label;
  return join({ring->name(c), v0_str(a), v1, g});
}

int SSPage::count_alive() const {
  int n = 0;
  for (auto& c : classes) n += alive(c.key);
  return n;
}

SSPage e2_page(const FieldSpec& spec, std::vector<ClassBlock> blocks, const Window& win,
               std::string label) {
  SSPage P;
  P.field = spec;
  P.ring = std::make_shared<const CoefficientRing>(spec);
  P.window = win;
  P.label = std::move(label);
  P.blocks = std::move(blocks);
  const Deg3 v1 = v1_deg(spec.p);
  for (int bi = 0; bi < static_cast<int>(P.blocks.size()); ++bi) {
    const auto& B = P.blocks[bi];
    for (int b = 0; B.base.f + b <= win.f_max; ++b)
      for (int a = 0; B.base.f + a + b <= win.f_max; ++a)
        for (int s = win.s_min; s <= win.s_max; ++s)
          for (int w = win.w_min; w <= win.w_max; ++w) {
            const Deg cd{s - B.base.s - b * v1.s, w - B.base.w - b * v1.w};
            for (const Mono& c : P.ring->basis(cd)) {
              if (!B.has(c, a, b)) continue;
              SSClass cl;
              cl.key = {bi, c, a, b};
              cl.deg = {s, B.base.f + a + b, w};
              P.classes.push_back(cl);
            }
          }
  }
  return P;
}

std::vector<ClassBlock> summand_blocks(const FieldSpec& spec, Target t, int m, Deg shift) {
  std::vector<ClassBlock> blocks;
  if (t == Target::BPGL0) {
    if (m != 0) throw std::invalid_argument("BPGL0 summands have no lightning flash part");
    blocks.push_back({"x0", "x", {0, 0, 0}, e2_presentation(spec, 0), -1, 1});
  } else {
    blocks = lightning_blocks(spec, m, e2_presentation(spec, 0), e2_presentation(spec, 1));
  }
  for (auto& b : blocks) {
    b.base.s += shift.s;
    b.base.w += shift.w;
  }
  return blocks;
}

SSPage bpgl_e2(const FieldSpec& spec, Target t, const Window& win) {
  auto blocks = summand_blocks(spec, t, 0, {0, 0});
  blocks[0].label = "1";
  return e2_page(spec, std::move(blocks), win, target_name(t));
}

SSPage run_ss(SSPage page, const std::vector<DifferentialRule>& rules) {
  for (auto& d : rules)
    if (!degree_law_holds(page.field, d)) page.errors.push_back("degree law fails for " + d.str);
  page.rules = rules;
  std::set<int> pages;
  for (auto& d : rules) pages.insert(d.r);
  std::map<ClassKey, int> index;
  for (int i = 0; i < static_cast<int>(page.classes.size()); ++i) index[page.classes[i].key] = i;
  for (int r : pages) {
    page.page = r;
    for (auto& cl : page.classes) {
      if (cl.dies) continue;
      auto d = find_diff(page, cl.key);
      if (!d || d->r != r) continue;
      if (page.blocks[std::get<0>(cl.key)].summand != "x" || (cl.deg.f == 0 && !d->is_source)) {
        page.errors.push_back("differential touches an inert class " + page.name(cl.key));
        continue;
      }
      if (d->is_source && !block_has(page, d->other)) {
        page.errors.push_back("d_" + std::to_string(r) + "(" + page.name(cl.key) + "): target " +
                              page.name(d->other) + " absent");
        continue;
      }
      cl.dies = r;
      cl.source = d->is_source;
      auto it = index.find(d->other);
      cl.partner = it == index.end() ? -1 : it->second;
    }
  }
  page.page = INT_MAX;
  return page;
}

int HomotopyTable::free_rank(Deg d) const {
  auto it = groups.find(d);
  if (it == groups.end()) return 0;
  return static_cast<int>(std::count_if(it->second.begin(), it->second.end(),
                                        [](auto& g) { return g.log_order < 0; }));
}

int HomotopyTable::torsion_log(Deg d) const {
  auto it = groups.find(d);
  if (it == groups.end()) return 0;
  int n = 0;
  for (auto& g : it->second)
    if (g.log_order > 0) n += g.log_order;
  return n;
}

bool HomotopyTable::zero(Deg d) const {
  auto it = groups.find(d);
  return it == groups.end() || it->second.empty();
}

std::string HomotopyTable::descriptor(Deg d) const {
  auto it = groups.find(d);
  if (it == groups.end() || it->second.empty()) return "0";
  std::vector<int> logs;
  for (auto& g : it->second) logs.push_back(g.log_order < 0 ? INT_MAX : g.log_order);
  std::sort(logs.rbegin(), logs.rend());
  std::string out;
  for (int l : logs) {
    if (!out.empty()) out += " + ";
    out += l == INT_MAX ? "Z_" + std::to_string(p) : "Z/" + std::to_string(ipow(p, l));
  }
  return out;
}

void HomotopyTable::merge(const HomotopyTable& o) {
  for (auto& [d, v] : o.groups) groups[d].insert(groups[d].end(), v.begin(), v.end());
  extensions.insert(extensions.end(), o.extensions.begin(), o.extensions.end());
  flags.insert(flags.end(), o.flags.begin(), o.flags.end());
}

std::string HomotopyTable::tsv() const {
  std::ostringstream os;
  os << "s\tw\tgroup\tgenerators\n";
  for (auto& [d, v] : groups) {
    if (v.empty()) continue;
    os << d.s << '\t' << d.w << '\t' << descriptor(d) << '\t';
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) os << ',';
      os << v[i].generator;  // names carry their block label
    }
    os << '\n';
  }
  return os.str();
}

std::string HomotopyTable::json() const {
  nlohmann::json j;
  j["schema"] = "homotopy/v1";
  j["field"] = field;
  j["prime"] = p;
  j["label"] = label;
  j["window"] = {{"s", {window.s_min, window.s_max}},
                 {"f_max", window.f_max},
                 {"w", {window.w_min, window.w_max}}};
  j["groups"] = nlohmann::json::array();
  for (auto& [d, v] : groups) {
    if (v.empty()) continue;
    nlohmann::json g{{"s", d.s}, {"w", d.w}, {"group", descriptor(d)}};
    g["summands"] = nlohmann::json::array();
    for (auto& x : v)
      g["summands"].push_back({{"log_order", x.log_order},
                               {"generator", x.generator},
                               {"summand", x.summand},
                               {"f", x.f}});
    j["groups"].push_back(g);
  }
  j["extensions"] = extensions;
  j["flags"] = flags;
  return j.dump(1);
}

HomotopyTable assemble_homotopy(const SSPage& einf, const std::vector<std::string>& extensions) {
  constexpr int cap = 96;
  HomotopyTable T;
  T.field = einf.field.name();
  T.label = einf.label;
  T.p = einf.field.p;
  T.window = einf.window;
  T.extensions = extensions;
  T.flags = einf.errors;
  if (einf.page != INT_MAX) T.flags.push_back("page " + std::to_string(einf.page) + " not final");
  for (auto& cl : einf.classes) {
    if (!einf.alive(cl.key)) continue;
    auto [bi, c, a, b] = cl.key;
    if (a > 0 && einf.alive(ClassKey{bi, c, a - 1, b})) continue;  // not the bottom of its tower
    int h = 1;
    while (h < cap && einf.alive(ClassKey{bi, c, a + h, b})) ++h;
    // a gap followed by more classes of the same tower would make the reading ambiguous
    for (int g = h + 1; g < h + 8 && h < cap; ++g)
      if (einf.alive(ClassKey{bi, c, a + g, b})) {
        T.flags.push_back("ambiguous tower segmentation at " + einf.name(cl.key));
        break;
      }
    GroupSummand gs;
    gs.log_order = h >= cap ? -1 : h;
    gs.generator = einf.name(cl.key);
    gs.summand = einf.blocks[bi].label;
    gs.f = cl.deg.f;
    T.groups[{cl.deg.s, cl.deg.w}].push_back(gs);
  }
  return T;
}

HomotopyTable bpgl_homotopy(const FieldSpec& spec, Target t, const Window& win,
                            PageConvention conv) {
  auto rules = differential_rules(spec, t, rule_depth(spec, win), conv);
  auto T = assemble_homotopy(run_ss(bpgl_e2(spec, t, win), rules), {});
  T.label = target_name(t);
  return T;
}

namespace {

struct SummandPlan {
  int m = 0;
  bool has_core = true;
  std::string label;
  std::vector<Deg> points;
  std::vector<std::string> flags;
};

// lightning-flash core and free bottoms of an E(n)-module, with the core checked
// against L(m); for n = 0 the core is the unit (m = 0) or empty (m < 0)
SummandPlan plan_summand(const FieldSpec& spec, int n, const FinModule& M, int m, Deg shift) {
  SummandPlan P;
  P.m = std::max(m, 0);
  P.has_core = m >= 0;
  auto S = split_free_summands(M);
  for (Deg top : S.free) P.points.push_back(free_bottom(spec, n, top) + shift);
  std::sort(P.points.begin(), P.points.end());
  bool ok = true;
  if (P.has_core) {
    const FinModule L = n == 1 ? lightning_flash(spec, m) : unit_module(exterior(spec, 0));
    ok = S.core.rank() == L.rank() && find_stable_equivalence(L, S.core).has_value();
    P.label = n == 1 ? "L(" + std::to_string(m) + ")" : "M";
  } else {
    ok = S.core.rank() == 0;
    P.label = "free";
  }
  if (!ok) {
    P.flags.push_back("core not stably equivalent to " + P.label);
    P.label = "core";
  }
  return P;
}

SummandReport run_summand(const FieldSpec& spec, Target t, const SummandPlan& plan, Deg shift,
                          const std::string& prefix, const Window& win,
                          const std::vector<DifferentialRule>& rules) {
  std::vector<ClassBlock> blocks;
  if (plan.has_core) blocks = summand_blocks(spec, t, t == Target::BPGL1 ? plan.m : 0, shift);
  for (size_t j = 0; j < plan.points.size(); ++j)
    blocks.push_back(point_block("w" + std::to_string(j), plan.points[j]));
  for (auto& b : blocks) b.label = prefix + "." + b.label;
  std::vector<std::string> ext;
  if (t == Target::BPGL1)
    for (int i = 1; i <= plan.m; ++i)
      ext.push_back("v1 " + prefix + ".x" + std::to_string(i - 1) + " = " +
                    std::to_string(spec.p) + " " + prefix + ".x" + std::to_string(i));
  SummandReport R;
  R.m = plan.m;
  R.label = prefix + ": " + plan.label;
  R.w_points = plan.points;
  R.flags = plan.flags;
  R.table = assemble_homotopy(run_ss(e2_page(spec, std::move(blocks), win, prefix), rules), ext);
  R.table.flags.insert(R.table.flags.end(), plan.flags.begin(), plan.flags.end());
  return R;
}

Deg coop_shift(int p, int k) { return {2 * k * (p - 1), k * (p - 1)}; }

}  // namespace

CooperationsResult cooperations(Target t, const FieldSpec& spec, int k_max, const Window& win) {
  const int p = spec.p, n = target_n(t);
  auto rules = differential_rules(spec, t, rule_depth(spec, win, k_max * (p - 1)));
  CooperationsResult out;
  out.total.field = spec.name();
  out.total.p = p;
  out.total.window = win;
  out.total.label = target_name(t) + " cooperations";
  out.summands.resize(k_max + 1);
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k <= k_max; ++k) {
    const Deg shift = coop_shift(p, k);
    const int m = n == 1 ? nu_factorial(k, p) : k == 0 ? 0 : -1;
    auto plan = plan_summand(spec, n, brown_gitler(spec, n - 1, k), m, shift);
    auto R = run_summand(spec, t, plan, shift, "k" + std::to_string(k), win, rules);
    R.k = k;
    out.summands[k] = std::move(R);
  }
  for (auto& R : out.summands) out.total.merge(R.table);
  return out;
}

std::vector<std::string> check_cooperation_e2(Target t, const FieldSpec& spec, int k,
                                              const Window& win) {
  const int p = spec.p, n = target_n(t);
  const Deg shift = coop_shift(p, k);
  const FinModule B = brown_gitler(spec, n - 1, k);
  auto plan = plan_summand(spec, n, B, n == 1 ? nu_factorial(k, p) : k == 0 ? 0 : -1, shift);
  std::vector<ClassBlock> blocks;
  if (plan.has_core) blocks = summand_blocks(spec, t, t == Target::BPGL1 ? plan.m : 0, shift);
  for (size_t j = 0; j < plan.points.size(); ++j)
    blocks.push_back(point_block("w" + std::to_string(j), plan.points[j]));
  auto expected = blocks_chart(spec, blocks, win);
  auto computed = ext_chart(suspend(B, shift), win, false);
  auto out = compare_charts(computed, expected, false);
  out.insert(out.end(), plan.flags.begin(), plan.flags.end());
  return out;
}

CooperationsResult n_line(int n, const FieldSpec& spec, const Window& win) {
  if (n < 1) throw std::invalid_argument("n-line needs n >= 1");
  const int p = spec.p;
  const int max_total = std::max(n, win.s_max / (2 * (p - 1)));
  std::vector<std::vector<int>> Is;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int left) {
    if (static_cast<int>(cur.size()) == n) {
      Is.push_back(cur);
      return;
    }
    const int rest = n - static_cast<int>(cur.size()) - 1;
    for (int k = 1; k <= left - rest; ++k) {
      cur.push_back(k);
      rec(left - k);
      cur.pop_back();
    }
  };
  rec(max_total);
  auto rules = differential_rules(spec, Target::BPGL1, rule_depth(spec, win, max_total * (p - 1)));
  CooperationsResult out;
  out.total.field = spec.name();
  out.total.p = p;
  out.total.window = win;
  out.total.label = std::to_string(n) + "-line";
  out.summands.resize(Is.size());
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < static_cast<int>(Is.size()); ++j) {
    const auto& I = Is[j];
    int total = 0, m = 0;
    FinModule M;
    std::string name = "I";
    for (size_t i = 0; i < I.size(); ++i) {
      total += I[i];
      m += nu_factorial(I[i], p);
      auto B = brown_gitler(spec, 0, I[i]);
      M = i == 0 ? B : tensor(M, B);
      name += (i ? "," : "(") + std::to_string(I[i]);
    }
    name += ")";
    const Deg shift = coop_shift(p, total);
    auto plan = plan_summand(spec, 1, M, m, shift);
    if (plan.label == "core") plan.label = "core" + name;
    auto R = run_summand(spec, Target::BPGL1, plan, shift, name, win, rules);
    R.I = I;
    R.k = total;
    out.summands[j] = std::move(R);
  }
  for (auto& R : out.summands) out.total.merge(R.table);
  return out;
}

namespace {

Matrix compose(const Matrix& A, const Matrix& B) {
  Matrix C(A.p, A.nrows(), B.cols);
  for (int r = 0; r < A.nrows(); ++r)
    for (int j = 0; j < A.cols; ++j)
      if (int v = A.rows[r].get(j)) C.rows[r].axpy(v, B.rows[j]);
  return C;
}

// rank of v_1^N out of degree d, or -1 when the chart does not reach far enough
int v1_power_rank(const ExtChart& c, Deg3 d, int N) {
  auto it = c.products.find("v1");
  if (it == c.products.end()) return -1;
  const Deg3 v1 = c.product_degree.at("v1");
  Matrix acc = Matrix::identity(c.p, c.dim(d));
  Deg3 cur = d;
  for (int i = 0; i < N; ++i) {
    auto m = it->second.find(cur);
    if (m == it->second.end()) {
      if (c.dim(cur) == 0 || acc.nrows() == 0) return 0;
      return -1;
    }
    acc = compose(acc, m->second);
    cur = plus(cur, v1);
    if (rank(acc) == 0) return 0;
  }
  return rank(acc);
}

// v_1^N of a class of the blocks is nonzero
bool block_v1_survives(const std::vector<ClassBlock>& blocks, ClassKey k, int N) {
  for (int i = 0; i < N; ++i) {
    auto& [bi, c, a, b] = k;
    const auto& B = blocks[bi];
    if (B.has(c, a, b + 1)) {
      ++b;
      continue;
    }
    if (B.v1_into < 0 || !blocks[B.v1_into].has(c, a + B.v1_da, b)) return false;
    a += B.v1_da;
    bi = B.v1_into;
  }
  return true;
}

// classes of a block that are not Ext(unit)-multiples of other classes of the blocks
std::vector<ClassKey> module_generators(const FieldSpec& spec,
                                        const std::vector<ClassBlock>& blocks, const Window& win,
                                        Deg shift) {
  const CoefficientRing R(spec);
  const MonoPred unit = e2_presentation(spec, 1);
  const Deg3 v1 = v1_deg(spec.p);
  std::vector<ClassKey> out;
  for (int bi = 0; bi < static_cast<int>(blocks.size()); ++bi) {
    const auto& B = blocks[bi];
    for (int b = 0; B.base.f + b <= win.f_max; ++b)
      for (int a = 0; B.base.f + a + b <= win.f_max; ++a)
        for (int s = win.s_min; s <= win.s_max; ++s)
          for (int w = win.w_min; w <= win.w_max; ++w) {
            const Deg cd{s - shift.s - B.base.s - b * v1.s, w - shift.w - B.base.w - b * v1.w};
            for (const Mono& c : R.basis(cd)) {
              if (!B.has(c, a, b)) continue;
              bool dec = false;
              for (int e0 = 0; e0 <= c.e[0] && !dec; ++e0)
                for (int e1 = 0; e1 <= c.e[1] && !dec; ++e1)
                  for (int a2 = 0; a2 <= a && !dec; ++a2)
                    for (int b2 = 0; b2 <= b && !dec; ++b2) {
                      Mono f, q;
                      f.e = {static_cast<int16_t>(e0), static_cast<int16_t>(e1)};
                      q.e = {static_cast<int16_t>(c.e[0] - e0), static_cast<int16_t>(c.e[1] - e1)};
                      const bool trivial = f.is_one() && a2 == 0 && b2 == 0;
                      if (!trivial && !unit(f, a2, b2)) continue;
                      if (!trivial && B.has(q, a - a2, b - b2)) dec = true;
                      // v_1 times a class of a block linked into this one
                      for (int bj = 0; bj < static_cast<int>(blocks.size()) && !dec; ++bj) {
                        const auto& J = blocks[bj];
                        if (J.v1_into != bi) continue;
                        const int a3 = a - a2 - J.v1_da;
                        if (a3 >= 0 && J.has(q, a3, b - b2) && !J.has(q, a3, b - b2 + 1) &&
                            (trivial || unit(f, a2, b2)))
                          dec = true;
                      }
                    }
              if (!dec) out.push_back({bi, c, a, b});
            }
          }
  }
  return out;
}

}  // namespace

CollapseReport verify_collapse(const FieldSpec& spec, int k, const Window& win) {
  const int p = spec.p;
  const int K = nu_factorial(k, p);
  const int N = K + 3;  // beyond the v_1-height of any torsion class
  CollapseReport rep;
  rep.field = spec.name();
  rep.k = k;
  auto bimodule_e2 = [&](int K_, int M_) {
    return bimodule_blocks(spec, K_, M_, e2_presentation(spec, 0), e2_presentation(spec, 1));
  };

  struct Summand {
    int m, M;
    Deg shift;
    ExtChart chart;  // unshifted, window enlarged for v_1-powers
    std::vector<ClassBlock> blocks;
  };
  // summands with a class of the window: s - w >= min over generators of (s - w)
  std::vector<int> ms;
  for (int m = 0;; ++m) {
    const int M = nu_factorial(m, p);
    auto blocks = bimodule_e2(K, M);
    int lo = INT_MAX;
    for (auto& b : blocks) lo = std::min(lo, b.base.s - b.base.w);
    const Deg sh = coop_shift(p, m - k);
    if (lo + sh.s - sh.w > win.s_max - win.w_min) {
      if (m > k) break;
      continue;
    }
    ms.push_back(m);
  }
  std::vector<Summand> S(ms.size());
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < static_cast<int>(ms.size()); ++j) {
    const int m = ms[j], M = nu_factorial(m, p);
    const Deg sh = coop_shift(p, m - k);
    Window big{win.s_min - sh.s - 1, win.s_max - sh.s + 2 * (p - 1) * N, win.f_max + N,
               win.w_min - sh.w, win.w_max - sh.w + (p - 1) * N};
    S[j] = {m, M, sh, ext_bimodule(spec, K, M, big), bimodule_e2(K, M)};
  }
  rep.summands = static_cast<int>(S.size());

  // torsion-free / torsion split of the classes of the page in shifted degree e
  auto split_at = [&](Deg3 e, int& tf, int& tor, bool& unknown) {
    tf = tor = 0;
    for (auto& s : S) {
      const Deg3 u{e.s - s.shift.s, e.f, e.w - s.shift.w};
      const int dim = s.chart.dim(u);
      if (!dim) continue;
      const int r = v1_power_rank(s.chart, u, N);
      if (r < 0) {
        unknown = true;
        tf += dim;
        continue;
      }
      tf += r;
      tor += dim - r;
    }
  };

  const Deg3 v1 = v1_deg(p);
  const CoefficientRing R(spec);
  for (auto& s : S) {
    auto gens = module_generators(spec, s.blocks, win, s.shift);
    // the closed-form v_1-types must agree with the computed v_1^N ranks
    std::map<Deg3, int> closed_tf;
    std::set<Deg3> seen;
    for (auto& g : gens) {
      const auto& [bi, c, a, b] = g;
      const auto& B = s.blocks[bi];
      const Deg cd = R.degree(c);
      const Deg3 u{B.base.s + cd.s + b * v1.s, B.base.f + a + b, B.base.w + cd.w + b * v1.w};
      if (!win.contains({u.s + s.shift.s, u.f, u.w + s.shift.w}) || !seen.insert(u).second)
        continue;
      int n = 0;
      for (int bj = 0; bj < static_cast<int>(s.blocks.size()); ++bj) {
        const auto& J = s.blocks[bj];
        for (int b2 = 0; J.base.f + b2 <= u.f; ++b2) {
          const int a2 = u.f - J.base.f - b2;
          const Deg cd2{u.s - J.base.s - b2 * v1.s, u.w - J.base.w - b2 * v1.w};
          for (const Mono& c2 : R.basis(cd2))
            if (J.has(c2, a2, b2) && block_v1_survives(s.blocks, {bj, c2, a2, b2}, N)) ++n;
        }
      }
      const int r = v1_power_rank(s.chart, u, N);
      if (r >= 0 && r != n)
        rep.notes.push_back("m=" + std::to_string(s.m) + " " + u.str() + ": closed form has " +
                            std::to_string(n) + " v1-torsion-free classes, computed " +
                            std::to_string(r));
    }
    for (auto& g : gens) {
      const auto& [bi, c, a, b] = g;
      const auto& B = s.blocks[bi];
      const Deg cd = R.degree(c);
      const Deg3 d{B.base.s + cd.s + b * v1.s + s.shift.s, B.base.f + a + b,
                   B.base.w + cd.w + b * v1.w + s.shift.w};
      if (!win.contains(d)) continue;
      ++rep.generators;
      const bool torsion_free = block_v1_survives(s.blocks, g, N);
      for (int r = 2; d.f + r <= win.f_max; ++r) {
        const Deg3 e{d.s - 1, d.f + r, d.w};
        if (e.s < win.s_min) break;
        int tf = 0, tor = 0;
        bool unknown = false;
        split_at(e, tf, tor, unknown);
        ++rep.pairs;
        if (unknown)
          rep.notes.push_back("v1-type undetermined at " + e.str() + " (window edge)");
        // torsion sources cannot hit v_1-torsion-free classes
        const int live = torsion_free ? tf + tor : tor;
        if (live == 0) {
          if (tf + tor) ++rep.excluded;
          continue;
        }
        CollapseCandidate cand;
        cand.m = s.m;
        cand.generator = join({R.name(c), v0_str(a), b ? "v1^" + std::to_string(b) : "", B.label});
        cand.source = d;
        cand.target = e;
        cand.r = r;
        cand.torsion_free = tf;
        cand.torsion = tor;
        rep.candidates.push_back(cand);
      }
    }
  }
  return rep;
}

}  // namespace motivic
