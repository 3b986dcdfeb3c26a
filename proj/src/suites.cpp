#include "motivic/suites.hpp"

#include <algorithm>
#include <chrono>
#include <json.hpp>
#include <random>

#include "motivic/adams.hpp"
#include "motivic/margolis.hpp"

namespace motivic {

namespace {

struct Checker {
  SuiteResult& r;
  bool operator()(bool ok, const std::string& what) {
    ++r.checks;
    if (!ok) r.failures.push_back(what);
    return ok;
  }
};

std::string label(const FieldSpec& F) { return F.name() + " p=" + std::to_string(F.p); }

// five field cases per prime: C, R, untwisted F_q, twisted F_q, and one more F_q
std::vector<FieldSpec> field_cases() {
  return {FieldSpec::complex(2),   FieldSpec::real(2),       FieldSpec::finite(5, 2),
          FieldSpec::finite(3, 2), FieldSpec::finite(7, 2),  FieldSpec::complex(3),
          FieldSpec::real(3),      FieldSpec::finite(19, 3), FieldSpec::finite(7, 3),
          FieldSpec::finite(2, 3)};
}

std::string first_lines(const std::vector<std::string>& v, size_t n = 3) {
  std::string s;
  for (size_t i = 0; i < v.size() && i < n; ++i) s += (i ? "; " : "") + v[i];
  if (v.size() > n) s += "; ... (" + std::to_string(v.size()) + " total)";
  return s;
}

bool twisted_odd(const FieldSpec& F) {
  return F.kind == FieldKind::Finite && F.p > 2 && !F.bocksteinTrivial;
}

void oracle_equivalence(SuiteResult& r, bool quick) {
  Checker check{r};
  const Window W = quick ? Window{-3, 5, 3, -4, 3} : Window{-6, 10, 6, -8, 6};
  for (auto& F : field_cases())
    for (int n : {0, 1}) {
      auto E = exterior(F, n);
      std::vector<FinModule> mods{unit_module(E), restrict_to(lightning_flash(F, 1), E),
                                  restrict_to(lightning_flash(F, 2), E),
                                  restrict_to(brown_gitler(F, 0, 2), E)};
      const char* names[] = {"M", "L(1)", "L(2)", "B_0(2)"};
      for (int i = 0; i < 4; ++i) {
        auto a = ext_chart(mods[i], W, false);
        auto b = cobar_ext_oracle(mods[i], W);
        std::vector<std::string> diff;
        std::map<Deg3, std::pair<int, int>> all;
        for (auto& [d, x] : a.dims) all[d].first = x;
        for (auto& [d, x] : b.dims) all[d].second = x;
        for (auto& [d, pr] : all)
          if (pr.first != pr.second)
            diff.push_back(d.str() + " " + std::to_string(pr.first) + " vs " +
                           std::to_string(pr.second));
        check(diff.empty(), label(F) + " E(" + std::to_string(n) + ") " + names[i] + ": " +
                                first_lines(diff));
      }
    }
}

std::string presentation_name(const FieldSpec& F) {
  if (F.kind == FieldKind::Complex) return "F_p[tau,v0,v1]";
  if (F.p == 2 && (F.kind == FieldKind::Real || !F.bocksteinTrivial))
    return "rho v0 = 0, rho^3 v1 = 0";
  if (twisted_odd(F)) return "gamma zeta^j";
  return "F_p[u,zeta,v0,v1]/(u^2)";
}

void closed_form_charts(SuiteResult& r, bool quick) {
  Checker check{r};
  const Window W = quick ? Window{-6, 8, 4, -6, 4} : Window{-8, 14, 8, -8, 8};
  for (auto& F : field_cases()) {
    auto c = ext_chart(unit_module(exterior(F, 1)), W);
    auto e = closed_form_chart(CaseDescriptor::parse("ExtE1", F), W);
    auto diff = compare_charts(c, e);
    check(diff.empty(), label(F) + " (" + presentation_name(F) + "): " + first_lines(diff));
    if (twisted_odd(F)) {
      // the gamma-Bockstein presentation, for comparison
      auto b = bockstein_ss(F, 1, W);
      r.notes.push_back(label(F) + ": Bockstein presentation " +
                        (compare_charts(c, b).empty() ? "matches" : "differs"));
    }
  }
}

void brown_gitler_decomposition(SuiteResult& r, bool quick) {
  Checker check{r};
  const int k_max = quick ? 4 : 8;
  for (auto& F : field_cases()) {
    const int p = F.p;
    for (int k = 0; k <= k_max; ++k) {
      const std::string where = label(F) + " k=" + std::to_string(k);
      // Legendre against the factorial itself
      long long fact = 1;
      for (int i = 2; i <= k; ++i) fact *= i;
      const int nu_k = nu_factorial(k, p);
      check(nu_k == nu(fact, p), where + ": Legendre formula");
      auto B = brown_gitler(F, 0, k);
      auto S = split_free_summands(B);
      check(S.core.rank() == 2 * nu_k + 1, where + ": core rank " + std::to_string(S.core.rank()));
      check(split_free_summands(S.core).free.empty(), where + ": core has a free summand");
      auto f = find_stable_equivalence(lightning_flash(F, nu_k), S.core);
      check(f.has_value(), where + ": core not stably equivalent to L(" + std::to_string(nu_k) + ")");
      auto H0 = margolis_homology(B, 0), H1 = margolis_homology(B, 1);
      check(H0.dims == std::map<Deg, int>{{{0, 0}, 1}}, where + ": H(Q_0) is not M_p{1}");
      check(H1.dims == std::map<Deg, int>{{Deg{2 * p - 2, p - 1} * nu_k, 1}},
            where + ": H(Q_1) is not {Q_0 x_nu}");
    }
  }
}

int soule_log(const FieldSpec& F, int n) { return nu(ipow(F.q, n) - 1, F.p); }

void soule(SuiteResult& r, bool quick) {
  Checker check{r};
  const Window W{-4, 3, 14, -6, 2};
  std::vector<FieldSpec> fields{FieldSpec::finite(3, 2), FieldSpec::finite(5, 2),
                                FieldSpec::finite(7, 3), FieldSpec::finite(19, 3)};
  if (quick) fields.resize(2);
  for (auto& F : fields) {
    auto T = bpgl_homotopy(F, Target::BPGL0, W);
    check(T.flags.empty(), label(F) + ": flags " + first_lines(T.flags));
    for (int s = W.s_min; s <= W.s_max; ++s)
      for (int w = W.w_min; w <= W.w_max; ++w) {
        const Deg d{s, w};
        const std::string where = label(F) + " " + d.str() + ": " + T.descriptor(d);
        if (d == Deg{0, 0})
          check(T.descriptor(d) == "Z_" + std::to_string(F.p), where);
        else if (s == -1 && w <= -1)
          check(T.free_rank(d) == 0 && T.torsion_log(d) == soule_log(F, -w) &&
                    T.groups.count(d) && T.groups.at(d).size() <= 1,
                where + ", expected order p^" + std::to_string(soule_log(F, -w)));
        else
          check(T.zero(d), where + ", expected 0");
      }
  }
  r.notes.push_back("twisted odd-p case F_7 p=3, untwisted F_19 p=3");
}

void quillen(SuiteResult& r, bool) {
  Checker check{r};
  const Window W{-2, 10, 14, -6, 4};
  auto F = FieldSpec::finite(3, 2);
  auto T = bpgl_homotopy(F, Target::BPGL1, W);
  check(T.flags.empty(), "flags " + first_lines(T.flags));
  for (int n = 1; n <= 5; ++n)
    for (int b = 0; b < n; ++b) {
      const Deg odd{2 * b - 1, b - n}, even{2 * b, b - n};
      if (odd.w < W.w_min) continue;
      check(T.free_rank(odd) == 0 && T.torsion_log(odd) == soule_log(F, n),
            "K_" + std::to_string(2 * n - 1) + " at " + odd.str() + ": " + T.descriptor(odd));
      check(T.zero(even), "K_" + std::to_string(2 * n) + " at " + even.str() + ": " +
                              T.descriptor(even));
    }
}

// sorted orders (-1 = Z_p) of the cyclic summands in degree d
std::vector<int> orders(const HomotopyTable& T, Deg d) {
  std::vector<int> v;
  auto it = T.groups.find(d);
  if (it != T.groups.end())
    for (auto& g : it->second) v.push_back(g.log_order);
  std::sort(v.begin(), v.end());
  return v;
}

void add_shifted(HomotopyTable& out, const HomotopyTable& T, Deg sh) {
  for (auto& [d, v] : T.groups)
    for (auto& g : v) out.groups[d + sh].push_back(g);
}

void cooperations_assembly(SuiteResult& r, bool quick) {
  Checker check{r};
  const int k_max = quick ? 3 : 6;
  const Window W = quick ? Window{-4, 8, 6, -4, 5} : Window{-6, 12, 8, -6, 8};
  for (auto F : {FieldSpec::complex(2), FieldSpec::real(2), FieldSpec::finite(3, 2)}) {
    const int p = F.p;
    auto coop = cooperations(Target::BPGL1, F, k_max, W);
    // the pieces of the formula, over a window large enough for every shift
    Window big = W;
    // copies sit at shifts up to (k + nu_p(k!)) (2(p-1), p-1) <= 2k (2(p-1), p-1)
    big.s_min -= 4 * (p - 1) * k_max;
    big.w_min -= 2 * (p - 1) * k_max;
    auto H0 = bpgl_homotopy(F, Target::BPGL0, big);
    auto H1 = bpgl_homotopy(F, Target::BPGL1, big);
    CoefficientRing R(F);
    for (int k = 0; k <= k_max; ++k) {
      const std::string where = label(F) + " k=" + std::to_string(k);
      auto e2 = check_cooperation_e2(Target::BPGL1, F, k, W);
      check(e2.empty(), where + " E_2: " + first_lines(e2));
      const auto& S = coop.summands[k];
      check(S.flags.empty() && S.table.flags.empty(),
            where + ": flags " + first_lines(S.flags) + first_lines(S.table.flags));
      const int nu_k = nu_factorial(k, p);
      const Deg sh{2 * k * (p - 1), k * (p - 1)}, step{2 * (p - 1), p - 1};
      HomotopyTable expect;
      for (int i = 0; i < nu_k; ++i) add_shifted(expect, H0, sh + step * i);
      add_shifted(expect, H1, sh + step * nu_k);
      // M_p on each bottom cell of a free summand
      for (Deg pt : S.w_points)
        for (int s = W.s_min; s <= W.s_max; ++s)
          for (int w = W.w_min; w <= W.w_max; ++w)
            for (size_t j = 0; j < R.basis(Deg{s, w} - pt).size(); ++j)
              expect.groups[{s, w}].push_back({1, "", "", 0});
      int bad = 0;
      std::string first;
      for (int s = W.s_min; s <= W.s_max; ++s)
        for (int w = W.w_min; w <= W.w_max; ++w) {
          const Deg d{s, w};
          if (orders(S.table, d) == orders(expect, d)) continue;
          if (!bad++) first = d.str() + " " + S.table.descriptor(d) + " vs " + expect.descriptor(d);
        }
      check(bad == 0, where + ": " + std::to_string(bad) + " degrees differ from the formula, first " + first);
    }
    r.notes.push_back(label(F) + ": k <= " + std::to_string(k_max) + " summands " +
                      coop.summands.back().label);
  }
}

void bimodule_ext(SuiteResult& r, bool quick) {
  Checker check{r};
  const int k_max = quick ? 2 : 4;
  const Window W = quick ? Window{-8, 6, 4, -6, 4} : Window{-12, 12, 6, -8, 6};
  int dim_ok = 0, dim_total = 0;
  for (auto F : {FieldSpec::complex(2), FieldSpec::complex(3), FieldSpec::real(2)})
    for (int k = 0; k <= k_max; ++k)
      for (int m = 0; m <= k_max; ++m) {
        const std::string where =
            label(F) + " Ext(L(" + std::to_string(k) + "),L(" + std::to_string(m) + "))";
        auto c = ext_bimodule(F, k, m, W);
        auto e = closed_form_chart(
            CaseDescriptor::parse("ExtLL:" + std::to_string(k) + ":" + std::to_string(m), F), W);
        auto dims = compare_charts(c, e, false);
        ++dim_total;
        dim_ok += dims.empty();
        check(dims.empty(), where + " dimensions: " + first_lines(dims));
        std::vector<std::string> prods;
        for (auto& d : compare_charts(c, e))
          if (d.rfind("dim", 0) != 0) prods.push_back(d);
        check(prods.empty(), where + " products: " + first_lines(prods));
        check(c.b_classes == e.b_classes, where + ": B summand differs");
      }
  // the (-3,0) B class of Ext(L(1), L(2)) over C, p = 2
  auto c = ext_bimodule(FieldSpec::complex(2), 1, 2, W);
  check(c.b_classes.count({-3, 0, -1}) == 1, "C p=2 Ext(L(1),L(2)): no B class at (-3,0,-1)");
  r.notes.push_back("dimensions agree in " + std::to_string(dim_ok) + " of " +
                    std::to_string(dim_total) + " cases");
}

void collapse(SuiteResult& r, bool quick) {
  Checker check{r};
  const int k_max = quick ? 2 : 4;
  const Window W = quick ? Window{-8, 8, 6, -4, 5} : Window{-20, 20, 12, -12, 10};
  std::vector<FieldSpec> fields{FieldSpec::complex(2),   FieldSpec::real(2),
                                FieldSpec::finite(5, 2), FieldSpec::finite(3, 2),
                                FieldSpec::complex(3),   FieldSpec::real(3),
                                FieldSpec::finite(19, 3), FieldSpec::finite(7, 3)};
  if (quick) fields = {FieldSpec::complex(2), FieldSpec::finite(3, 2)};
  for (auto& F : fields)
    for (int k = 0; k <= k_max; ++k) {
      auto rep = verify_collapse(F, k, W);
      const std::string where = label(F) + " k=" + std::to_string(k);
      std::string first;
      if (!rep.candidates.empty()) {
        auto& c = rep.candidates[0];
        first = ", first " + c.generator + " " + c.source.str() + " d_" + std::to_string(c.r);
      }
      check(rep.ok(), where + ": " + std::to_string(rep.candidates.size()) + " candidates" + first);
      check(rep.generators > 0, where + ": no generators in the window");
      check(rep.notes.empty(), where + ": " + first_lines(rep.notes));
      r.notes.push_back(where + ": " + std::to_string(rep.summands) + " summands, " +
                        std::to_string(rep.generators) + " generators, " +
                        std::to_string(rep.pairs) + " pairs, " + std::to_string(rep.excluded) +
                        " excluded by v1-type");
    }
}

void property_suites(SuiteResult& r, bool quick) {
  Checker check{r};
  for (auto& F : field_cases()) {
    const std::string where = label(F);
    CoefficientRing A(F);
    auto E1 = exterior(F, 1), E0 = exterior(F, 0);
    check(relative_steenrod_check(*E0) && relative_steenrod_check(*E1), where + ": E(n) cells");
    // Q_K Q_L against the coproduct: the dual form of coassociativity
    check(unit_module(E1).check_axioms().empty(), where + ": unit module axioms");
    check(free_module(E1, {6, 2}).check_axioms().empty(), where + ": free module axioms");
    DualSteenrod D(A);
    const long k = F.p == 2 ? 8 : 9;
    const auto basis = D.basis_mod(0, k);
    auto B0 = D.span_module(E1, basis);
    check(B0.check_axioms(2).empty(), where + ": B_0 span axioms");
    check(D.span_module(E0, D.basis_mod(-1, k)).check_axioms(2).empty(),
          where + ": B_-1 span axioms");
    check(tensor(free_module(E1, {0, 0}), D.span_module(E1, D.basis_mod(0, F.p)))
              .check_axioms(2)
              .empty(),
          where + ": tensor axioms");
    // counit: the e_0-component of the coaction is the identity
    bool counit = true;
    for (auto& m : basis) {
      auto a = D.coaction(*E1, m);
      counit &= a[0] == SElem{{m, A.one()}};
    }
    check(counit, where + ": counit");
    for (int n : {0, 1})
      for (Deg top : {Deg{0, 0}, Deg{5, 2}}) {
        auto Fr = free_module(n ? E1 : E0, top);
        bool acyclic = true;
        for (int i = 0; i <= n; ++i) acyclic &= margolis_homology(Fr, i).total() == 0;
        check(acyclic, where + ": free E(" + std::to_string(n) + ")-module not Margolis acyclic");
      }
    for (int j = 1; j <= 4; ++j) {
      auto e = lightning_ses(F, j);
      check(e.empty(), where + ": SES for L(" + std::to_string(j) + "): " + e);
    }
  }
  // rewriting confluence: a * b against the shuffled product of the generators
  std::mt19937 rng(11);
  const int trials = quick ? 250 : 2500;
  int total = 0;
  for (auto F : {FieldSpec::real(2), FieldSpec::complex(2), FieldSpec::finite(3, 2),
                 FieldSpec::complex(3)}) {
    CoefficientRing A(F);
    DualSteenrod D(A);
    auto basis = D.basis_mod(-1, 24);
    int agree = 0;
    for (int t = 0; t < trials; ++t) {
      const SMono& a = basis[rng() % basis.size()];
      const SMono& b = basis[rng() % basis.size()];
      SElem x = D.mul(a, b);
      std::vector<SMono> gens;
      for (const SMono* m : {&a, &b}) {
        for (int i = 1; i < 8; ++i)
          for (int e = 0; e < m->xi[i]; ++e) gens.push_back(DualSteenrod::xi(i));
        for (int j = 0; j < 16; ++j)
          if (m->tau >> j & 1) gens.push_back(DualSteenrod::tau(j));
      }
      std::vector<int> perm(gens.size());
      for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
      std::shuffle(perm.begin(), perm.end(), rng);
      SElem y{{SMono{}, A.one()}};
      for (int i : perm) y = D.mul(y, SElem{{gens[i], A.one()}});
      int sign = 1;
      if (A.p() > 2)
        for (size_t i = 0; i < perm.size(); ++i)
          for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j] && gens[perm[i]].tau && gens[perm[j]].tau) sign = -sign;
      if (sign < 0)
        for (auto& [m, c] : y) c = A.scale(c, -1);
      agree += x == y;
    }
    total += trials;
    check(agree == trials, label(F) + ": " + std::to_string(trials - agree) +
                               " non-confluent monomial pairs");
  }
  r.notes.push_back(std::to_string(total) + " random monomial pairs");
}

struct SuiteDef {
  const char* name;
  void (*run)(SuiteResult&, bool);
};

const SuiteDef kSuites[] = {
    {"oracle equivalence", oracle_equivalence},
    {"closed-form Ext charts", closed_form_charts},
    {"Brown-Gitler decomposition", brown_gitler_decomposition},
    {"Soule groups", soule},
    {"Quillen orders", quillen},
    {"cooperations assembly", cooperations_assembly},
    {"bimodule Ext", bimodule_ext},
    {"collapse verification", collapse},
    {"property suites", property_suites},
};

}  // namespace

int suite_count() { return static_cast<int>(std::size(kSuites)); }

std::string suite_name(int id) {
  if (id < 1 || id > suite_count()) throw std::out_of_range("no suite " + std::to_string(id));
  return kSuites[id - 1].name;
}

SuiteResult run_suite(int id, bool quick) {
  SuiteResult r;
  r.id = id;
  r.name = suite_name(id);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    kSuites[id - 1].run(r, quick);
  } catch (const std::exception& e) {
    r.failures.push_back(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::string suite_json(const std::vector<SuiteResult>& results) {
  nlohmann::json j;
  j["schema"] = "verify/v1";
  j["suites"] = nlohmann::json::array();
  bool all = true;
  for (auto& r : results) {
    all &= r.pass();
    j["suites"].push_back({{"id", r.id},
                           {"name", r.name},
                           {"pass", r.pass()},
                           {"checks", r.checks},
                           {"failures", r.failures},
                           {"notes", r.notes},
                           {"seconds", r.seconds}});
  }
  j["pass"] = all;
  return j.dump(1);
}

}  // namespace motivic
