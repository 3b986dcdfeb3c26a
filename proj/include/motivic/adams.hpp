#pragma once
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "motivic/closed_forms.hpp"

namespace motivic {

enum class Target { BPGL0, BPGL1 };
Target parse_target(const std::string& s);
std::string target_name(Target t);
inline int target_n(Target t) { return t == Target::BPGL0 ? 0 : 1; }

// Soule: page forced by the groups Z/(q^{-w}-1)_p, r_s = nu_p(q^{i p^s} - 1).
// Printed: the formulas as stated, one page later in the twisted cases.
enum class PageConvention { Soule, Printed };

// d_r(t^{p^s}) = z t^{p^s-1} v_0^r, t = tau or zeta, z = u, rho or gamma
struct DifferentialRule {
  int s = 0, r = 0;
  Mono source, target;
  int target_v0 = 0;
  Deg3 source_deg, target_deg;
  // what the rule extends over by the Leibniz rule
  std::vector<std::string> scope;
  std::string str;
};
std::vector<DifferentialRule> differential_rules(const FieldSpec& spec, Target t, int s_max = 6,
                                                 PageConvention conv = PageConvention::Soule);
bool degree_law_holds(const FieldSpec& spec, const DifferentialRule& d);

// Ext_{E(n)}(unit) from the z-Bockstein spectral sequence: E_1 = F_p[z, t]/(z^2) (x)
// F_p[v_0, (v_1)], d_1(t^k) = k z t^{k-1} v_0. Requires a square-zero z.
MonoPred bockstein_presentation(const FieldSpec& spec, int n);
ExtChart bockstein_ss(const FieldSpec& spec, int n, const Window& win);
// presentation used for E_2 pages: the Bockstein one for twisted finite fields
MonoPred e2_presentation(const FieldSpec& spec, int n);

using ClassKey = std::tuple<int, Mono, int, int>;  // block, c, a, b

struct SSClass {
  ClassKey key;
  Deg3 deg;
  int dies = 0;  // page of the differential it takes part in, 0 if permanent
  bool source = false;
  int partner = -1;
};

struct SSPage {
  FieldSpec field;
  std::shared_ptr<const CoefficientRing> ring;
  Window window;
  std::string label;
  std::vector<ClassBlock> blocks;
  std::vector<SSClass> classes;  // those in the window
  std::vector<DifferentialRule> rules;
  int page = 2;  // INT_MAX once run
  std::vector<std::string> errors;

  // on the current page, for any class (not only those in the window)
  bool alive(const ClassKey& k) const;
  Deg3 degree(const ClassKey& k) const;
  std::string name(const ClassKey& k) const;
  int count_alive() const;
};

SSPage e2_page(const FieldSpec& spec, std::vector<ClassBlock> blocks, const Window& win,
               std::string label = "");
// E_2 page of the Adams spectral sequence for BPGL<n>
SSPage bpgl_e2(const FieldSpec& spec, Target t, const Window& win);
// Ext(unit, L(m)) over E(1), or the unit over E(0) for m = 0 and t = BPGL0, shifted
std::vector<ClassBlock> summand_blocks(const FieldSpec& spec, Target t, int m, Deg shift);

// pages in ascending order; each rule family acts on x-blocks through
// d(t^n c v_0^a v_1^b x) = (n/p^s) z t^{n-1} c v_0^{a+r} v_1^b x, s = nu_p(n); W and B
// blocks are inert. Missing targets are recorded in errors.
SSPage run_ss(SSPage page, const std::vector<DifferentialRule>& rules);

struct GroupSummand {
  int log_order = 1;  // -1: Z_p
  std::string generator;
  std::string summand;
  int f = 0;
};

struct HomotopyTable {
  std::string field, label;
  int p = 2;
  Window window;
  std::map<Deg, std::vector<GroupSummand>> groups;
  std::vector<std::string> extensions;
  std::vector<std::string> flags;

  int free_rank(Deg d) const;
  // log_p of the order of the torsion part
  int torsion_log(Deg d) const;
  bool zero(Deg d) const;
  // "Z_2 + Z/8 + Z/2", "0"
  std::string descriptor(Deg d) const;
  void merge(const HomotopyTable& o);
  std::string tsv() const;
  std::string json() const;
};

// v_0-towers in each (s,w) column: infinite -> Z_p, height h -> Z/p^h
HomotopyTable assemble_homotopy(const SSPage& einf, const std::vector<std::string>& extensions);

// pi_{*,*} BPGL<n>
HomotopyTable bpgl_homotopy(const FieldSpec& spec, Target t, const Window& win,
                            PageConvention conv = PageConvention::Soule);

struct SummandReport {
  int k = 0;
  std::vector<int> I;
  int m = 0;  // nu_p(k!) or sum over I
  std::string label;
  std::vector<Deg> w_points;  // bottom cells of the free summands
  HomotopyTable table;
  std::vector<std::string> flags;
};

struct CooperationsResult {
  HomotopyTable total;
  std::vector<SummandReport> summands;
};

// pi(BPGL<n> ^ BPGL<n>) summand by summand
CooperationsResult cooperations(Target t, const FieldSpec& spec, int k_max, const Window& win);
// the E_2 page of summand k against the Ext of the k-th homology stratum; one line per
// mismatch
std::vector<std::string> check_cooperation_e2(Target t, const FieldSpec& spec, int k,
                                              const Window& win);

// pi(BPGL<1> ^ bar BPGL<1>^{n}) summand by summand, I in (k_1..k_n), k_j >= 1
CooperationsResult n_line(int n, const FieldSpec& spec, const Window& win);

struct CollapseCandidate {
  int m = 0;
  std::string generator;
  Deg3 source, target;
  int r = 0;
  int torsion_free = 0, torsion = 0;
};

struct CollapseReport {
  std::string field;
  int k = 0;
  int summands = 0, generators = 0, pairs = 0;
  // pairs whose target degree is nonempty but holds only classes excluded by v_1-torsion type
  int excluded = 0;
  std::vector<CollapseCandidate> candidates;
  std::vector<std::string> notes;
  bool ok() const { return candidates.empty(); }
};

// degree-exclusion check of the relative Adams spectral sequence for
// sum_m Sigma^{2(m-k)(p-1),(m-k)(p-1)} Ext(L(nu_p(k!)), L(nu_p(m!))): every module
// generator and page r >= 2 whose target degree holds a class not excluded by
// v_1-torsion type is a candidate
CollapseReport verify_collapse(const FieldSpec& spec, int k, const Window& win);

}  // namespace motivic
