#include "motivic/comodules.hpp"

#include <cstdio>
#include <map>
#include <mutex>
#include <stdexcept>

namespace motivic {

std::shared_ptr<const ExteriorPair> exterior(const FieldSpec& spec, int n) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, long, int>, std::shared_ptr<const ExteriorPair>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(static_cast<int>(spec.kind), spec.p, spec.q, n);
  auto& slot = cache[key];
  if (!slot) slot = std::make_shared<ExteriorPair>(CoefficientRing(spec), n);
  return slot;
}

FinModule brown_gitler(const FieldSpec& spec, int n, long k) {
  if (n != -1 && n != 0) throw ConfigError("Brown-Gitler comodules need n in {-1, 0}");
  if (k < 0) throw ConfigError("Brown-Gitler index must be >= 0");
  DualSteenrod D{CoefficientRing(spec)};
  FinModule M = D.span_module(exterior(spec, n + 1), D.basis_mod(n, k));
  M.tag = "BrownGitler(" + std::to_string(n) + "," + std::to_string(k) + ")";
  return M;
}

FinModule lightning_flash(const FieldSpec& spec, int k) {
  if (k < 0) throw ConfigError("lightning flash index must be >= 0");
  auto E = exterior(spec, 1);
  if (k == 0) {
    FinModule U = unit_module(E);
    U.tag = "Lightning(0)";
    return U;
  }
  const int p = spec.p;
  const Deg step{2 * p - 2, p - 1};
  FinModule F(E);
  for (int i = 1; i <= k; ++i) {
    FinModule g = free_module(E, step * i + Deg{1, 0});
    F = i == 1 ? g : direct_sum(F, g);
  }
  // A-basis index of x_i Q_K
  auto at = [](int i, int K) { return (i - 1) * 4 + K; };
  FinModule P(E);
  for (int i = 1; i <= k; ++i)
    for (int K = 0; K < 4; ++K)
      P.add_basis(F.basis(at(i, K)).deg,
                  "x" + std::to_string(i) + (K ? " " + E->mask_name(K, true) : ""));
  for (int K = 1; K < 4; ++K)
    for (int b = 0; b < F.rank(); ++b) P.set_action(K, b, F.action(K, b));
  std::vector<Vec> rel;
  for (int i = 1; i <= k; ++i) {
    if (i < k) {
      Vec v(p, P.rank());
      v.add(at(i + 1, 2), 1);
      v.add(at(i, 1), -1);
      rel.push_back(v);
    }
    Vec c(p, P.rank());
    c.set(at(i, 3), 1);
    rel.push_back(c);
  }
  FinModule L = quotient(P, rel);
  L.tag = "Lightning(" + std::to_string(k) + ")";
  return L;
}

FinModule e1_mod_e0_dual(const FieldSpec& spec) {
  FinModule M(exterior(spec, 1));
  const int p = spec.p;
  int one = M.add_basis({0, 0}, "1");
  int t1 = M.add_basis({2 * p - 1, p - 1}, "tau1");
  M.set_action(2, t1, {{one, M.ring().one()}});
  M.tag = "E(1)//E(0)";
  return M;
}

StratifiedModule homology_BPGL(const FieldSpec& spec, int n, int k_max, bool bar) {
  if (n != 0 && n != 1) throw ConfigError("homology_BPGL needs n in {0, 1}");
  DualSteenrod D{CoefficientRing(spec)};
  const int p = spec.p;
  StratifiedModule H;
  for (const SMono& m : D.basis_mod(n, static_cast<long>(p) * k_max)) {
    long w = D.weight(m);
    if (w % p) throw std::logic_error("weight not divisible by p in A//E(n)");
    if (bar && w == 0) continue;
    H.monos.push_back(m);
    H.stratum.push_back(static_cast<int>(w / p));
  }
  H.module = D.span_module(exterior(spec, n), H.monos);
  H.module.tag = std::string(bar ? "HBPGLbar<" : "HBPGL<") + std::to_string(n) + ">";
  H.module.truncated = true;
  return H;
}

std::string verify_stratification(const FieldSpec& spec, const StratifiedModule& H, int n) {
  DualSteenrod D{CoefficientRing(spec)};
  const int p = spec.p;
  const FinModule& M = H.module;
  // closure of each stratum
  for (int b = 0; b < M.rank(); ++b)
    for (int K = 1; K < M.E().size(); ++K)
      for (const auto& ac : M.action(K, b))
        if (H.stratum[ac.b] != H.stratum[b])
          return "stratum of " + M.basis(b).label + " not closed";
  std::map<SMono, int> where;
  for (int b = 0; b < M.rank(); ++b) where[H.monos[b]] = b;
  int kmax = 0;
  for (int s : H.stratum) kmax = std::max(kmax, s);
  int kmin = kmax;
  for (int s : H.stratum) kmin = std::min(kmin, s);
  for (int k = kmin; k <= kmax; ++k) {
    auto monos = D.basis_mod(n - 1, k);
    FinModule B = suspend(D.span_module(exterior(spec, n), monos), Deg{2 * k * (p - 1), k * (p - 1)});
    ModuleMap f;
    std::vector<bool> hit(M.rank(), false);
    int count = 0;
    for (const SMono& x : monos) {
      SMono y{};
      for (int i = 1; i + 1 < 8; ++i) y.xi[i + 1] = x.xi[i];
      y.tau = static_cast<uint16_t>(x.tau << 1);
      y.xi[1] = static_cast<int16_t>(y.xi[1] + k - D.weight(x));
      auto it = where.find(y);
      if (it == where.end()) return "image of " + D.name(x) + " missing from stratum";
      if (H.stratum[it->second] != k) return "image of " + D.name(x) + " in the wrong stratum";
      if (hit[it->second]) return "map not injective at " + D.name(y);
      hit[it->second] = true;
      ++count;
      f.img.push_back({{it->second, M.ring().one()}});
    }
    int size = 0;
    for (int s : H.stratum) size += (s == k);
    if (size != count) return "stratum " + std::to_string(k) + " has extra monomials";
    std::string err = check_module_map(B, M, f);
    if (!err.empty()) return "stratum " + std::to_string(k) + ": " + err;
  }
  return "";
}

namespace {

// label "xi" or "xi Q_.." -> (i, rest)
std::pair<int, std::string> parse_label(const std::string& s) {
  int i = 0, used = 0;
  if (std::sscanf(s.c_str(), "x%d%n", &i, &used) != 1) return {0, s};
  return {i, s.substr(used)};
}

}  // namespace

ModuleMap lightning_inclusion(const FinModule& Lsmall, const FinModule& Lbig) {
  std::map<std::string, int> big;
  for (int b = 0; b < Lbig.rank(); ++b) big[Lbig.basis(b).label] = b;
  const CoefficientRing& A = Lbig.ring();
  ModuleMap f;
  for (int b = 0; b < Lsmall.rank(); ++b) {
    auto [i, rest] = parse_label(Lsmall.basis(b).label);
    Elem y;
    if (i == 0) {
      // unit of L(0) goes to x_1 Q_0
      y = Lbig.theta(1, Lbig.basis_elem(big.at("x1")));
    } else {
      int K = 0;
      for (int m = 1; m < 4; ++m)
        if (rest == " " + Lbig.E().mask_name(m, true)) K = m;
      y = Lbig.theta(K, Lbig.basis_elem(big.at("x" + std::to_string(i + 1))));
    }
    AComb v;
    for (const auto& t : y) v.push_back({t.b, A.mono(t.m, t.c)});
    f.img.push_back(v);
  }
  return f;
}

std::string lightning_ses(const FieldSpec& spec, int k) {
  if (k < 1) throw ConfigError("lightning SES needs k >= 1");
  const int p = spec.p;
  FinModule Lk = lightning_flash(spec, k);
  FinModule S = suspend(lightning_flash(spec, k - 1), Deg{2 * p - 2, p - 1});
  ModuleMap f = lightning_inclusion(S, Lk);
  if (auto err = check_module_map(S, Lk, f); !err.empty()) return "inclusion: " + err;
  // images are coefficient free, so injectivity is an F_p rank question
  std::vector<Vec> rows;
  for (const auto& v : f.img) {
    Vec r(p, Lk.rank());
    for (const auto& ac : v) {
      if (ac.coef.size() != 1 || !ac.coef[0].m.is_one()) return "inclusion has coefficients";
      r.add(ac.b, ac.coef[0].c);
    }
    rows.push_back(r);
  }
  Matrix m(p, 0, Lk.rank());
  m.rows = rows;
  if (rank(m) != S.rank()) return "inclusion not injective";
  FinModule C = quotient(Lk, rows);
  FinModule Q = e1_mod_e0_dual(spec);
  if (C.rank() != 2) return "cokernel has rank " + std::to_string(C.rank());
  int top = C.basis(0).deg == Deg{0, 0} ? 1 : 0;
  if (C.basis(top).deg != Q.basis(1).deg) return "cokernel top in the wrong degree";
  ModuleMap g;
  const CoefficientRing& A = C.ring();
  Elem bottom = C.theta(2, C.basis_elem(top));
  AComb gb;
  for (const auto& t : bottom) gb.push_back({t.b, A.mono(t.m, t.c)});
  g.img = {gb, {{top, A.one()}}};
  if (auto err = check_module_map(Q, C, g); !err.empty()) return "cokernel: " + err;
  if (bottom.size() != 1 || bottom[0].b == top) return "cokernel is not (E(1)//E(0))^v";
  return "";
}

}  // namespace motivic
