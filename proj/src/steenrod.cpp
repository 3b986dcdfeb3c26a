#include "motivic/steenrod.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace motivic {

DualSteenrod::DualSteenrod(const CoefficientRing& ring, bool literal_relation)
    : ring_(ring), literal_(literal_relation) {
  tau_gen_ = ring.gen_index("tau");
  rho_gen_ = ring.gen_index("rho");
}

Deg DualSteenrod::xi_degree(int k) const {
  long long pk = ipow(p(), k);
  return {static_cast<int>(2 * pk - 2), static_cast<int>(pk - 1)};
}

Deg DualSteenrod::tau_degree(int j) const {
  long long pj = ipow(p(), j);
  return {static_cast<int>(2 * pj - 1), static_cast<int>(pj - 1)};
}

Deg DualSteenrod::degree(const SMono& m) const {
  Deg d;
  for (int k = 1; k < 8; ++k) d = d + xi_degree(k) * m.xi[k];
  for (int j = 0; j < 16; ++j)
    if (m.tau >> j & 1) d = d + tau_degree(j);
  return d;
}

long DualSteenrod::weight(const SMono& m) const {
  long w = 0;
  for (int k = 1; k < 8; ++k) w += ipow(p(), k) * m.xi[k];
  for (int j = 0; j < 16; ++j)
    if (m.tau >> j & 1) w += ipow(p(), j);
  return w;
}

std::string DualSteenrod::name(const SMono& m) const {
  std::string s;
  for (int k = 1; k < 8; ++k)
    if (m.xi[k]) {
      s += std::string(s.empty() ? "" : " ") + "xi" + std::to_string(k);
      if (m.xi[k] > 1) s += "^" + std::to_string(m.xi[k]);
    }
  for (int j = 0; j < 16; ++j)
    if (m.tau >> j & 1) s += std::string(s.empty() ? "" : " ") + "tau" + std::to_string(j);
  return s.empty() ? "1" : s;
}

SMono DualSteenrod::xi(int k, int e) {
  SMono m;
  m.xi[k] = static_cast<int16_t>(e);
  return m;
}

SMono DualSteenrod::tau(int j) {
  SMono m;
  m.tau = static_cast<uint16_t>(1u << j);
  return m;
}

static void acc_add(SElem& out, const SMono& m, const RingElem& c, const CoefficientRing& A) {
  if (c.empty()) return;
  auto& slot = out[m];
  slot = A.add(slot, c);
  if (slot.empty()) out.erase(m);
}

void DualSteenrod::mul_tau(const SMono& m, const RingElem& coef, int j, SElem& out) const {
  if (coef.empty()) return;
  if (!(m.tau >> j & 1)) {
    SMono r = m;
    r.tau |= static_cast<uint16_t>(1u << j);
    int sign = (p() > 2 && (__builtin_popcount(m.tau >> (j + 1)) & 1)) ? -1 : 1;
    acc_add(out, r, ring_.scale(coef, sign), ring_);
    return;
  }
  if (p() > 2) return;
  SMono r = m;
  r.tau &= static_cast<uint16_t>(~(1u << j));
  // tau_j^2 = tau xi_{j+1} (+ rho tau_{j+1})
  SMono rx = r;
  ++rx.xi[j + 1];
  acc_add(out, rx, ring_.mul(coef, ring_.mono(ring_.gen_mono(tau_gen_))), ring_);
  if (rho_gen_ >= 0) {
    RingElem rc = ring_.mul(coef, ring_.mono(ring_.gen_mono(rho_gen_)));
    mul_tau(r, rc, j + 1, out);
    if (literal_) mul_tau(rx, rc, 0, out);
  }
}

SElem DualSteenrod::mul(const SMono& a, const SMono& b) const {
  SMono base = a;
  for (int k = 1; k < 8; ++k) base.xi[k] = static_cast<int16_t>(base.xi[k] + b.xi[k]);
  SElem cur{{base, ring_.one()}};
  for (int j = 0; j < 16; ++j) {
    if (!(b.tau >> j & 1)) continue;
    SElem next;
    for (auto& [m, c] : cur) mul_tau(m, c, j, next);
    cur.swap(next);
  }
  return cur;
}

Deg DualSteenrod::degree(const SElem& x) const {
  if (x.empty()) return {};
  return degree(x.begin()->first) + ring_.degree(x.begin()->second.front().m);
}

SElem DualSteenrod::mul(const SElem& a, const SElem& b) const {
  SElem out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      // (c m)(d n) = (-1)^{|d||m|} c d m n
      RingElem cd;
      for (const auto& t : cb) {
        int sign = (p() > 2 && ring_.odd(t.m) && (degree(ma).s & 1)) ? -1 : 1;
        cd = ring_.add(cd, ring_.mul(ca, ring_.mono(t.m, t.c * sign)));
      }
      if (cd.empty()) continue;
      for (const auto& [m, c] : mul(ma, mb)) acc_add(out, m, ring_.mul(cd, c), ring_);
    }
  return out;
}

SElem DualSteenrod::add(const SElem& a, const SElem& b) const {
  SElem out = a;
  for (const auto& [m, c] : b) acc_add(out, m, c, ring_);
  return out;
}

std::vector<SMono> DualSteenrod::basis_mod(int n, long max_weight) const {
  if (n < -1 || n > 1) throw ConfigError("basis_A_mod_En supports n in {-1,0,1}");
  std::vector<SMono> out;
  // generators in increasing weight: xi_k (k >= 1), tau_j (j >= n+1)
  struct G {
    bool is_xi;
    int idx;
    long wt;
  };
  std::vector<G> gens;
  for (int k = 1; k < 8 && ipow(p(), k) <= max_weight; ++k) gens.push_back({true, k, ipow(p(), k)});
  for (int j = n + 1; j < 16 && ipow(p(), j) <= max_weight; ++j)
    gens.push_back({false, j, ipow(p(), j)});
  std::function<void(size_t, SMono, long)> rec = [&](size_t g, SMono m, long w) {
    if (g == gens.size()) {
      out.push_back(m);
      return;
    }
    const G& gen = gens[g];
    if (gen.is_xi) {
      for (int e = 0; w + e * gen.wt <= max_weight; ++e) {
        SMono mm = m;
        mm.xi[gen.idx] = static_cast<int16_t>(e);
        rec(g + 1, mm, w + e * gen.wt);
      }
    } else {
      rec(g + 1, m, w);
      if (w + gen.wt <= max_weight) {
        SMono mm = m;
        mm.tau |= static_cast<uint16_t>(1u << gen.idx);
        rec(g + 1, mm, w + gen.wt);
      }
    }
  };
  rec(0, SMono{}, 0);
  std::sort(out.begin(), out.end(), [&](const SMono& a, const SMono& b) {
    Deg da = degree(a), db = degree(b);
    if (da != db) return da < db;
    return a < b;
  });
  return out;
}

std::vector<SElem> DualSteenrod::coaction(const ExteriorPair& Ec, const SMono& m) const {
  const int sz = Ec.size();
  // right-form product of two coaction values
  auto prod = [&](const std::vector<SElem>& x, const std::vector<SElem>& y) {
    std::vector<SElem> r(sz);
    for (int K = 0; K < sz; ++K) {
      if (x[K].empty()) continue;
      int xs = degree(x[K]).s;
      for (int L = 0; L < sz; ++L) {
        if (y[L].empty()) continue;
        auto pr = Ec.product(K, L);
        if (pr.coef.empty()) continue;
        int sign = (p() > 2 && (xs & 1) && (ExteriorPair::popcount(L) & 1)) ? -1 : 1;
        SElem c{{SMono{}, ring_.scale(pr.coef, sign)}};
        r[pr.mask] = add(r[pr.mask], mul(c, mul(x[K], y[L])));
      }
    }
    return r;
  };
  std::vector<SElem> acc(sz);
  acc[0][SMono{}] = ring_.one();
  for (int k = 1; k < 8; ++k)
    for (int e = 0; e < m.xi[k]; ++e) {
      std::vector<SElem> g(sz);
      g[0][xi(k)] = ring_.one();
      acc = prod(acc, g);
    }
  for (int j = 0; j < 16; ++j) {
    if (!(m.tau >> j & 1)) continue;
    std::vector<SElem> g(sz);
    g[0][tau(j)] = ring_.one();
    for (int i = 0; i <= std::min(Ec.n(), j); ++i) {
      // tau_i (x) xi_{j-i}^{p^i}
      SMono x;
      if (j - i > 0) x.xi[j - i] = static_cast<int16_t>(ipow(p(), i));
      acc_add(g[1 << i], x, ring_.one(), ring_);
    }
    acc = prod(acc, g);
  }
  return acc;
}

std::vector<SElem> DualSteenrod::coaction(const ExteriorPair& Ec, const SElem& x) const {
  // alpha(c m) = eta_L(c) alpha(m)
  std::vector<SElem> r(Ec.size());
  for (const auto& [m, c] : x) {
    auto am = coaction(Ec, m);
    for (const auto& t : c) {
      for (const auto& tw : Ec.twist(t.m)) {
        SElem coef{{SMono{}, ring_.scale(tw.coef, t.c)}};
        r[tw.L] = add(r[tw.L], mul(coef, am[tw.K]));
      }
    }
  }
  return r;
}

SElem DualSteenrod::right_action(const ExteriorPair& Ec, const SMono& m, int i) const {
  if (i > Ec.n()) throw std::invalid_argument("Q_i outside E(n)");
  return coaction(Ec, m)[1 << i];
}

FinModule DualSteenrod::span_module(std::shared_ptr<const ExteriorPair> Ec,
                                    const std::vector<SMono>& monos) const {
  FinModule M(Ec);
  std::map<SMono, int> index;
  for (const auto& m : monos) index[m] = M.add_basis(degree(m), name(m));
  for (const auto& m : monos) {
    auto a = coaction(*Ec, m);
    for (int K = 1; K < Ec->size(); ++K) {
      AComb v;
      for (const auto& [mm, c] : a[K]) {
        auto it = index.find(mm);
        if (it == index.end())
          throw std::logic_error("span not closed under the action: " + name(m) + " -> " + name(mm));
        v.push_back({it->second, c});
      }
      M.set_action(K, index[m], v);
    }
  }
  return M;
}

bool relative_steenrod_check(const ExteriorPair& E, std::string* detail) {
  const int p = E.p();
  std::vector<Deg> expect{{0, 0}, {1, 0}};
  if (E.n() == 1) {
    expect.push_back({2 * p - 1, p - 1});
    expect.push_back({2 * p, p - 1});
  }
  std::vector<Deg> got;
  for (int K = 0; K < E.size(); ++K) got.push_back(E.degree(K));
  std::sort(got.begin(), got.end());
  std::sort(expect.begin(), expect.end());
  if (detail) {
    *detail = "";
    for (auto d : got) *detail += d.str();
  }
  return got == expect && static_cast<int>(got.size()) == (1 << (E.n() + 1));
}

}  // namespace motivic
