#include "motivic/module.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace motivic {

Elem normalize(Elem x, int p) {
  std::sort(x.begin(), x.end(), [](const ETerm& a, const ETerm& b) {
    return a.b != b.b ? a.b < b.b : a.m < b.m;
  });
  Elem out;
  for (const auto& t : x) {
    if (!out.empty() && out.back().b == t.b && out.back().m == t.m) {
      out.back().c = (out.back().c + t.c) % p;
    } else {
      out.push_back({t.b, t.m, modp(t.c, p)});
    }
    if (!out.empty() && out.back().c == 0) out.pop_back();
  }
  return out;
}

int FinModule::add_basis(Deg d, std::string label) {
  basis_.push_back({d, std::move(label)});
  if (theta_.empty()) theta_.resize(E_->size());
  for (auto& t : theta_) t.emplace_back();
  return rank() - 1;
}

void FinModule::set_action(int K, int b, AComb v) { theta_[K][b] = std::move(v); }

std::vector<std::pair<int, Mono>> FinModule::fp_basis(Deg d) const {
  std::vector<std::pair<int, Mono>> out;
  for (int b = 0; b < rank(); ++b)
    for (const Mono& m : ring().basis(d - basis_[b].deg)) out.emplace_back(b, m);
  return out;
}

Vec FinModule::to_vec(const Elem& x, const std::vector<std::pair<int, Mono>>& fpb) const {
  Vec v(p(), static_cast<int>(fpb.size()));
  for (const auto& t : x) {
    auto it = std::lower_bound(fpb.begin(), fpb.end(), std::make_pair(t.b, t.m));
    if (it == fpb.end() || it->first != t.b || it->second != t.m)
      throw std::logic_error("element term outside the degree basis");
    v.add(static_cast<int>(it - fpb.begin()), t.c);
  }
  return v;
}

Elem FinModule::from_vec(const Vec& v, const std::vector<std::pair<int, Mono>>& fpb) const {
  Elem x;
  for (int i = 0; i < v.size(); ++i)
    if (int c = v.get(i)) x.push_back({fpb[i].first, fpb[i].second, c});
  return x;
}

Elem FinModule::theta(int K, const Elem& x) const {
  if (K == 0) return x;
  Elem out;
  const int pp = p();
  for (const auto& t : x) {
    for (const auto& tw : E_->twist(t.m)) {
      if (tw.L != K) continue;
      if (tw.K == 0) {
        for (const auto& c : tw.coef) out.push_back({t.b, c.m, c.c * t.c % pp});
        continue;
      }
      for (const auto& ac : theta_[tw.K][t.b])
        for (const auto& c1 : tw.coef)
          for (const auto& c2 : ac.coef) {
            Mono m;
            if (!ring().mul(c1.m, c2.m, m)) continue;
            out.push_back({ac.b, m, c1.c * c2.c % pp * t.c % pp});
          }
    }
  }
  return normalize(std::move(out), pp);
}

Elem FinModule::mul(const Mono& a, const Elem& x) const {
  Elem out;
  for (const auto& t : x) {
    Mono m;
    if (ring().mul(a, t.m, m)) out.push_back({t.b, m, t.c});
  }
  return normalize(std::move(out), p());
}

Elem FinModule::add(const Elem& x, const Elem& y) const {
  Elem out = x;
  out.insert(out.end(), y.begin(), y.end());
  return normalize(std::move(out), p());
}

Elem FinModule::scale(const Elem& x, int c) const {
  Elem out = x;
  for (auto& t : out) t.c = t.c * modp(c, p()) % p();
  return normalize(std::move(out), p());
}

Deg FinModule::degree(const Elem& x) const {
  if (x.empty()) return {};
  return basis_[x[0].b].deg + ring().degree(x[0].m);
}

std::string FinModule::str(const Elem& x) const {
  if (x.empty()) return "0";
  std::string s;
  for (const auto& t : x) {
    if (!s.empty()) s += " + ";
    if (t.c != 1) s += std::to_string(t.c) + " ";
    if (!t.m.is_one()) s += ring().name(t.m) + " ";
    s += basis_[t.b].label;
  }
  return s;
}

Deg FinModule::top() const {
  Deg d{-1000000, -1000000};
  for (const auto& b : basis_) d = {std::max(d.s, b.deg.s), std::max(d.w, b.deg.w)};
  return d;
}

Deg FinModule::bottom() const {
  Deg d{1000000, 1000000};
  for (const auto& b : basis_) d = {std::min(d.s, b.deg.s), std::min(d.w, b.deg.w)};
  return d;
}

std::map<Deg, int> FinModule::rank_by_degree() const {
  std::map<Deg, int> r;
  for (const auto& b : basis_) ++r[b.deg];
  return r;
}

std::string FinModule::check_axioms(int depth) const {
  const int sz = E_->size();
  std::vector<std::vector<ExteriorPair::CoTerm>> co(sz);
  for (int J = 1; J < sz; ++J) co[J] = E_->coproduct(J);
  std::vector<Mono> monos;
  for (int a = 0; a <= depth; ++a)
    for (int b = 0; b <= (ring().ngens() > 1 ? depth : 0); ++b) {
      Mono m;
      m.e[0] = static_cast<int16_t>(a);
      m.e[1] = static_cast<int16_t>(b);
      Mono tmp;
      if (ring().mul(m, Mono{}, tmp)) monos.push_back(m);
    }
  for (int b = 0; b < rank(); ++b) {
    for (int K = 1; K < sz; ++K)
      for (const auto& ac : theta_[K][b])
        for (const auto& c : ac.coef)
          if (basis_[ac.b].deg + ring().degree(c.m) != basis_[b].deg - E_->degree(K))
            return "degree mismatch in Q" + std::to_string(K) + " on " + basis_[b].label;
    for (const Mono& a : monos) {
      Elem x = mul(a, basis_elem(b));
      if (x.empty()) continue;
      for (int K = 1; K < sz; ++K)
        for (int L = 1; L < sz; ++L) {
          Elem lhs = theta(L, theta(K, x));
          Elem rhs;
          for (int J = 1; J < sz; ++J)
            for (const auto& t : co[J])
              if (t.K == K && t.L == L)
                for (const auto& c : t.coef) rhs = add(rhs, scale(mul(c.m, theta(J, x)), c.c));
          if (lhs != rhs)
            return "module axiom fails for Q" + std::to_string(K) + " Q" + std::to_string(L) +
                   " on " + str(x);
        }
    }
  }
  return "";
}

FinModule unit_module(std::shared_ptr<const ExteriorPair> E) {
  FinModule M(std::move(E));
  M.add_basis({0, 0}, "1");
  M.tag = "unit";
  return M;
}

FinModule free_module(std::shared_ptr<const ExteriorPair> E, Deg top) {
  FinModule M(E);
  const int sz = E->size();
  for (int K = 0; K < sz; ++K)
    M.add_basis(top - E->degree(K), K == 0 ? "g" : "g " + E->mask_name(K, true));
  for (int J = 1; J < sz; ++J)
    for (const auto& t : E->coproduct(J))
      if (t.L != 0) {
        // (g Q_K) Q_L = coef g Q_J
        AComb cur = M.action(t.L, t.K);
        cur.push_back({J, t.coef});
        M.set_action(t.L, t.K, cur);
      }
  M.tag = "free";
  return M;
}

FinModule suspend(const FinModule& M, Deg d) {
  FinModule S(M.E_ptr());
  for (int b = 0; b < M.rank(); ++b) S.add_basis(M.basis(b).deg + d, M.basis(b).label);
  for (int K = 1; K < M.E().size(); ++K)
    for (int b = 0; b < M.rank(); ++b) S.set_action(K, b, M.action(K, b));
  S.tag = "Suspension(" + M.tag + ")";
  S.truncated = M.truncated;
  return S;
}

FinModule direct_sum(const FinModule& M, const FinModule& N) {
  FinModule S(M.E_ptr());
  for (int b = 0; b < M.rank(); ++b) S.add_basis(M.basis(b).deg, M.basis(b).label);
  for (int b = 0; b < N.rank(); ++b) S.add_basis(N.basis(b).deg, N.basis(b).label);
  for (int K = 1; K < M.E().size(); ++K) {
    for (int b = 0; b < M.rank(); ++b) S.set_action(K, b, M.action(K, b));
    for (int b = 0; b < N.rank(); ++b) {
      AComb v = N.action(K, b);
      for (auto& ac : v) ac.b += M.rank();
      S.set_action(K, M.rank() + b, v);
    }
  }
  S.tag = M.tag + "+" + N.tag;
  S.truncated = M.truncated || N.truncated;
  return S;
}

FinModule tensor(const FinModule& M, const FinModule& N) {
  const ExteriorPair& E = M.E();
  const CoefficientRing& A = M.ring();
  const int p = M.p(), sz = E.size();
  FinModule T(M.E_ptr());
  auto idx = [&](int b, int c) { return b * N.rank() + c; };
  for (int b = 0; b < M.rank(); ++b)
    for (int c = 0; c < N.rank(); ++c)
      T.add_basis(M.basis(b).deg + N.basis(c).deg, M.basis(b).label + "*" + N.basis(c).label);
  auto comp = [&](const FinModule& X, int K, int b) {
    if (K == 0) return AComb{{b, A.one()}};
    return X.action(K, b);
  };
  for (int b = 0; b < M.rank(); ++b)
    for (int c = 0; c < N.rank(); ++c) {
      std::vector<std::map<int, RingElem>> acc(sz);
      for (int K = 0; K < sz; ++K)
        for (int L = 0; L < sz; ++L) {
          if (K == 0 && L == 0) continue;
          auto pr = E.product(K, L);
          if (pr.coef.empty()) continue;
          // (e_K (x) x)(e_L (x) y) = (-1)^{|x||e_L|} e_K e_L (x) x (x) y
          int xdeg = (M.basis(b).deg - E.degree(K)).s;
          int sign = (p > 2 && (xdeg & 1) && (ExteriorPair::popcount(L) & 1)) ? -1 : 1;
          for (const auto& xb : comp(M, K, b))
            for (const auto& yc : comp(N, L, c))
              for (const auto& r : xb.coef)
                for (const auto& s : yc.coef) {
                  // r b' (x) s c' = (-1)^{|s||b'|} r s (b' (x) c')
                  int sgn = sign;
                  if (p > 2 && A.odd(s.m) && (M.basis(xb.b).deg.s & 1)) sgn = -sgn;
                  Mono rs;
                  if (!A.mul(r.m, s.m, rs)) continue;
                  RingElem coef = A.mul(pr.coef, A.mono(rs, r.c * s.c * sgn));
                  auto& slot = acc[pr.mask][idx(xb.b, yc.b)];
                  slot = A.add(slot, coef);
                }
        }
      for (int J = 1; J < sz; ++J) {
        AComb v;
        for (auto& [i, coef] : acc[J])
          if (!coef.empty()) v.push_back({i, coef});
        T.set_action(J, idx(b, c), v);
      }
    }
  T.tag = "Tensor(" + M.tag + "," + N.tag + ")";
  T.truncated = M.truncated || N.truncated;
  return T;
}

FinModule restrict_to(const FinModule& M, std::shared_ptr<const ExteriorPair> Em) {
  if (Em->n() > M.E().n()) throw std::invalid_argument("restriction must go down");
  FinModule R(Em);
  for (int b = 0; b < M.rank(); ++b) R.add_basis(M.basis(b).deg, M.basis(b).label);
  for (int K = 1; K < Em->size(); ++K)
    for (int b = 0; b < M.rank(); ++b) R.set_action(K, b, M.action(K, b));
  R.tag = M.tag;
  R.truncated = M.truncated;
  return R;
}

FinModule quotient(const FinModule& M, const std::vector<Vec>& relations) {
  std::vector<AComb> rel;
  for (const Vec& v : relations) {
    AComb a;
    for (int j = 0; j < v.size(); ++j)
      if (int c = v.get(j)) a.push_back({j, M.ring().mono(Mono{}, c)});
    rel.push_back(a);
  }
  return quotient(M, rel);
}

namespace {

int constant_part(const RingElem& c) {
  for (const auto& t : c)
    if (t.m.is_one()) return t.c;
  return 0;
}

AComb comb_of(const Elem& x, const CoefficientRing& A) {
  std::map<int, RingElem> acc;
  for (const auto& t : x) acc[t.b] = A.add(acc[t.b], A.mono(t.m, t.c));
  AComb out;
  for (auto& [b, c] : acc)
    if (!c.empty()) out.push_back({b, c});
  return out;
}

}  // namespace

FinModule quotient(const FinModule& M, const std::vector<AComb>& relations) {
  const int p = M.p(), n = M.rank();
  const CoefficientRing& A = M.ring();
  // eliminate on constant parts: rel[j] = b_{piv[j]} + (terms with zero constant part
  // at every pivot)
  std::vector<std::map<int, RingElem>> rel;
  std::vector<int> piv;
  for (const AComb& v : relations) {
    std::map<int, RingElem> r;
    for (const auto& ac : v) r[ac.b] = A.add(r[ac.b], ac.coef);
    for (size_t j = 0; j < rel.size(); ++j) {
      int c = constant_part(r[piv[j]]);
      if (!c) continue;
      for (auto& [b, coef] : rel[j]) r[b] = A.add(r[b], A.scale(coef, -c));
    }
    int pv = -1;
    for (auto& [b, coef] : r)
      if (constant_part(coef)) {
        pv = b;
        break;
      }
    if (pv < 0) {
      for (auto& [b, coef] : r)
        if (!coef.empty()) throw std::logic_error("relation is not part of an A-basis");
      continue;
    }
    int inv = inv_mod(constant_part(r[pv]), p);
    for (auto& [b, coef] : r) coef = A.scale(coef, inv);
    for (size_t j = 0; j < rel.size(); ++j) {
      int c = constant_part(rel[j][pv]);
      if (!c) continue;
      for (auto& [b, coef] : r) rel[j][b] = A.add(rel[j][b], A.scale(coef, -c));
    }
    rel.push_back(std::move(r));
    piv.push_back(pv);
  }
  std::vector<int> is_pivot(n, -1);
  for (size_t j = 0; j < piv.size(); ++j) is_pivot[piv[j]] = static_cast<int>(j);
  std::vector<int> newidx(n, -1);
  FinModule Q(M.E_ptr());
  for (int b = 0; b < n; ++b)
    if (is_pivot[b] < 0) newidx[b] = Q.add_basis(M.basis(b).deg, M.basis(b).label);
  // pivot b = -(rest of its relation); other pivots there carry positive-degree
  // coefficients, so the recursion descends in connectivity and terminates
  std::vector<std::map<int, RingElem>> memo(piv.size());
  std::vector<bool> done(piv.size(), false);
  std::function<const std::map<int, RingElem>&(int)> expand = [&](int j) -> const std::map<int, RingElem>& {
    if (done[j]) return memo[j];
    std::map<int, RingElem> out;
    for (auto& [b, coef] : rel[j]) {
      if (b == piv[j] || coef.empty()) continue;
      RingElem mc = A.scale(coef, -1);
      if (is_pivot[b] < 0) {
        out[newidx[b]] = A.add(out[newidx[b]], mc);
        continue;
      }
      for (auto& [c, e] : expand(is_pivot[b])) out[c] = A.add(out[c], A.mul(mc, e));
    }
    memo[j] = std::move(out);
    done[j] = true;
    return memo[j];
  };
  auto project = [&](const AComb& v) {
    std::map<int, RingElem> acc;
    for (const auto& ac : v) {
      int r = is_pivot[ac.b];
      if (r < 0) {
        acc[newidx[ac.b]] = A.add(acc[newidx[ac.b]], ac.coef);
        continue;
      }
      for (auto& [c, e] : expand(r)) acc[c] = A.add(acc[c], A.mul(ac.coef, e));
    }
    AComb out;
    for (auto& [i, c] : acc)
      if (!c.empty()) out.push_back({i, c});
    return out;
  };
  for (int K = 1; K < M.E().size(); ++K) {
    for (int b = 0; b < n; ++b)
      if (newidx[b] >= 0) Q.set_action(K, newidx[b], project(M.action(K, b)));
    // closure: Q_K of every relation must vanish in the quotient
    for (size_t j = 0; j < rel.size(); ++j) {
      AComb r;
      for (auto& [b, c] : rel[j])
        if (!c.empty()) r.push_back({b, c});
      if (!project(comb_of(M.theta(K, to_elem(r, p)), A)).empty())
        throw std::logic_error("relation span not closed under Q");
    }
  }
  Q.tag = "Quotient(" + M.tag + ")";
  Q.truncated = M.truncated;
  return Q;
}

Elem to_elem(const AComb& v, int p) {
  Elem out;
  for (const auto& ac : v)
    for (const auto& t : ac.coef) out.push_back({ac.b, t.m, t.c});
  return normalize(std::move(out), p);
}

Elem apply(const FinModule& N, const ModuleMap& f, const Elem& x) {
  Elem out;
  for (const auto& t : x) {
    Elem y = N.scale(N.mul(t.m, to_elem(f.img[t.b], N.p())), t.c);
    out.insert(out.end(), y.begin(), y.end());
  }
  return normalize(std::move(out), N.p());
}

std::string check_module_map(const FinModule& M, const FinModule& N, const ModuleMap& f) {
  if (static_cast<int>(f.img.size()) != M.rank()) return "image count differs from source rank";
  for (int b = 0; b < M.rank(); ++b) {
    Elem y = to_elem(f.img[b], N.p());
    for (const auto& t : y)
      if (N.basis(t.b).deg + N.ring().degree(t.m) != M.basis(b).deg)
        return "f(" + M.basis(b).label + ") has the wrong degree";
    for (int K = 1; K < M.E().size(); ++K) {
      Elem lhs = apply(N, f, M.theta(K, M.basis_elem(b)));
      Elem rhs = N.theta(K, y);
      if (lhs != rhs)
        return "f does not commute with " + M.E().mask_name(K, true) + " on " + M.basis(b).label;
    }
  }
  return "";
}

int map_rank(const FinModule& M, const FinModule& N, const ModuleMap& f, Deg d) {
  auto src = M.fp_basis(d), dst = N.fp_basis(d);
  Matrix m(M.p(), 0, static_cast<int>(dst.size()));
  for (const auto& [b, mono] : src)
    m.rows.push_back(N.to_vec(apply(N, f, {{b, mono, 1}}), dst));
  return rank(m);
}

}  // namespace motivic
