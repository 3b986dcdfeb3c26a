#include "motivic/margolis.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace motivic {

namespace {

int constant_part(const RingElem& c) {
  for (const auto& t : c)
    if (t.m.is_one()) return t.c;
  return 0;
}

Vec reduce_comb(const AComb& v, int p, int n) {
  Vec r(p, n);
  for (const auto& ac : v) r.add(ac.b, constant_part(ac.coef));
  return r;
}

AComb comb_of(const Elem& x, const CoefficientRing& A) {
  std::map<int, RingElem> acc;
  for (const auto& t : x) acc[t.b] = A.add(acc[t.b], A.mono(t.m, t.c));
  AComb out;
  for (auto& [b, c] : acc)
    if (!c.empty()) out.push_back({b, c});
  return out;
}

Vec times(const Vec& v, const Matrix& m) {
  Vec out(m.p, m.cols);
  for (int b = 0; b < v.size(); ++b)
    if (int c = v.get(b)) out.axpy(c, m.rows[b]);
  return out;
}

}  // namespace

int MargolisResult::total() const {
  int t = 0;
  for (auto& [d, n] : dims) t += n;
  return t;
}

Reduction reduce(const FinModule& M) {
  Reduction R;
  R.p = M.p();
  const CoefficientRing& A = M.ring();
  if (A.ngens() == 2) {
    R.x = A.gen(0).name;
    R.y = A.gen(1).name;
  } else {
    R.x = "1";
    R.y = A.gen(0).name;
  }
  for (int b = 0; b < M.rank(); ++b) R.deg.push_back(M.basis(b).deg);
  for (int i = 0; i <= M.E().n(); ++i) {
    Matrix q(R.p, 0, M.rank());
    for (int b = 0; b < M.rank(); ++b) q.rows.push_back(reduce_comb(M.action(1 << i, b), R.p, M.rank()));
    R.Q.push_back(std::move(q));
  }
  return R;
}

Matrix reduce(const FinModule& M, const FinModule& N, const ModuleMap& f) {
  Matrix m(M.p(), 0, N.rank());
  for (const auto& v : f.img) m.rows.push_back(reduce_comb(v, M.p(), N.rank()));
  return m;
}

MargolisResult margolis_homology(const FinModule& M, int i) {
  if (i < 0 || i > M.E().n()) throw ConfigError("Margolis homology needs 0 <= i <= n");
  Reduction R = reduce(M);
  const Matrix& Q = R.Q[i];
  const int n = M.rank(), p = R.p;
  for (int b = 0; b < n; ++b)
    if (!times(Q.rows[b], Q).is_zero())
      throw std::logic_error("Q_" + std::to_string(i) + "^2 != 0 on the reduction");
  MargolisResult res;
  res.i = i;
  Reducer im(p, n);
  for (int b = 0; b < n; ++b) im.insert(Q.rows[b]);
  std::map<Deg, std::vector<int>> by_deg;
  for (int b = 0; b < n; ++b) by_deg[R.deg[b]].push_back(b);
  for (auto& [d, idx] : by_deg) {
    Matrix src(p, 0, n);
    for (int b : idx) src.rows.push_back(Q.rows[b]);
    Matrix ker = kernel(src);
    for (const Vec& k : ker.rows) {
      Vec v(p, n);
      for (size_t j = 0; j < idx.size(); ++j) v.add(idx[j], k.get(static_cast<int>(j)));
      if (im.insert(v)) {
        res.dims[d]++;
        res.classes.emplace_back(d, v);
      }
    }
  }
  return res;
}

bool x_free(const FinModule& M, int depth) {
  const CoefficientRing& A = M.ring();
  if (A.ngens() < 2 && A.gen(0).name != "rho") return true;
  const RingGen& x = A.gen(0);
  Mono xm = A.gen_mono(0);
  std::set<Deg> degs;
  for (int b = 0; b < M.rank(); ++b)
    for (int e0 = 0; e0 <= depth; ++e0)
      for (int e1 = 0; e1 <= depth; ++e1)
        degs.insert(M.basis(b).deg + A.gen(0).deg * e0 +
                    (A.ngens() > 1 ? A.gen(1).deg * e1 : Deg{0, 0}));
  auto xrank = [&](Deg d) {
    auto src = M.fp_basis(d), dst = M.fp_basis(d + x.deg);
    Matrix m(M.p(), 0, static_cast<int>(dst.size()));
    for (const auto& [b, mono] : src) m.rows.push_back(M.to_vec(M.mul(xm, {{b, mono, 1}}), dst));
    return rank(m);
  };
  for (Deg d : degs) {
    int dim = static_cast<int>(M.fp_basis(d).size());
    if (x.square_zero) {
      if (dim - xrank(d) != xrank(d - x.deg)) return false;
    } else if (xrank(d) != dim) {
      return false;
    }
  }
  return true;
}

bool is_free(const FinModule& M) {
  if (!x_free(M)) return false;
  for (int i = 0; i <= M.E().n(); ++i)
    if (margolis_homology(M, i).total()) return false;
  return true;
}

FreeSplit split_free_summands(const FinModule& M) {
  FreeSplit out;
  out.core = M;
  const int full = M.E().size() - 1;
  for (int guard = M.rank() / M.E().size() + 1; guard > 0; --guard) {
    const FinModule& C = out.core;
    int best = -1;
    for (int b = 0; b < C.rank(); ++b) {
      bool hit = false;
      for (const auto& t : C.theta(full, C.basis_elem(b)))
        if (t.m.is_one()) hit = true;
      if (hit && (best < 0 || C.basis(b).deg < C.basis(best).deg)) best = b;
    }
    if (best < 0) break;
    std::vector<AComb> rel;
    for (int K = 0; K <= full; ++K) rel.push_back(comb_of(C.theta(K, C.basis_elem(best)), C.ring()));
    out.free.push_back(C.basis(best).deg);
    std::string tag = C.tag;
    out.core = quotient(C, rel);
    out.core.tag = tag;
  }
  return out;
}

std::vector<ModuleMap> hom_space(const FinModule& M, const FinModule& N) {
  const int p = M.p(), sz = M.E().size();
  const CoefficientRing& A = M.ring();
  // unknowns: coefficient of each F_p-basis element of N_{|b|} in f(b)
  std::vector<std::vector<std::pair<int, Mono>>> unk(M.rank());
  std::vector<int> unk_off(M.rank() + 1, 0);
  for (int b = 0; b < M.rank(); ++b) {
    unk[b] = N.fp_basis(M.basis(b).deg);
    unk_off[b + 1] = unk_off[b] + static_cast<int>(unk[b].size());
  }
  // equations f(b Q_K) = f(b) Q_K, one block per (b, K)
  std::vector<std::vector<std::pair<int, Mono>>> eq(M.rank() * sz);
  std::vector<int> eq_off(M.rank() * sz + 1, 0);
  for (int b = 0; b < M.rank(); ++b)
    for (int K = 0; K < sz; ++K) {
      int e = b * sz + K;
      if (K) eq[e] = N.fp_basis(M.basis(b).deg - M.E().degree(K));
      eq_off[e + 1] = eq_off[e] + static_cast<int>(eq[e].size());
    }
  // where b occurs in theta_K(b0)
  struct Use {
    int b0, K;
    Mono a;
    int c;
  };
  std::vector<std::vector<Use>> uses(M.rank());
  for (int b0 = 0; b0 < M.rank(); ++b0)
    for (int K = 1; K < sz; ++K)
      for (const auto& ac : M.action(K, b0))
        for (const auto& t : ac.coef) uses[ac.b].push_back({b0, K, t.m, t.c});
  Matrix sys(p, unk_off.back(), eq_off.back());
  for (int b = 0; b < M.rank(); ++b)
    for (size_t j = 0; j < unk[b].size(); ++j) {
      Vec& row = sys.rows[unk_off[b] + j];
      Elem y{{unk[b][j].first, unk[b][j].second, 1}};
      auto put = [&](int e, const Elem& z, int c) {
        for (const auto& t : z) {
          auto it = std::lower_bound(eq[e].begin(), eq[e].end(), std::make_pair(t.b, t.m));
          row.add(eq_off[e] + static_cast<int>(it - eq[e].begin()), t.c * c);
        }
      };
      for (int K = 1; K < sz; ++K) put(b * sz + K, N.theta(K, y), -1);
      for (const auto& u : uses[b]) put(u.b0 * sz + u.K, N.mul(u.a, y), u.c);
    }
  std::vector<ModuleMap> out;
  for (const Vec& k : kernel(sys).rows) {
    ModuleMap f;
    for (int b = 0; b < M.rank(); ++b) {
      Elem y;
      for (size_t j = 0; j < unk[b].size(); ++j)
        if (int c = k.get(unk_off[b] + static_cast<int>(j)))
          y.push_back({unk[b][j].first, unk[b][j].second, c});
      f.img.push_back(comb_of(normalize(y, p), A));
    }
    out.push_back(std::move(f));
  }
  return out;
}

bool stable_equivalence(const FinModule& M, const FinModule& N, const ModuleMap& f) {
  if (M.E().n() != N.E().n()) return false;
  Matrix F = reduce(M, N, f);
  Reduction RN = reduce(N);
  for (int i = 0; i <= M.E().n(); ++i) {
    MargolisResult HM = margolis_homology(M, i), HN = margolis_homology(N, i);
    if (HM.dims != HN.dims) return false;
    Reducer im(M.p(), N.rank());
    for (const Vec& r : RN.Q[i].rows) im.insert(r);
    int hits = 0;
    for (const auto& [d, v] : HM.classes) hits += im.insert(times(v, F));
    if (hits != HM.total()) return false;
  }
  return true;
}

std::optional<ModuleMap> find_stable_equivalence(const FinModule& M, const FinModule& N) {
  auto basis = hom_space(M, N);
  auto combine = [&](const ModuleMap& f, int c, const ModuleMap& g) {
    ModuleMap h;
    const CoefficientRing& A = N.ring();
    for (int b = 0; b < M.rank(); ++b) {
      Elem y = N.add(to_elem(f.img[b], N.p()), N.scale(to_elem(g.img[b], N.p()), c));
      h.img.push_back(comb_of(y, A));
    }
    return h;
  };
  for (const auto& f : basis)
    if (stable_equivalence(M, N, f)) return f;
  for (size_t j = 0; j < basis.size(); ++j)
    for (size_t k = j + 1; k < basis.size(); ++k)
      for (int c = 1; c < M.p(); ++c) {
        ModuleMap h = combine(basis[j], c, basis[k]);
        if (stable_equivalence(M, N, h)) return h;
      }
  return std::nullopt;
}

}  // namespace motivic
