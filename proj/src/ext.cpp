#include "motivic/ext.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace motivic {

namespace {

bool by_connectivity(Deg a, Deg b) {
  if (a.h() != b.h()) return a.h() < b.h();
  return a < b;
}

Matrix images_of(const FinModule& X, const std::vector<std::pair<int, Mono>>& src,
                 const std::vector<std::pair<int, Mono>>& dst,
                 const std::function<Elem(const Elem&)>& f) {
  Matrix m(X.p(), 0, static_cast<int>(dst.size()));
  for (const auto& [b, mono] : src) m.rows.push_back(X.to_vec(f({{b, mono, 1}}), dst));
  return m;
}

}  // namespace

Elem Resolution::apply_map(const FinModule& X, int size, const std::vector<Elem>& gen_images,
                           const Elem& x) {
  Elem out;
  for (const auto& t : x) {
    const Elem& g = gen_images[t.b / size];
    if (g.empty()) continue;
    Elem y = X.scale(X.mul(t.m, X.theta(t.b % size, g)), t.c);
    out.insert(out.end(), y.begin(), y.end());
  }
  return normalize(std::move(out), X.p());
}

Elem Resolution::apply_d(int f, const Elem& x) const {
  return apply_map(f == 0 ? N_ : P_[f - 1], E().size(), d_[f], x);
}

int Resolution::add_generator(int f, Deg top, Elem boundary) {
  FinModule& P = P_[f];
  const ExteriorPair& E = this->E();
  const int sz = E.size(), j = ngens(f), base = P.rank();
  const std::string name = "g" + std::to_string(f) + "_" + std::to_string(j);
  for (int K = 0; K < sz; ++K) P.add_basis(top - E.degree(K), K ? name + " " + E.mask_name(K, true) : name);
  for (int J = 1; J < sz; ++J)
    for (const auto& t : E.coproduct(J))
      if (t.L != 0) {
        AComb cur = P.action(t.L, base + t.K);
        cur.push_back({base + J, t.coef});
        P.set_action(t.L, base + t.K, cur);
      }
  gens_[f].push_back(top);
  d_[f].push_back(std::move(boundary));
  return j;
}

Resolution::Resolution(FinModule N, int f_max) : N_(std::move(N)) {
  for (int f = 0; f <= f_max; ++f) extend();
}

void Resolution::extend() {
  const int f = static_cast<int>(P_.size());
  const int p = N_.p(), sz = E().size();
  P_.emplace_back(N_.E_ptr());
  P_.back().tag = "P" + std::to_string(f);
  gens_.emplace_back();
  d_.emplace_back();
  // candidate degrees: a minimal resolution reduces to the classical one over the
  // exterior algebra, whose stage-f generators sit at degrees of (g, K != 0) of stage f-1
  std::vector<Deg> cand;
  if (f == 0) {
    for (const auto& b : N_.basis()) cand.push_back(b.deg);
  } else {
    for (Deg g : gens_[f - 1])
      for (int K = 1; K < sz; ++K) cand.push_back(g - E().degree(K));
  }
  std::sort(cand.begin(), cand.end(), by_connectivity);
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  const FinModule& prev = f == 0 ? N_ : P_[f - 1];

  size_t i = 0;
  while (i < cand.size()) {
    // degrees of equal connectivity do not interact
    size_t e = i;
    while (e < cand.size() && cand[e].h() == cand[i].h()) ++e;
    const int nd = static_cast<int>(e - i);
    std::vector<std::vector<Elem>> found(nd);
#pragma omp parallel for schedule(dynamic) if (nd > 1)
    for (int q = 0; q < nd; ++q) {
      const Deg D = cand[i + q];
      auto pb = prev.fp_basis(D);
      if (pb.empty()) continue;
      std::vector<Vec> kern;
      if (f == 0) {
        for (int j = 0; j < static_cast<int>(pb.size()); ++j) {
          Vec v(p, static_cast<int>(pb.size()));
          v.set(j, 1);
          kern.push_back(v);
        }
      } else {
        const FinModule& prev2 = f == 1 ? N_ : P_[f - 2];
        auto qb = prev2.fp_basis(D);
        Matrix m = images_of(prev2, pb, qb, [&](const Elem& x) { return apply_d(f - 1, x); });
        kern = kernel(m).rows;
      }
      Reducer red(p, static_cast<int>(pb.size()));
      for (const auto& [b, mono] : P_[f].fp_basis(D))
        red.insert(prev.to_vec(apply_d(f, {{b, mono, 1}}), pb));
      for (const Vec& k : kern)
        if (red.insert(k)) found[q].push_back(prev.from_vec(k, pb));
    }
    for (int q = 0; q < nd; ++q)
      for (auto& b : found[q]) add_generator(f, cand[i + q], std::move(b));
    i = e;
  }
}

std::string Resolution::verify(const std::vector<Deg>& degrees) const {
  const int p = N_.p(), sz = E().size();
  for (int f = 0; f <= length(); ++f)
    for (int j = 0; j < ngens(f); ++j) {
      if (f >= 1)
        for (const auto& t : d_[f][j])
          if (t.b % sz == 0 && t.m.is_one()) return "not minimal at stage " + std::to_string(f);
      if (f >= 1 && !apply_d(f - 1, d_[f][j]).empty()) return "d d != 0 at stage " + std::to_string(f);
    }
  for (Deg D : degrees) {
    auto nb = N_.fp_basis(D);
    auto b0 = P_[0].fp_basis(D);
    Matrix eps = images_of(N_, b0, nb, [&](const Elem& x) { return apply_d(0, x); });
    if (rank(eps) != static_cast<int>(nb.size())) return "augmentation not onto in " + D.str();
    int prev_rank = rank(eps);
    int prev_dim = static_cast<int>(b0.size());
    for (int f = 1; f <= length(); ++f) {
      auto bf = P_[f].fp_basis(D), bp = P_[f - 1].fp_basis(D);
      Matrix m = images_of(P_[f - 1], bf, bp, [&](const Elem& x) { return apply_d(f, x); });
      int r = rank(m);
      if (r != prev_dim - prev_rank)
        return "not exact at stage " + std::to_string(f - 1) + " in " + D.str();
      prev_rank = r;
      prev_dim = static_cast<int>(bf.size());
    }
  }
  (void)p;
  return "";
}

std::shared_ptr<const Resolution> unit_resolution(const FieldSpec& spec, int n, int f_max) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, long, int>, std::shared_ptr<const Resolution>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[std::make_tuple(static_cast<int>(spec.kind), spec.p, spec.q, n)];
  if (!slot || slot->length() < f_max) slot = std::make_shared<Resolution>(unit_module(exterior(spec, n)), f_max);
  return slot;
}

VLift::VLift(std::shared_ptr<const Resolution> R, int i) : R_(std::move(R)), i_(i) {
  const ExteriorPair& E = R_->E();
  if (i < 0 || i > E.n()) throw ConfigError("v_i needs i <= n");
  const FinModule& N = R_->target();
  const int p = N.p(), sz = E.size();
  shift_ = E.tau_degree(i);
  // the extension N -> N (x) E_i -> Sigma N representing v_i
  FinModule Ei(N.E_ptr());
  int one = Ei.add_basis({0, 0}, "1");
  int e = Ei.add_basis(shift_, "e");
  Ei.set_action(1 << i, e, {{one, N.ring().one()}});
  FinModule T = tensor(N, Ei);
  std::vector<Elem> lifted;
  for (int j = 0; j < R_->ngens(0); ++j) {
    Elem y;
    for (const auto& t : R_->d(0, j)) y.push_back({t.b * 2 + 1, t.m, t.c});
    lifted.push_back(y);
  }
  const int L = R_->length();
  V_.assign(L, {});
  for (int f = 0; f < L; ++f) {
    const FinModule& Pf = R_->P(f);
    for (int j = 0; j < R_->ngens(f + 1); ++j) {
      Deg D = R_->gen_degree(f + 1, j) + shift_;
      Elem target;
      const FinModule* X;
      if (f == 0) {
        Elem c = Resolution::apply_map(T, sz, lifted, R_->d(1, j));
        for (const auto& t : c) {
          if (t.b % 2) throw std::logic_error("v_i cocycle leaves the bottom of the extension");
          target.push_back({t.b / 2, t.m, t.c});
        }
        X = &N;
      } else {
        target = Resolution::apply_map(R_->P(f - 1), sz, V_[f - 1], R_->d(f + 1, j));
        X = &R_->P(f - 1);
      }
      auto src = Pf.fp_basis(D), dst = X->fp_basis(D);
      Matrix m = images_of(*X, src, dst, [&](const Elem& x) { return R_->apply_d(f, x); });
      auto sol = solve(m, X->to_vec(target, dst));
      if (!sol) throw std::logic_error("chain map lift failed");
      V_[f].push_back(Pf.from_vec(*sol, src));
    }
  }
  (void)p;
}

const Elem& VLift::image(int f, int j) const { return V_.at(f).at(j); }

int ExtChart::total() const {
  int t = 0;
  for (auto& [d, n] : dims) t += n;
  return t;
}

namespace {

// Hom_R(P_f, M) in internal degree (t, w): basis (generator j, F_p-basis of M)
struct Cochains {
  std::vector<int> off;  // per generator
  std::vector<std::vector<std::pair<int, Mono>>> mb;
  int size() const { return off.empty() ? 0 : off.back(); }
};

Cochains cochains(const Resolution& R, const FinModule& M, int f, Deg tw) {
  Cochains c;
  c.off.push_back(0);
  for (int j = 0; j < R.ngens(f); ++j) {
    c.mb.push_back(M.fp_basis(R.gen_degree(f, j) + tw));
    c.off.push_back(c.off.back() + static_cast<int>(c.mb.back().size()));
  }
  return c;
}

std::vector<Elem> gen_values(const Cochains& c, const Vec& phi) {
  std::vector<Elem> out(c.mb.size());
  for (size_t j = 0; j < c.mb.size(); ++j)
    for (size_t q = 0; q < c.mb[j].size(); ++q)
      if (int a = phi.get(c.off[j] + static_cast<int>(q)))
        out[j].push_back({c.mb[j][q].first, c.mb[j][q].second, a});
  return out;
}

Vec to_cochain(const FinModule& M, const Cochains& c, const std::vector<Elem>& vals) {
  Vec v(M.p(), c.size());
  for (size_t j = 0; j < vals.size(); ++j) {
    const auto& fpb = c.mb[j];
    for (const auto& t : vals[j]) {
      auto it = std::lower_bound(fpb.begin(), fpb.end(), std::make_pair(t.b, t.m));
      v.add(c.off[j] + static_cast<int>(it - fpb.begin()), t.c);
    }
  }
  return v;
}

struct Cell {
  int f = 0;
  Deg tw;
  Cochains C;
  std::vector<Vec> reps;
  std::unique_ptr<TrackingReducer> coords;  // inputs: boundaries, then reps
  int nbound = 0;
};

// cohomology of the Hom complex at fixed internal degree, stages 0..fmax
void hom_cohomology(const Resolution& R, const FinModule& M, Deg tw, int fmax,
                    std::vector<Cell>& out) {
  const int p = M.p(), sz = R.E().size();
  std::vector<Cochains> C;
  for (int f = 0; f <= fmax + 1; ++f) C.push_back(cochains(R, M, f, tw));
  // delta^f: C^f -> C^{f+1}, rows indexed by the C^f basis
  std::vector<Matrix> delta;
  for (int f = 0; f <= fmax; ++f) {
    Matrix m(p, C[f].size(), C[f + 1].size());
    for (int g = 0; g < R.ngens(f + 1); ++g) {
      const Elem& dg = R.d(f + 1, g);
      const auto& fpb = C[f + 1].mb[g];
      if (fpb.empty()) continue;
      for (const auto& t : dg) {
        int j = t.b / sz, K = t.b % sz;
        for (size_t q = 0; q < C[f].mb[j].size(); ++q) {
          auto [b, mono] = C[f].mb[j][q];
          Elem y = M.scale(M.mul(t.m, M.theta(K, {{b, mono, 1}})), t.c);
          Vec& row = m.rows[C[f].off[j] + q];
          for (const auto& u : y) {
            auto it = std::lower_bound(fpb.begin(), fpb.end(), std::make_pair(u.b, u.m));
            row.add(C[f + 1].off[g] + static_cast<int>(it - fpb.begin()), u.c);
          }
        }
      }
    }
    delta.push_back(std::move(m));
  }
  for (int f = 0; f <= fmax; ++f) {
    Cell cell;
    cell.f = f;
    cell.tw = tw;
    cell.C = C[f];
    const int n = C[f].size();
    std::vector<Vec> bound;
    if (f > 0) bound = image(delta[f - 1]).rows;
    Matrix z = kernel(delta[f]);
    Reducer red(p, n);
    for (const Vec& b : bound) red.insert(b);
    for (const Vec& k : z.rows)
      if (red.insert(k)) cell.reps.push_back(k);
    cell.nbound = static_cast<int>(bound.size());
    cell.coords = std::make_unique<TrackingReducer>(p, n, cell.nbound + static_cast<int>(cell.reps.size()));
    for (int b = 0; b < cell.nbound; ++b) cell.coords->insert(bound[b], b);
    for (size_t r = 0; r < cell.reps.size(); ++r) cell.coords->insert(cell.reps[r], cell.nbound + static_cast<int>(r));
    out.push_back(std::move(cell));
  }
}

// coordinates of a cocycle on the chosen representatives
Vec class_of(const Cell& c, const Vec& cocycle, int p) {
  auto e = c.coords->express(cocycle);
  if (!e) throw std::logic_error("product is not a cocycle");
  Vec out(p, static_cast<int>(c.reps.size()));
  for (size_t r = 0; r < c.reps.size(); ++r) out.set(static_cast<int>(r), e->get(c.nbound + static_cast<int>(r)));
  return out;
}

// primitive coefficient classes: each generator, or its first primitive p-power
std::vector<Mono> primitive_coefficients(const ExteriorPair& E) {
  const CoefficientRing& A = E.ring();
  std::vector<Mono> out;
  for (int g = 0; g < A.ngens(); ++g) {
    Mono m = A.gen_mono(g);
    for (int k = 0; k < 4 && !E.primitive(m); ++k) {
      Mono q = m, r;
      for (int e = 1; e < A.p(); ++e) {
        if (!A.mul(q, m, r)) break;
        q = r;
      }
      m = q;
    }
    if (E.primitive(m)) out.push_back(m);
  }
  return out;
}

}  // namespace

ExtChart ext_from_resolution(std::shared_ptr<const Resolution> R, const FinModule& M,
                             const Window& win, bool with_products) {
  if (R->length() < win.f_max + 1) throw std::invalid_argument("resolution too short for window");
  const int p = M.p();
  ExtChart chart;
  chart.p = p;
  chart.window = win;
  chart.module = M.tag;
  chart.algebra = "E(" + std::to_string(M.E().n()) + ")";
  chart.field = M.ring().spec().name();
  chart.truncated = true;
  std::vector<Deg> tws;
  for (int t = win.s_min; t <= win.s_max + win.f_max; ++t)
    for (int w = win.w_min; w <= win.w_max; ++w) tws.push_back({t, w});
  std::vector<std::vector<Cell>> cells(tws.size());
#pragma omp parallel for schedule(dynamic)
  for (size_t q = 0; q < tws.size(); ++q) hom_cohomology(*R, M, tws[q], win.f_max, cells[q]);
  std::map<Deg3, const Cell*> at;
  for (auto& v : cells)
    for (auto& c : v) {
      Deg3 d{c.tw.s - c.f, c.f, c.tw.w};
      if (!win.contains(d)) continue;
      at[d] = &c;
      if (!c.reps.empty()) chart.dims[d] = static_cast<int>(c.reps.size());
    }
  if (!with_products) return chart;

  struct Prod {
    std::string name;
    Deg3 deg;
    std::function<Vec(const Cell&, const Vec&, const Cell&)> apply;
  };
  std::vector<Prod> prods;
  std::vector<std::shared_ptr<VLift>> lifts;
  for (int i = 0; i <= M.E().n(); ++i) {
    auto V = std::make_shared<VLift>(R, i);
    lifts.push_back(V);
    Deg sh = V->shift();
    prods.push_back({"v" + std::to_string(i), Deg3{sh.s - 1, 1, sh.w},
                     [&, V](const Cell& src, const Vec& phi, const Cell& dst) {
                       auto vals = gen_values(src.C, phi);
                       std::vector<Elem> out;
                       for (int g = 0; g < R->ngens(src.f + 1); ++g)
                         out.push_back(Resolution::apply_map(M, R->E().size(), vals, V->image(src.f, g)));
                       return to_cochain(M, dst.C, out);
                     }});
  }
  for (const Mono& c : primitive_coefficients(M.E())) {
    Deg cd = M.ring().degree(c);
    prods.push_back({M.ring().name(c), Deg3{cd.s, 0, cd.w},
                     [&, c](const Cell& src, const Vec& phi, const Cell& dst) {
                       auto vals = gen_values(src.C, phi);
                       for (auto& v : vals) v = M.mul(c, v);
                       return to_cochain(M, dst.C, vals);
                     }});
  }
  std::vector<std::pair<Deg3, const Cell*>> srcs(at.begin(), at.end());
  for (const auto& pr : prods) {
    chart.product_degree[pr.name] = pr.deg;
    std::vector<std::pair<Deg3, Matrix>> res(srcs.size());
#pragma omp parallel for schedule(dynamic)
    for (size_t q = 0; q < srcs.size(); ++q) {
      auto [d, src] = srcs[q];
      if (src->reps.empty()) continue;
      Deg3 e{d.s + pr.deg.s, d.f + pr.deg.f, d.w + pr.deg.w};
      auto it = at.find(e);
      if (it == at.end()) continue;
      const Cell& dst = *it->second;
      Matrix m(p, 0, static_cast<int>(dst.reps.size()));
      for (const Vec& phi : src->reps) m.rows.push_back(class_of(dst, pr.apply(*src, phi, dst), p));
      res[q] = {d, std::move(m)};
    }
    for (auto& [d, m] : res)
      if (m.nrows()) chart.products[pr.name][d] = std::move(m);
  }
  return chart;
}

ExtChart ext_chart(const FinModule& M, const Window& win, bool with_products) {
  auto R = std::make_shared<Resolution>(unit_module(M.E_ptr()), win.f_max + 1);
  return ext_from_resolution(R, M, win, with_products);
}

ExtChart ext_bimodule(const FieldSpec& spec, int k, int m, const Window& win, bool with_products) {
  auto R = std::make_shared<Resolution>(lightning_flash(spec, k), win.f_max + 1);
  ExtChart c = ext_from_resolution(R, lightning_flash(spec, m), win, with_products);
  c.module = "L(" + std::to_string(k) + "),L(" + std::to_string(m) + ")";
  if (with_products) tag_torsion(c);
  return c;
}

void tag_torsion(ExtChart& c) {
  c.b_classes.clear();
  for (auto& [d, n] : c.dims) {
    if (d.f != 0 || d.s >= 0) continue;
    Matrix both(c.p, n, 0);
    for (const char* v : {"v0", "v1"}) {
      auto pd = c.product_degree.find(v);
      if (pd == c.product_degree.end()) continue;
      Deg3 e{d.s + pd->second.s, d.f + pd->second.f, d.w + pd->second.w};
      if (!c.window.contains(e)) continue;
      auto& mp = c.products[v];
      auto it = mp.find(d);
      if (it == mp.end()) continue;
      // concatenate columns
      Matrix nb(c.p, n, both.cols + it->second.cols);
      for (int r = 0; r < n; ++r) {
        for (int j = 0; j < both.cols; ++j) nb.rows[r].set(j, both.rows[r].get(j));
        for (int j = 0; j < it->second.cols; ++j) nb.rows[r].set(both.cols + j, it->second.rows[r].get(j));
      }
      both = std::move(nb);
    }
    int killed = n - rank(both);
    if (killed) c.b_classes[d] = killed;
  }
}

ExtChart cobar_ext_oracle(const FinModule& M, const Window& win) {
  const ExteriorPair& E = M.E();
  const int p = M.p(), sz = E.size();
  // nonempty masks; coproduct restricted to nonempty parts
  std::vector<std::vector<std::tuple<int, int, int>>> dbar(sz);
  for (int J = 1; J < sz; ++J)
    for (const auto& t : E.coproduct(J)) {
      if (t.K == 0 || t.L == 0) continue;
      if (t.coef.size() != 1 || !t.coef[0].m.is_one())
        throw std::logic_error("coproduct with coefficients is outside the oracle's scope");
      dbar[J].emplace_back(t.K, t.L, t.coef[0].c);
    }
  ExtChart chart;
  chart.p = p;
  chart.window = win;
  chart.module = M.tag;
  chart.algebra = "E(" + std::to_string(E.n()) + ")";
  chart.field = M.ring().spec().name();
  chart.truncated = true;
  const long long max_cells = 20000000;
  std::vector<Deg> tws;
  for (int t = win.s_min; t <= win.s_max + win.f_max; ++t)
    for (int w = win.w_min; w <= win.w_max; ++w) tws.push_back({t, w});
  std::vector<std::map<Deg3, int>> found(tws.size());
#pragma omp parallel for schedule(dynamic)
  for (size_t q = 0; q < tws.size(); ++q) {
    const Deg tw = tws[q];
    // C^f: brackets of nonempty masks with an F_p-basis of M in the remaining degree
    struct Block {
      std::vector<int> br;
      std::vector<std::pair<int, Mono>> mb;
      int off;
    };
    std::vector<std::vector<Block>> C(win.f_max + 2);
    std::vector<std::map<std::vector<int>, int>> index(win.f_max + 2);
    std::vector<int> total(win.f_max + 2, 0);
    for (int f = 0; f <= win.f_max + 1; ++f) {
      std::vector<int> br(f, 1);
      while (true) {
        Deg rest = tw;
        for (int K : br) rest = rest - E.degree(K);
        auto mb = M.fp_basis(rest);
        if (!mb.empty()) {
          index[f][br] = static_cast<int>(C[f].size());
          C[f].push_back({br, mb, total[f]});
          total[f] += static_cast<int>(mb.size());
          if (total[f] > max_cells) throw std::runtime_error("cobar oracle window too large");
        }
        int i = f - 1;
        while (i >= 0 && br[i] == sz - 1) br[i--] = 1;
        if (i < 0) break;
        ++br[i];
      }
    }
    auto locate = [&](int f, const std::vector<int>& br, int b, const Mono& m) {
      auto it = index[f].find(br);
      if (it == index[f].end()) throw std::logic_error("cobar target block missing");
      const Block& bl = C[f][it->second];
      auto jt = std::lower_bound(bl.mb.begin(), bl.mb.end(), std::make_pair(b, m));
      return bl.off + static_cast<int>(jt - bl.mb.begin());
    };
    std::vector<int> rk(win.f_max + 2, 0);
    for (int f = 0; f <= win.f_max; ++f) {
      Matrix d(p, total[f], total[f + 1]);
      for (const Block& bl : C[f])
        for (size_t e = 0; e < bl.mb.size(); ++e) {
          Vec& row = d.rows[bl.off + e];
          auto [b, m] = bl.mb[e];
          for (int i = 0; i < f; ++i)
            for (auto [K, L, c] : dbar[bl.br[i]]) {
              std::vector<int> nb(bl.br.begin(), bl.br.begin() + i);
              nb.push_back(K);
              nb.push_back(L);
              nb.insert(nb.end(), bl.br.begin() + i + 1, bl.br.end());
              int sign = (i + 1) % 2 ? -1 : 1;
              row.add(locate(f + 1, nb, b, m), sign * c);
            }
          int sign = (f + 1) % 2 ? -1 : 1;
          for (int L = 1; L < sz; ++L) {
            Elem y = M.theta(L, {{b, m, 1}});
            if (y.empty()) continue;
            std::vector<int> nb = bl.br;
            nb.push_back(L);
            for (const auto& u : y) row.add(locate(f + 1, nb, u.b, u.m), sign * u.c);
          }
        }
      rk[f] = rank(std::move(d));
    }
    for (int f = 0; f <= win.f_max; ++f) {
      int dim = total[f] - rk[f] - (f ? rk[f - 1] : 0);
      Deg3 d3{tw.s - f, f, tw.w};
      if (dim && win.contains(d3)) found[q][d3] = dim;
    }
  }
  for (auto& m : found) chart.dims.insert(m.begin(), m.end());
  return chart;
}

ExtChart wrong_side_change_of_rings(const FinModule& M, const Window& win) {
  const int p = M.p();
  auto E0 = std::make_shared<ExteriorPair>(M.ring(), 0);
  FinModule M0 = restrict_to(M, E0);
  Window w0 = win;
  const int ds = 2 * p - 1, dw = p - 1;
  w0.s_min += ds;
  w0.s_max += ds;
  w0.w_min += dw;
  w0.w_max += dw;
  ExtChart c = ext_chart(M0, w0, false);
  ExtChart out;
  out.p = p;
  out.window = win;
  out.module = M.tag;
  out.algebra = "E(0) shifted";
  out.field = c.field;
  for (auto& [d, n] : c.dims) out.dims[{d.s - ds, d.f, d.w - dw}] = n;
  return out;
}

}  // namespace motivic
