#include "motivic/gamma.hpp"

namespace motivic {

ExteriorPair::ExteriorPair(const CoefficientRing& ring, int n) : ring_(ring), n_(n) {
  if (n < 0 || n > 1) throw ConfigError("only E(0) and E(1) are supported");
  const FieldSpec& f = ring.spec();
  if (f.p == 2 && ring.gen_index("rho") >= 0) {
    rho_relation_ = true;
    twist_gen_ = ring.gen_index("tau");
    twist_by_ = ring.gen_index("rho");
  }
  if (f.p > 2 && ring.gen_index("gamma") >= 0) {
    twist_gen_ = ring.gen_index("zeta");
    twist_by_ = ring.gen_index("gamma");
  }
}

Deg ExteriorPair::tau_degree(int i) const {
  long long pi = ipow(p(), i);
  return {static_cast<int>(2 * pi - 1), static_cast<int>(pi - 1)};
}

Deg ExteriorPair::degree(int K) const {
  Deg d;
  for (int i = 0; i <= n_; ++i)
    if (K >> i & 1) d = d + tau_degree(i);
  return d;
}

std::string ExteriorPair::mask_name(int K, bool dual) const {
  if (K == 0) return "1";
  std::string s;
  for (int i = 0; i <= n_; ++i)
    if (K >> i & 1) s += std::string(s.empty() ? "" : " ") + (dual ? "Q_" : "tau_") + std::to_string(i);
  return s;
}

int ExteriorPair::shuffle_sign(int K, int L) const {
  if (p() == 2) return 1;
  int inv = 0;
  for (int j = 0; j <= n_; ++j)
    if (L >> j & 1) inv += popcount(K >> (j + 1));
  return (inv & 1) ? -1 : 1;
}

void ExteriorPair::mul_gen(int mask, const RingElem& coef, int i, std::vector<Prod>& out) const {
  if (coef.empty()) return;
  if (!(mask >> i & 1)) {
    int sign = (popcount(mask >> (i + 1)) & 1) ? -1 : 1;
    out.push_back({mask | (1 << i), ring_.scale(coef, sign)});
    return;
  }
  if (rho_relation_ && i < n_) {
    RingElem c = ring_.mul(coef, ring_.mono(ring_.gen_mono(twist_by_)));
    mul_gen(mask & ~(1 << i), c, i + 1, out);
  }
}

ExteriorPair::Prod ExteriorPair::product(int K, int L) const {
  std::vector<Prod> cur{{K, ring_.one()}};
  for (int i = 0; i <= n_; ++i) {
    if (!(L >> i & 1)) continue;
    std::vector<Prod> next;
    for (auto& pr : cur) mul_gen(pr.mask, pr.coef, i, next);
    cur.swap(next);
  }
  if (cur.empty() || cur[0].coef.empty()) return {};
  return cur[0];
}

ExteriorPair::Elem ExteriorPair::mul(const Elem& a, const Elem& b) const {
  Elem r = zero();
  for (int J = 0; J < size(); ++J) {
    if (a[J].empty()) continue;
    for (int K = 0; K < size(); ++K) {
      if (b[K].empty()) continue;
      Prod pr = product(J, K);
      if (pr.coef.empty()) continue;
      // (e_J c)(e_K c') = (-1)^{|c||e_K|} e_J e_K (c c')
      RingElem c = ring_.mul(pr.coef, ring_.mul(a[J], b[K]));
      if (p() > 2 && (popcount(K) & 1)) {
        RingElem signed_c;
        for (const auto& t : a[J]) {
          RingElem one_term{t};
          RingElem prod = ring_.mul(pr.coef, ring_.mul(one_term, b[K]));
          signed_c = ring_.add(signed_c, ring_.scale(prod, ring_.odd(t.m) ? -1 : 1));
        }
        c = signed_c;
      }
      r[pr.mask] = ring_.add(r[pr.mask], c);
    }
  }
  return r;
}

ExteriorPair::Elem ExteriorPair::eta_left(const Mono& a) const {
  Elem r = zero();
  r[0] = ring_.one();
  for (int g = 0; g < ring_.ngens(); ++g) {
    Elem eg = zero();
    eg[0] = ring_.mono(ring_.gen_mono(g));
    if (g == twist_gen_) eg[1] = ring_.mono(ring_.gen_mono(twist_by_));
    for (int k = 0; k < a.e[g]; ++k) r = mul(r, eg);
  }
  return r;
}

bool ExteriorPair::primitive(const Mono& a) const {
  Elem e = eta_left(a);
  for (int K = 1; K < size(); ++K)
    if (!e[K].empty()) return false;
  return true;
}

const std::vector<ExteriorPair::TwistTerm>& ExteriorPair::twist(const Mono& a) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = twist_cache_.find(a);
  if (it != twist_cache_.end()) return *it->second;
  auto terms = std::make_unique<std::vector<TwistTerm>>();
  Elem e = eta_left(a);
  // alpha(a y) = (sum_J e_J c_J)(sum_K e_K (x) y_K) = sum (-1)^{|c_J||e_K|} e_J e_K (x) c_J y_K
  for (int J = 0; J < size(); ++J)
    for (const auto& t : e[J])
      for (int K = 0; K < size(); ++K) {
        Prod pr = product(J, K);
        if (pr.coef.empty()) continue;
        int sign = (p() > 2 && ring_.odd(t.m) && (popcount(K) & 1)) ? -1 : 1;
        RingElem c = ring_.mul(pr.coef, ring_.mono(t.m, t.c * sign));
        if (!c.empty()) terms->push_back({pr.mask, K, c});
      }
  auto& ref = *terms;
  twist_cache_.emplace(a, std::move(terms));
  return ref;
}

std::vector<ExteriorPair::CoTerm> ExteriorPair::coproduct(int J) const {
  // elements of E^v (x) E^v as a map (K, L) -> coefficient; coefficients from J are
  // powers of the primitive twist class and move freely across the tensor sign
  std::map<std::pair<int, int>, RingElem> cur{{{0, 0}, ring_.one()}};
  for (int i = 0; i <= n_; ++i) {
    if (!(J >> i & 1)) continue;
    std::map<std::pair<int, int>, RingElem> next;
    const int bit = 1 << i;
    for (auto& [kl, c] : cur) {
      auto [K, L] = kl;
      // (e_K (x) e_L)(e_i (x) 1) = (-1)^{|e_L|} e_K e_i (x) e_L
      Prod a = product(K, bit);
      if (!a.coef.empty()) {
        int sign = (p() > 2 && (popcount(L) & 1)) ? -1 : 1;
        auto& slot = next[{a.mask, L}];
        slot = ring_.add(slot, ring_.scale(ring_.mul(c, a.coef), sign));
      }
      // (e_K (x) e_L)(1 (x) e_i) = e_K (x) e_L e_i
      Prod b = product(L, bit);
      if (!b.coef.empty()) {
        auto& slot = next[{K, b.mask}];
        slot = ring_.add(slot, ring_.mul(c, b.coef));
      }
    }
    cur.clear();
    for (auto& [kl, c] : next)
      if (!c.empty()) cur[kl] = c;
  }
  std::vector<CoTerm> out;
  for (auto& [kl, c] : cur) out.push_back({kl.first, kl.second, c});
  return out;
}

std::string ExteriorPair::relations() const {
  std::string s;
  for (int i = 0; i <= n_; ++i) {
    if (!s.empty()) s += ", ";
    s += "tau_" + std::to_string(i) + "^2 = ";
    if (rho_relation_ && i < n_)
      s += ring_.gen(twist_by_).name + " tau_" + std::to_string(i + 1);
    else
      s += "0";
  }
  return s;
}

std::string ExteriorPair::dual_relations() const {
  // (x Q_K) Q_L is the e_K (x) e_L component of (Delta (x) 1) alpha(x)
  std::string s;
  for (int K = 1; K < size(); ++K)
    for (int L = 1; L < size(); ++L) {
      std::string rhs;
      for (int J = 1; J < size(); ++J)
        for (const auto& t : coproduct(J))
          if (t.K == K && t.L == L) {
            if (!rhs.empty()) rhs += " + ";
            for (const auto& term : t.coef) {
              if (term.c != 1) rhs += term.c == p() - 1 ? "-" : std::to_string(term.c) + " ";
              if (!term.m.is_one()) rhs += ring_.name(term.m) + " ";
            }
            rhs += mask_name(J, true);
          }
      if (!s.empty()) s += ", ";
      s += "(" + mask_name(K, true) + ")(" + mask_name(L, true) + ") = " + (rhs.empty() ? "0" : rhs);
    }
  return s;
}

}  // namespace motivic
