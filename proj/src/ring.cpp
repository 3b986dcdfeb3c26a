#include "motivic/ring.hpp"

#include <algorithm>
#include <map>

namespace motivic {

int inv_mod(int a, int p) {
  a = modp(a, p);
  for (int x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  throw std::domain_error("no inverse");
}

CoefficientRing::CoefficientRing(const FieldSpec& spec) : spec_(spec) {
  const int p = spec.p;
  switch (spec.kind) {
    case FieldKind::Complex:
      gens_ = {{"tau", {0, -1}, false}};
      break;
    case FieldKind::Real:
      if (p == 2)
        gens_ = {{"rho", {-1, -1}, false}, {"tau", {0, -1}, false}};
      else
        gens_ = {{"theta", {0, -2}, false}};
      break;
    case FieldKind::Finite:
      if (p == 2) {
        if (spec.bocksteinTrivial)
          gens_ = {{"u", {-1, -1}, true}, {"tau", {0, -1}, false}};
        else
          gens_ = {{"rho", {-1, -1}, true}, {"tau", {0, -1}, false}};
      } else {
        const int i = spec.i;
        if (spec.bocksteinTrivial)
          gens_ = {{"u", {-1, -i}, true}, {"zeta", {0, -i}, false}};
        else
          gens_ = {{"gamma", {-1, -i}, true}, {"zeta", {0, -i}, false}};
      }
      break;
  }
}

int CoefficientRing::gen_index(const std::string& name) const {
  for (int i = 0; i < ngens(); ++i)
    if (gens_[i].name == name) return i;
  return -1;
}

Mono CoefficientRing::gen_mono(int i) const {
  Mono m;
  m.e[i] = 1;
  return m;
}

std::string CoefficientRing::presentation() const {
  std::string s = "F_" + std::to_string(p()) + "[";
  for (int i = 0; i < ngens(); ++i) s += (i ? "," : "") + gens_[i].name;
  s += "]";
  for (const auto& g : gens_)
    if (g.square_zero) s += "/(" + g.name + "^2)";
  return s;
}

Deg CoefficientRing::degree(const Mono& m) const {
  Deg d;
  for (int i = 0; i < ngens(); ++i) d = d + gens_[i].deg * m.e[i];
  return d;
}

int CoefficientRing::mul(const Mono& a, const Mono& b, Mono& out) const {
  for (int i = 0; i < ngens(); ++i) {
    out.e[i] = static_cast<int16_t>(a.e[i] + b.e[i]);
    if (gens_[i].square_zero && out.e[i] > 1) return 0;
  }
  // only the square-zero generator can be odd; a nonzero product has at most one copy
  return 1;
}

std::vector<Mono> CoefficientRing::basis(Deg d) const {
  std::vector<Mono> out;
  if (ngens() == 1) {
    const Deg g = gens_[0].deg;
    if (g.w == 0) return out;
    if (d.w % g.w) return out;
    int k = d.w / g.w;
    if (k < 0 || g * k != d) return out;
    Mono m;
    m.e[0] = static_cast<int16_t>(k);
    out.push_back(m);
    return out;
  }
  const Deg g0 = gens_[0].deg, g1 = gens_[1].deg;
  int max0 = gens_[0].square_zero ? 1 : (g0.w ? -d.w / -g0.w : 0);
  if (d.w > 0) return out;
  for (int a = 0; a <= max0; ++a) {
    Deg r = d - g0 * a;
    if (r.w > 0) break;
    if (g1.w == 0 || r.w % g1.w) continue;
    int b = r.w / g1.w;
    if (b < 0 || g1 * b != r) continue;
    Mono m;
    m.e[0] = static_cast<int16_t>(a);
    m.e[1] = static_cast<int16_t>(b);
    out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string CoefficientRing::name(const Mono& m) const {
  std::string s;
  for (int i = 0; i < ngens(); ++i) {
    if (m.e[i] == 0) continue;
    if (!s.empty()) s += " ";
    s += gens_[i].name;
    if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
  }
  return s.empty() ? "1" : s;
}

static RingElem normalize(std::map<Mono, int>& acc, int p) {
  RingElem r;
  for (auto& [m, c] : acc) {
    int v = modp(c, p);
    if (v) r.push_back({m, v});
  }
  return r;
}

RingElem CoefficientRing::mul(const RingElem& a, const RingElem& b) const {
  std::map<Mono, int> acc;
  for (const auto& x : a)
    for (const auto& y : b) {
      Mono m;
      int c = mul(x.m, y.m, m);
      if (c) acc[m] += c * x.c * y.c;
    }
  return normalize(acc, p());
}

RingElem CoefficientRing::add(const RingElem& a, const RingElem& b) const {
  std::map<Mono, int> acc;
  for (const auto& x : a) acc[x.m] += x.c;
  for (const auto& y : b) acc[y.m] += y.c;
  return normalize(acc, p());
}

RingElem CoefficientRing::scale(const RingElem& a, int c) const {
  RingElem r;
  c = modp(c, p());
  if (!c) return r;
  for (const auto& x : a) r.push_back({x.m, x.c * c % p()});
  return r;
}

RingElem CoefficientRing::mono(const Mono& m, int c) const {
  c = modp(c, p());
  if (!c) return {};
  return {{m, c}};
}

}  // namespace motivic
