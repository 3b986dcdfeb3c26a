#pragma once
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "motivic/degree.hpp"
#include "motivic/field.hpp"

namespace motivic {

// monomial in at most two coefficient generators
struct Mono {
  std::array<int16_t, 2> e{0, 0};
  auto operator<=>(const Mono&) const = default;
  bool is_one() const { return e[0] == 0 && e[1] == 0; }
};

struct RingGen {
  std::string name;
  Deg deg;
  bool square_zero = false;
};

struct Term {
  Mono m;
  int c;  // in [1, p)
  bool operator==(const Term&) const = default;
};
// homogeneous or not; sorted by monomial, no zero coefficients
using RingElem = std::vector<Term>;

class CoefficientRing {
 public:
  explicit CoefficientRing(const FieldSpec& spec);

  const FieldSpec& spec() const { return spec_; }
  int p() const { return spec_.p; }
  int ngens() const { return static_cast<int>(gens_.size()); }
  const RingGen& gen(int i) const { return gens_[i]; }
  // index of a generator by name, -1 if absent
  int gen_index(const std::string& name) const;
  Mono gen_mono(int i) const;
  std::string presentation() const;

  Deg degree(const Mono& m) const;
  bool odd(const Mono& m) const { return (degree(m).s & 1) != 0; }
  // product of monomials; coefficient 0 means the product vanishes
  int mul(const Mono& a, const Mono& b, Mono& out) const;
  std::vector<Mono> basis(Deg d) const;
  std::string name(const Mono& m) const;

  RingElem one() const { return {{Mono{}, 1}}; }
  RingElem mul(const RingElem& a, const RingElem& b) const;
  RingElem add(const RingElem& a, const RingElem& b) const;
  RingElem scale(const RingElem& a, int c) const;
  RingElem mono(const Mono& m, int c = 1) const;

 private:
  FieldSpec spec_;
  std::vector<RingGen> gens_;
};

// mod-p arithmetic helpers
inline int modp(long v, int p) {
  long r = v % p;
  return static_cast<int>(r < 0 ? r + p : r);
}
int inv_mod(int a, int p);

}  // namespace motivic
