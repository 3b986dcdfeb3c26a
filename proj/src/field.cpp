#include "motivic/field.hpp"

#include <cstdlib>

namespace motivic {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long prime_power_char(long n) {
  if (n < 2) return 0;
  long c = 0;
  for (long d = 2; d <= n; ++d)
    if (n % d == 0) {
      c = d;
      break;
    }
  while (n % c == 0) n /= c;
  return n == 1 ? c : 0;
}

int nu(long long n, int p) {
  if (n == 0) throw std::invalid_argument("nu(0)");
  n = std::llabs(n);
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int nu_factorial(long k, int p) {
  int v = 0;
  for (long pj = p; pj <= k; pj *= p) v += static_cast<int>(k / pj);
  return v;
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

long long p_part(long long n, int p) { return ipow(p, nu(n, p)); }

FieldSpec FieldSpec::complex(int p) {
  if (!is_prime(p) || p >= 256) throw ConfigError("prime must be a prime < 256");
  FieldSpec f;
  f.kind = FieldKind::Complex;
  f.p = p;
  return f;
}

FieldSpec FieldSpec::real(int p) {
  FieldSpec f = complex(p);
  f.kind = FieldKind::Real;
  return f;
}

FieldSpec FieldSpec::finite(long q, int p) {
  FieldSpec f = complex(p);
  long c = prime_power_char(q);
  if (c == 0) throw ConfigError("q must be a prime power");
  if (c == p) throw ConfigError("char F_q equals p");
  f.kind = FieldKind::Finite;
  f.q = q;
  long r = q % p;
  int i = 1;
  long acc = r;
  while (acc != 1 % p) {
    acc = acc * r % p;
    ++i;
  }
  f.i = i;
  if (p == 2) {
    f.i = 1;
    f.bocksteinTrivial = (q % 4 == 1);
  } else {
    long long m = 1, pp = 1LL * p * p;
    for (int j = 0; j < i; ++j) m = m * (q % pp) % pp;
    f.bocksteinTrivial = (m == 1);
  }
  return f;
}

FieldSpec FieldSpec::parse(const std::string& field, int p) {
  if (field == "C") return complex(p);
  if (field == "R") return real(p);
  if (field.rfind("Fq:", 0) == 0) return finite(std::stol(field.substr(3)), p);
  throw ConfigError("unknown field '" + field + "'");
}

std::string FieldSpec::name() const {
  switch (kind) {
    case FieldKind::Complex: return "C";
    case FieldKind::Real: return "R";
    default: return "Fq:" + std::to_string(q);
  }
}

}  // namespace motivic
