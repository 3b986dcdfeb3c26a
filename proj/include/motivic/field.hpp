#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>

namespace motivic {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class FieldKind { Complex, Real, Finite };

struct FieldSpec {
  FieldKind kind = FieldKind::Complex;
  int p = 2;
  long q = 0;                    // only for Finite
  int i = 1;                     // smallest i with p | q^i - 1
  bool bocksteinTrivial = true;  // untwisted finite-field case

  static FieldSpec complex(int p);
  static FieldSpec real(int p);
  static FieldSpec finite(long q, int p);
  // "C", "R", "Fq:5"
  static FieldSpec parse(const std::string& field, int p);

  std::string name() const;
  bool operator==(const FieldSpec&) const = default;
};

bool is_prime(long n);
// returns the characteristic if n is a prime power, else 0
long prime_power_char(long n);
// p-adic valuation of n (n != 0)
int nu(long long n, int p);
// Legendre: nu_p(k!)
int nu_factorial(long k, int p);
// (n)_p, the p-part of n
long long p_part(long long n, int p);
long long ipow(long long b, int e);

}  // namespace motivic
