#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "motivic/linalg.hpp"
#include "motivic/ring.hpp"

using namespace motivic;

TEST_CASE("field specs") {
  auto f = FieldSpec::finite(3, 2);
  CHECK(f.i == 1);
  CHECK_FALSE(f.bocksteinTrivial);
  CHECK(FieldSpec::finite(5, 2).bocksteinTrivial);
  // 2 has order 2 mod 3; 2^2 = 4 is not 1 mod 9
  auto g = FieldSpec::finite(2, 3);
  CHECK(g.i == 2);
  CHECK_FALSE(g.bocksteinTrivial);
  // 8 = 2 mod 3, 8^2 = 64 = 1 mod 9
  CHECK(FieldSpec::finite(8, 3).bocksteinTrivial);
  CHECK(FieldSpec::finite(19, 3).bocksteinTrivial);
  CHECK_FALSE(FieldSpec::finite(7, 3).bocksteinTrivial);
  CHECK_THROWS_AS(FieldSpec::finite(9, 3), ConfigError);
  CHECK_THROWS_AS(FieldSpec::finite(6, 3), ConfigError);
  CHECK(nu_factorial(4, 2) == 3);
  CHECK(nu_factorial(8, 3) == 2);
  CHECK(p_part(80, 2) == 16);
}

TEST_CASE("coefficient ring presentations") {
  CHECK(CoefficientRing(FieldSpec::complex(3)).presentation() == "F_3[tau]");
  CHECK(CoefficientRing(FieldSpec::real(5)).presentation() == "F_5[theta]");
  CHECK(CoefficientRing(FieldSpec::real(5)).gen(0).deg == Deg{0, -2});
  CHECK(CoefficientRing(FieldSpec::finite(3, 2)).presentation() == "F_2[rho,tau]/(rho^2)");
  CHECK(CoefficientRing(FieldSpec::finite(5, 2)).presentation() == "F_2[u,tau]/(u^2)");
  CoefficientRing tw(FieldSpec::finite(2, 3));
  CHECK(tw.presentation() == "F_3[gamma,zeta]/(gamma^2)");
  CHECK(tw.gen(1).deg == Deg{0, -2});
  CHECK(tw.gen(0).deg == Deg{-1, -2});
}

TEST_CASE("ring basis per degree") {
  CoefficientRing rq(FieldSpec::finite(3, 2));
  auto b = rq.basis({-1, -2});
  REQUIRE(b.size() == 1);
  CHECK(rq.name(b[0]) == "rho tau");
  CHECK(rq.basis({-2, -2}).empty());
  CoefficientRing c(FieldSpec::complex(3));
  REQUIRE(c.basis({0, -2}).size() == 1);
  CHECK(c.name(c.basis({0, -2})[0]) == "tau^2");
  for (auto spec : {FieldSpec::complex(2), FieldSpec::real(2), FieldSpec::finite(7, 3)}) {
    CoefficientRing r(spec);
    CHECK(r.basis({0, 0}).size() == 1);
  }
  // closure: products of basis monomials land in the basis of the sum degree or vanish
  CoefficientRing rr(FieldSpec::real(2));
  for (int s1 = -3; s1 <= 0; ++s1)
    for (int w1 = -4; w1 <= 0; ++w1)
      for (const Mono& a : rr.basis({s1, w1}))
        for (const Mono& b2 : rr.basis({-1, -3})) {
          Mono m;
          if (!rr.mul(a, b2, m)) continue;
          auto bb = rr.basis(Deg{s1, w1} + Deg{-1, -3});
          CHECK(std::find(bb.begin(), bb.end(), m) != bb.end());
        }
}

TEST_CASE("linear algebra examples") {
  Matrix id = Matrix::identity(3, 3);
  CHECK(rank(id) == 3);
  CHECK(kernel(id).nrows() == 0);
  Matrix z(5, 3, 4);
  CHECK(rank(z) == 0);
  CHECK(kernel(z).nrows() == 3);
  Matrix m(2, 2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m.rows[i].set(j, 1);
  CHECK(rank(m) == 1);
  Matrix k = kernel(m);
  REQUIRE(k.nrows() == 1);
  CHECK(k.rows[0].to_ints() == std::vector<int>{1, 1});
}

TEST_CASE("rank-nullity and determinism, parallel vs serial") {
  std::mt19937 rng(7);
  for (int p : {2, 3, 5, 251}) {
    for (int trial = 0; trial < 20; ++trial) {
      int r = 1 + rng() % 150, c = 1 + rng() % 150;
      Matrix m(p, r, c);
      for (auto& row : m.rows)
        for (int j = 0; j < c; ++j)
          if (rng() % 3 == 0) row.set(j, static_cast<int>(rng() % p));
      Matrix a = m, b = m;
      Echelon ea = row_reduce(a), eb = row_reduce_serial(b);
      CHECK(ea.rank == eb.rank);
      CHECK(ea.pivots == eb.pivots);
      bool same = true;
      for (int i = 0; i < r; ++i) same = same && a.rows[i] == b.rows[i];
      CHECK(same);
      CHECK(kernel(m).nrows() + ea.rank == r);
      // solve returns a valid combination for a vector in the span
      Vec target(p, c);
      for (int i = 0; i < r; ++i) target.axpy(static_cast<int>(rng() % p), m.rows[i]);
      auto x = solve(m, target);
      REQUIRE(x.has_value());
      Vec back(p, c);
      for (int i = 0; i < r; ++i) back.axpy(x->get(i), m.rows[i]);
      CHECK(back == target);
    }
  }
}
