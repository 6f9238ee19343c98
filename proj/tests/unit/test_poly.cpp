#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "strata/invariants.hpp"
#include "strata/optimize.hpp"
#include "strata/polynomial.hpp"

using namespace strata;

namespace {

Polynomial randomPoly(Rng& rng, int nvars, int maxDeg, int terms) {
  Polynomial p(nvars);
  for (int t = 0; t < terms; ++t) {
    Exponents e(nvars, 0);
    int budget = maxDeg;
    for (int i = 0; i < nvars; ++i) {
      e[i] = static_cast<int>(rng.nextU64() % (budget + 1));
      budget -= e[i];
    }
    long num = static_cast<long>(rng.nextU64() % 19) - 9;
    long den = 1 + static_cast<long>(rng.nextU64() % 4);
    p.addTerm(e, QSqrt5(Rational(num, den)));
  }
  return p;
}

std::vector<double> randomPoint(Rng& rng, int n, double lo = -1.0, double hi = 1.0) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = rng.uniform(lo, hi);
  return x;
}

}  // namespace

TEST_CASE("coefficient field arithmetic") {
  QSqrt5 x(Rational(2, 3), Rational(-1, 2));
  QSqrt5 y(Rational(-5, 7), Rational(3, 4));
  // product against the re-expansion (a+bs)(c+ds) = (ac+5bd) + (ad+bc)s
  QSqrt5 prod = x * y;
  CHECK(prod.a == x.a * y.a + 5 * (x.b * y.b));
  CHECK(prod.b == x.a * y.b + x.b * y.a);
  CHECK((x * x.inverse()) == QSqrt5(1));
  CHECK((y / y) == QSqrt5(1));
  // signs: phi - 1.6 < 0 < phi - 1.7 is false; phi ~ 1.618
  QSqrt5 phi = QSqrt5::phi();
  CHECK((phi - QSqrt5(Rational(8, 5))).sign() == 1);    // phi > 1.6
  CHECK((phi - QSqrt5(Rational(17, 10))).sign() == -1); // phi < 1.7
  CHECK(QSqrt5(0).sign() == 0);
  CHECK(std::abs(phi.toDouble() - 1.6180339887) < 1e-9);
}

TEST_CASE("eval examples") {
  Polynomial p = parsePolynomial("x1^2+x2^2", 2);
  double a[2] = {3, 4};
  CHECK(p.eval(a) == doctest::Approx(25.0).epsilon(1e-14));

  Polynomial s6 = powerSum(4, 6);
  double e1[4] = {1, 0, 0, 0};
  CHECK(s6.eval(e1) == doctest::Approx(1.0).epsilon(1e-14));

  // raw pair-sum form at the first unit vector: three nonzero pairs, 2 each
  Polynomial raw = f4SecondInvariantRawSum();
  CHECK(raw.eval(e1) == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("compiled evaluation matches the exact map") {
  Rng rng(7);
  for (int rep = 0; rep < 10; ++rep) {
    Polynomial p = randomPoly(rng, 4, 6, 12);
    CompiledPolynomial c(p);
    for (int t = 0; t < 20; ++t) {
      auto x = randomPoint(rng, 4, -2.0, 2.0);
      CHECK(c.eval(x) == doctest::Approx(p.eval(x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("gradient examples and finite-difference oracle") {
  Polynomial p = parsePolynomial("x1^2+x2^2", 2);
  auto g = p.gradient();
  CHECK(g[0] == parsePolynomial("2*x1", 2));
  CHECK(g[1] == parsePolynomial("2*x2", 2));

  Polynomial s4 = powerSum(5, 4);
  auto gs = s4.gradient();
  std::vector<double> q{1, 1, 1, 1, 0};
  for (int i = 0; i < 5; ++i)
    CHECK(gs[i].eval(q) == doctest::Approx(4.0 * q[i]).epsilon(1e-14));

  // central differences, 100 random points in [-1,1]^5
  Rng rng(11);
  Polynomial f = randomPoly(rng, 5, 5, 15);
  auto gf = f.gradient();
  const double h = 1e-5;
  for (int t = 0; t < 100; ++t) {
    auto x = randomPoint(rng, 5);
    for (int i = 0; i < 5; ++i) {
      auto xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      const double fd = (f.eval(xp) - f.eval(xm)) / (2 * h);
      CHECK(gf[i].eval(x) == doctest::Approx(fd).epsilon(0).scale(1).epsilon(1e-6));
    }
  }
}

TEST_CASE("compose examples") {
  // (x1+x2)^2
  Polynomial F = parsePolynomial("y1^2", 1);
  Polynomial g1 = parsePolynomial("x1+x2", 2);
  CHECK(compose(F, {g1}) == parsePolynomial("x1^2+2*x1*x2+x2^2", 2));

  // identity substitution
  Rng rng(3);
  Polynomial p = randomPoly(rng, 3, 4, 8);
  CHECK(compose(Polynomial::variable(1, 0), {p}) == p);

  // the pair-sum identity: g(s1,s2,s3) with x_i -> x_i^2 equals raw/6
  Polynomial G = parsePolynomial("5*y1*y2-4*y3", 3);
  Polynomial inner = compose(G, {powerSum(4, 1), powerSum(4, 2), powerSum(4, 3)});
  std::vector<Polynomial> squares;
  for (int i = 0; i < 4; ++i) {
    Polynomial xi = Polynomial::variable(4, i);
    squares.push_back(xi * xi);
  }
  Polynomial lhs = compose(inner, squares) * QSqrt5(6);
  CHECK(lhs == f4SecondInvariantRawSum());
}

TEST_CASE("ring laws on random polynomials") {
  Rng rng(5);
  for (int rep = 0; rep < 8; ++rep) {
    Polynomial a = randomPoly(rng, 3, 3, 5);
    Polynomial b = randomPoly(rng, 3, 3, 5);
    Polynomial c = randomPoly(rng, 3, 3, 5);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
  }
}

TEST_CASE("eval is a ring morphism up to float tolerance") {
  Rng rng(9);
  for (int rep = 0; rep < 5; ++rep) {
    Polynomial a = randomPoly(rng, 3, 4, 6);
    Polynomial b = randomPoly(rng, 3, 4, 6);
    Polynomial ab = a * b;
    for (int t = 0; t < 100; ++t) {
      auto x = randomPoint(rng, 3);  // norm <= sqrt(3), coordinates in [-1,1]
      CHECK(std::abs(ab.eval(x) - a.eval(x) * b.eval(x)) < 1e-12 * (1 + std::abs(ab.eval(x))));
    }
  }
}

TEST_CASE("eval of compose equals pointwise composition") {
  Rng rng(13);
  Polynomial F = randomPoly(rng, 2, 3, 5);
  Polynomial g1 = randomPoly(rng, 3, 2, 4);
  Polynomial g2 = randomPoly(rng, 3, 2, 4);
  Polynomial comp = compose(F, {g1, g2});
  for (int t = 0; t < 100; ++t) {
    auto x = randomPoint(rng, 3);
    double y[2] = {g1.eval(x), g2.eval(x)};
    CHECK(comp.eval(x) == doctest::Approx(F.eval(y)).epsilon(1e-10));
  }
}

TEST_CASE("degree cap guards runaway composition") {
  Polynomial x = Polynomial::variable(1, 0);
  Polynomial p = x.pow(33);
  CHECK_THROWS_AS(p * p, Error);
  CHECK_THROWS_AS(parsePolynomial("x1^99", 1), Error);
}

TEST_CASE("arity mismatches are errors") {
  Polynomial p = parsePolynomial("x1+x2", 2);
  std::vector<double> bad{1.0};
  CHECK_THROWS_AS(p.eval(bad), Error);
  CHECK_THROWS_AS(compose(parsePolynomial("y1+y2", 2), {p}), Error);
}

TEST_CASE("parser and canonical printing round trip") {
  Rng rng(17);
  for (int rep = 0; rep < 12; ++rep) {
    Polynomial p = randomPoly(rng, 3, 5, 7);
    CHECK(parsePolynomial(p.str(), 3) == p);
  }
  // sqrt5 literals and rational coefficients
  Polynomial q = parsePolynomial("sqrt5*x1 - 1/2*x2^2 + 3", 2);
  CHECK(q.terms().size() == 3);
  CHECK(parsePolynomial(q.str(), 2) == q);
  // inferred arity
  CHECK(parsePolynomial("y1*y3").nvars() == 3);
  CHECK_THROWS_AS(parsePolynomial("x1 + + x2", 2), Error);
}

TEST_CASE("canonical term order is graded-lex") {
  Polynomial p = parsePolynomial("x2 + x1 + x1^2", 2);
  // descending graded-lex: x1^2 first, then x1, then x2
  CHECK(p.str() == "x1^2 + x1 + x2");
}
