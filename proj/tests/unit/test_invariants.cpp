#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>

#include "strata/arrangement.hpp"
#include "strata/invariants.hpp"
#include "strata/optimize.hpp"

using namespace strata;

namespace {

Rational smallRational(Rng& rng) {
  return Rational(1 + static_cast<long>(rng.nextU64() % 23),
                  1 + static_cast<long>(rng.nextU64() % 5));
}

// exact rank of the coefficient matrix of a list of polynomials
int polySpanRank(const std::vector<Polynomial>& ps) {
  std::map<Exponents, int> cols;
  for (const auto& p : ps)
    for (const auto& [e, c] : p.terms())
      cols.emplace(e, static_cast<int>(cols.size()));
  std::vector<QVector> rows;
  for (const auto& p : ps) {
    QVector row(cols.size(), QSqrt5(0));
    for (const auto& [e, c] : p.terms()) row[cols[e]] = c;
    rows.push_back(std::move(row));
  }
  return rankOf(rows);
}

}  // namespace

TEST_CASE("power sums and elementary symmetric polynomials") {
  CHECK(powerSum(3, 2) == parsePolynomial("x1^2+x2^2+x3^2", 3));
  CHECK(elementarySymmetric(3, 2) == parsePolynomial("x1*x2+x1*x3+x2*x3", 3));
  CHECK(elementarySymmetric(4, 4) == parsePolynomial("x1*x2*x3*x4", 4));
  CHECK(elementarySymmetric(3, 0) == Polynomial::constant(3, QSqrt5(1)));
}

TEST_CASE("basic invariants per family") {
  auto b3 = basicInvariants(parseGroup("B3"));
  REQUIRE(b3.count() == 3);
  CHECK(b3.polys[0] == powerSum(3, 2));
  CHECK(b3.polys[1] == powerSum(3, 4));
  CHECK(b3.polys[2] == powerSum(3, 6));
  CHECK(b3.degreeTies.empty());

  auto d4 = basicInvariants(parseGroup("D4"));
  REQUIRE(d4.count() == 4);
  CHECK(d4.polys[0] == powerSum(4, 2));
  CHECK(d4.polys[1] == powerSum(4, 4));
  CHECK(d4.polys[2] == elementarySymmetric(4, 4));
  CHECK(d4.polys[3] == powerSum(4, 6));
  CHECK(d4.degreeTies == std::vector<int>{2});

  auto d5 = basicInvariants(parseGroup("D5"));
  CHECK(d5.degrees() == std::vector<int>{2, 4, 5, 6, 8});
  CHECK(d5.polys[2] == elementarySymmetric(5, 5));
  CHECK(d5.degreeTies.empty());

  auto a3 = basicInvariants(parseGroup("A3"));
  CHECK(a3.degrees() == std::vector<int>{1, 2, 3, 4});
  auto a3e = basicInvariants(parseGroup("A3"), BasisVariant::Elementary);
  CHECK(a3e.polys[2] == elementarySymmetric(4, 3));

  CHECK_THROWS_AS(basicInvariants(parseGroup("B3"), BasisVariant::PaperD), Error);
  CHECK_THROWS_AS(basicInvariants(parseGroup("E6")), Error);
}

TEST_CASE("each constructed invariant is fixed by every simple reflection") {
  for (auto name : {"A3", "B3", "D4", "D5", "F4", "H3", "I2(4)", "I2(5)", "I2(6)"}) {
    GroupDescriptor g = parseGroup(name);
    auto basis = basicInvariants(g);
    auto gens = simpleReflections(g);
    for (const auto& pi : basis.polys)
      for (const auto& s : gens) CHECK_MESSAGE(applyMatrix(pi, s) == pi, name);
  }
  // H4: the degree-12 surrogate exactly; the heavier ones numerically below
  GroupDescriptor h4 = parseGroup("H4");
  auto basis = basicInvariants(h4);
  for (const auto& s : simpleReflections(h4)) {
    CHECK(applyMatrix(basis.polys[0], s) == basis.polys[0]);
    CHECK(applyMatrix(basis.polys[1], s) == basis.polys[1]);
  }
  Rng rng(51);
  std::vector<QMatrix> gens = simpleReflections(h4);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> x(4);
    for (auto& v : x) v = rng.uniform(-1, 1);
    for (const auto& s : gens) {
      std::vector<double> sx(4, 0.0);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) sx[i] += s.at(i, j).toDouble() * x[j];
      for (int i = 2; i < 4; ++i)
        CHECK(basis.polys[i].eval(sx) ==
              doctest::Approx(basis.polys[i].eval(x)).epsilon(1e-10));
    }
  }
}

TEST_CASE("algebraic independence at a generic point") {
  Rng rng(57);
  for (auto name : {"A3", "B3", "B4", "D4", "D5", "F4", "H3", "H4", "I2(5)", "I2(6)"}) {
    GroupDescriptor g = parseGroup(name);
    auto basis = basicInvariants(g);
    // distinct nonzero coordinates keep the point off every mirror
    std::vector<Rational> p(g.ambientDim);
    for (int i = 0; i < g.ambientDim; ++i)
      p[i] = Rational(2 * i + 3, 2) + Rational(1, 7 + static_cast<long>(rng.nextU64() % 5) + i);
    CHECK_MESSAGE(jacobianRankExact(basis.polys, p, basis.count() - 1) == basis.count(),
                  std::string(name));
  }
}

TEST_CASE("the F4 degree-6 invariant") {
  Polynomial pi2 = f4SecondInvariant();
  // normalized so the value at the first unit vector is 1
  std::vector<QSqrt5> e1{QSqrt5(1), QSqrt5(0), QSqrt5(0), QSqrt5(0)};
  CHECK(pi2.evalExact(e1) == QSqrt5(1));
  // value 3/2 at (1,1,0,0)/sqrt(2), via homogeneity: pi2(1,1,0,0) = 12 = 3/2 * 2^3
  std::vector<QSqrt5> d{QSqrt5(1), QSqrt5(1), QSqrt5(0), QSqrt5(0)};
  CHECK(pi2.evalExact(d) == QSqrt5(12));

  CHECK(pi2 * QSqrt5(6) == f4SecondInvariantRawSum());
  Polynomial gPoly = powerSum(4, 1) * powerSum(4, 2) * QSqrt5(5) -
                     powerSum(4, 3) * QSqrt5(4);
  std::vector<Polynomial> squares;
  for (int i = 0; i < 4; ++i) {
    Polynomial xi = Polynomial::variable(4, i);
    squares.push_back(xi * xi);
  }
  CHECK(compose(gPoly, squares) == pi2);
  CHECK(basicInvariants(parseGroup("F4")).polys[1] == pi2);
}

TEST_CASE("newton rewriting into power-sum coordinates") {
  // e2 in three variables
  Polynomial F = newtonRewrite(elementarySymmetric(3, 2), 3);
  CHECK(F == parsePolynomial("1/2*y1^2 - 1/2*y2", 3));

  // s1 * s2
  Polynomial F2 = newtonRewrite(powerSum(3, 1) * powerSum(3, 2), 3);
  CHECK(F2 == parsePolynomial("y1*y2", 3));

  CHECK_THROWS_AS(newtonRewrite(Polynomial::variable(3, 0), 3), Error);
}

TEST_CASE("newton rewriting round trip on random symmetric inputs") {
  Rng rng(61);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + static_cast<int>(rng.nextU64() % 4);  // up to 5 variables
    Polynomial sym = Polynomial::constant(n, QSqrt5(Rational(1, 3)));
    for (int f = 0; f < 3; ++f) {
      const int k = 1 + static_cast<int>(rng.nextU64() % n);
      sym = sym * (elementarySymmetric(n, k) +
                   Polynomial::constant(n, QSqrt5(smallRational(rng))));
    }
    Polynomial F = newtonRewrite(sym, n);
    std::vector<Polynomial> powers;
    for (int k = 1; k <= n; ++k) powers.push_back(powerSum(n, k));
    CHECK(compose(F, powers) == sym);
  }
}

TEST_CASE("sparsity certificates") {
  CHECK(sparsityCertificate(basicInvariants(parseGroup("B5")), 2).basisIndependent);
  auto d6 = sparsityCertificate(basicInvariants(parseGroup("D6")), 3);
  CHECK(d6.tieAmbiguous);
  CHECK(d6.note.find("s_n and e_n") != std::string::npos);
  CHECK(sparsityCertificate(basicInvariants(parseGroup("D5")), 2).basisIndependent);
}

TEST_CASE("H4 surrogate spans a two-dimensional degree-12 slot") {
  GroupDescriptor h4 = parseGroup("H4");
  QVector e1(4, QSqrt5(0)), e2(4, QSqrt5(0));
  e1[0] = QSqrt5(1);
  e2[1] = QSqrt5(1);
  Polynomial r1 = reynoldsLinearPower(h4, e1, 12);
  Polynomial r2 = reynoldsLinearPower(h4, e2, 12);
  CHECK(r1 == r2);  // both coordinates lie on the same root orbit
  CHECK(r1 == h4SurrogateInvariant());
  Polynomial s2p6 = powerSum(4, 2).pow(6);
  CHECK(polySpanRank({r1, r2, s2p6}) == 2);
  // hence the surrogate is nonconstant on the unit sphere
}
