#include "strata/invariants.hpp"

#include <algorithm>

namespace strata {

Polynomial powerSum(int nvars, int k) {
  Polynomial p(nvars);
  Exponents e(nvars, 0);
  for (int i = 0; i < nvars; ++i) {
    e[i] = k;
    p.addTerm(e, QSqrt5(1));
    e[i] = 0;
  }
  return p;
}

Polynomial elementarySymmetric(int nvars, int k) {
  if (k == 0) return Polynomial::constant(nvars, QSqrt5(1));
  Polynomial p(nvars);
  std::vector<int> idx(k);
  std::function<void(int, int)> rec = [&](int pos, int from) {
    if (pos == k) {
      Exponents e(nvars, 0);
      for (int i : idx) e[i] = 1;
      p.addTerm(e, QSqrt5(1));
      return;
    }
    for (int i = from; i <= nvars - (k - pos); ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return p;
}

std::vector<int> BasicInvariantSet::degrees() const {
  std::vector<int> d;
  d.reserve(polys.size());
  for (const auto& p : polys) d.push_back(p.totalDegree());
  return d;
}

namespace {

std::vector<int> tiesOf(const std::vector<Polynomial>& polys) {
  std::vector<int> ties;
  for (std::size_t i = 0; i + 1 < polys.size(); ++i)
    if (polys[i].totalDegree() == polys[i + 1].totalDegree())
      ties.push_back(static_cast<int>(i) + 1);  // 1-based index of the first of the pair
  return ties;
}

/// ||x||^2 minus the contribution of the fixed directions: the quadratic
/// basic invariant of a non-essentially realized group.
Polynomial essentialNormSquared(const GroupDescriptor& g) {
  const RootSystem& rs = rootSystem(g);
  Polynomial p = powerSum(rs.dim, 2);
  std::vector<QVector> rows;
  for (int i : rs.positiveIdx) rows.push_back(rs.roots[i]);
  for (const auto& f : nullSpace(rows, rs.dim)) {
    Polynomial lf = Polynomial::linearForm(f);
    p -= lf * lf * QSqrt5(dot(f, f).inverse());
  }
  return p;
}

BasicInvariantSet makeSet(const GroupDescriptor& g, std::vector<Polynomial> polys,
                          std::string variantName) {
  BasicInvariantSet s;
  s.group = g;
  std::stable_sort(polys.begin(), polys.end(), [](const Polynomial& a, const Polynomial& b) {
    return a.totalDegree() < b.totalDegree();
  });
  s.polys = std::move(polys);
  s.degreeTies = tiesOf(s.polys);
  s.variantName = std::move(variantName);
  return s;
}

Polynomial i2SecondInvariant(const GroupDescriptor& g) {
  const RootSystem& rs = rootSystem(g);
  // A generic in-plane direction; roots themselves have +- symmetric orbits,
  // which kills odd powers, so take a non-root combination.
  QVector a = rs.roots[rs.simpleIdx[0]];
  QVector b = rs.roots[rs.simpleIdx[1]];
  QVector v = (QSqrt5(2) * a) + b;
  Polynomial p = reynoldsLinearPower(g, v, g.param);
  if (p.isZero()) p = reynoldsLinearPower(g, a + (QSqrt5(2) * b), g.param);
  if (p.isZero()) throw Error("I2 second invariant construction degenerated");
  return p;
}

}  // namespace

Polynomial f4SecondInvariantRawSum() {
  Polynomial p(4);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      Polynomial xi = Polynomial::variable(4, i);
      Polynomial xj = Polynomial::variable(4, j);
      p += (xi + xj).pow(6) + (xi - xj).pow(6);
    }
  return p;
}

Polynomial f4SecondInvariant() {
  return f4SecondInvariantRawSum() * QSqrt5(Rational(1, 6));
}

Polynomial h4SurrogateInvariant() {
  GroupDescriptor h4 = catalog(Family::H4);
  QVector e1(4, QSqrt5(0));
  e1[0] = QSqrt5(1);
  return reynoldsLinearPower(h4, e1, 12);
}

BasicInvariantSet basicInvariants(const GroupDescriptor& g, BasisVariant variant) {
  auto incompatible = [&]() -> BasicInvariantSet {
    throw Error("variant incompatible with " + g.name());
  };
  switch (g.family) {
    case Family::A: {
      const int n = g.param + 1;
      if (variant == BasisVariant::Elementary) {
        std::vector<Polynomial> polys;
        for (int k = 1; k <= n; ++k) polys.push_back(elementarySymmetric(n, k));
        return makeSet(g, std::move(polys), "elementary");
      }
      if (variant != BasisVariant::Auto && variant != BasisVariant::PowerSum)
        return incompatible();
      std::vector<Polynomial> polys;
      for (int k = 1; k <= n; ++k) polys.push_back(powerSum(n, k));
      return makeSet(g, std::move(polys), "powersum");
    }
    case Family::B: {
      if (variant != BasisVariant::Auto && variant != BasisVariant::PowerSum)
        return incompatible();
      std::vector<Polynomial> polys;
      for (int k = 1; k <= g.param; ++k) polys.push_back(powerSum(g.param, 2 * k));
      return makeSet(g, std::move(polys), "powersum");
    }
    case Family::D: {
      if (variant != BasisVariant::Auto && variant != BasisVariant::PaperD)
        return incompatible();
      const int n = g.param;
      std::vector<Polynomial> polys;
      for (int k = 1; k <= n / 2; ++k) polys.push_back(powerSum(n, 2 * k));
      polys.push_back(elementarySymmetric(n, n));
      for (int k = n / 2 + 2; k <= n; ++k) polys.push_back(powerSum(n, 2 * k - 2));
      return makeSet(g, std::move(polys), "paper-D");
    }
    case Family::F4: {
      if (variant != BasisVariant::Auto && variant != BasisVariant::F4)
        return incompatible();
      QVector e1(4, QSqrt5(0));
      e1[0] = QSqrt5(1);
      std::vector<Polynomial> polys;
      polys.push_back(powerSum(4, 2));
      polys.push_back(f4SecondInvariant());
      polys.push_back(reynoldsLinearPower(g, e1, 8));
      polys.push_back(reynoldsLinearPower(g, e1, 12));
      return makeSet(g, std::move(polys), "F4");
    }
    case Family::H3: {
      if (variant != BasisVariant::Auto) return incompatible();
      QVector e1(3, QSqrt5(0));
      e1[0] = QSqrt5(1);
      std::vector<Polynomial> polys;
      polys.push_back(powerSum(3, 2));
      polys.push_back(reynoldsLinearPower(g, e1, 6));
      polys.push_back(reynoldsLinearPower(g, e1, 10));
      return makeSet(g, std::move(polys), "reynolds");
    }
    case Family::H4: {
      if (variant != BasisVariant::Auto && variant != BasisVariant::H4Surrogate)
        return incompatible();
      QVector e1(4, QSqrt5(0));
      e1[0] = QSqrt5(1);
      std::vector<Polynomial> polys;
      polys.push_back(powerSum(4, 2));
      polys.push_back(reynoldsLinearPower(g, e1, 12));
      polys.push_back(reynoldsLinearPower(g, e1, 20));
      polys.push_back(reynoldsLinearPower(g, e1, 30));
      return makeSet(g, std::move(polys), "H4-surrogate");
    }
    case Family::I2: {
      if (variant != BasisVariant::Auto) return incompatible();
      std::vector<Polynomial> polys;
      polys.push_back(essentialNormSquared(g));
      polys.push_back(i2SecondInvariant(g));
      return makeSet(g, std::move(polys), "reynolds");
    }
    default:
      throw Error("no invariant constructors for " + g.name());
  }
}

Polynomial newtonRewrite(const Polynomial& sym, int n) {
  if (sym.nvars() != n) throw Error("newtonRewrite: arity mismatch");
  // Symmetry check on adjacent transpositions.
  for (int i = 0; i + 1 < n; ++i) {
    std::vector<std::vector<QSqrt5>> rows(n, std::vector<QSqrt5>(n, QSqrt5(0)));
    for (int j = 0; j < n; ++j) rows[j][j] = QSqrt5(1);
    rows[i][i] = rows[i + 1][i + 1] = QSqrt5(0);
    rows[i][i + 1] = rows[i + 1][i] = QSqrt5(1);
    if (substituteLinear(sym, rows) != sym)
      throw Error("newtonRewrite: input is not symmetric");
  }

  // Gauss elimination against the elementary triangular family, then a
  // Newton-identity conversion into power-sum coordinates.
  std::vector<Polynomial> elem;
  for (int k = 1; k <= n; ++k) elem.push_back(elementarySymmetric(n, k));

  Polynomial residual = sym;
  Polynomial inElem(n);  // coordinates y_i = e_i
  while (!residual.isZero()) {
    // Lexicographically largest term.
    auto lead = residual.terms().begin();
    for (auto it = residual.terms().begin(); it != residual.terms().end(); ++it)
      if (it->first > lead->first) lead = it;
    const Exponents& a = lead->first;
    for (int i = 0; i + 1 < n; ++i)
      if (a[i] < a[i + 1]) throw Error("newtonRewrite: leading exponent not dominant");
    Exponents b(n, 0);
    Polynomial prod = Polynomial::constant(n, QSqrt5(1));
    for (int i = 0; i < n; ++i) {
      b[i] = a[i] - (i + 1 < n ? a[i + 1] : 0);
      if (b[i]) prod = prod * elem[i].pow(b[i]);
    }
    inElem.addTerm(b, lead->second);
    residual -= prod * lead->second;
  }

  // e_k in power sums: k E_k = sum_{i=1..k} (-1)^{i-1} E_{k-i} y_i.
  std::vector<Polynomial> E(n + 1, Polynomial(n));
  E[0] = Polynomial::constant(n, QSqrt5(1));
  for (int k = 1; k <= n; ++k) {
    Polynomial acc(n);
    for (int i = 1; i <= k; ++i) {
      Polynomial term = E[k - i] * Polynomial::variable(n, i - 1);
      acc += (i % 2 == 1) ? term : -term;
    }
    E[k] = acc * QSqrt5(Rational(1, k));
  }
  return compose(inElem, std::vector<Polynomial>(E.begin() + 1, E.end()));
}

SparsityReport sparsityCertificate(const BasicInvariantSet& basis, int k) {
  SparsityReport r;
  r.k = k;
  const auto degs = basis.degrees();
  if (k < 1 || k > basis.count()) throw Error("sparsityCertificate: k out of range");
  if (k == basis.count()) {
    r.basisIndependent = true;
    r.note = "full basis";
    return r;
  }
  r.basisIndependent = degs[k] > degs[k - 1];
  r.tieAmbiguous = !r.basisIndependent;
  if (r.tieAmbiguous) {
    r.note = "d_" + std::to_string(k) + " = d_" + std::to_string(k + 1) + " = " +
             std::to_string(degs[k]);
    if (basis.group.family == Family::D && basis.group.param % 2 == 0 &&
        k == basis.group.param / 2)
      r.note += "; middle D-invariant mixes s_n and e_n";
  } else {
    r.note = "degrees " + std::to_string(degs[k - 1]) + " < " + std::to_string(degs[k]);
  }
  return r;
}

}  // namespace strata
