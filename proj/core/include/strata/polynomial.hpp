#ifndef STRATA_POLYNOMIAL_HPP
#define STRATA_POLYNOMIAL_HPP

#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "strata/numbers.hpp"

namespace strata {

using Exponents = std::vector<int>;

/// Graded lexicographic order on exponent vectors of equal length.
struct GradedLexLess {
  bool operator()(const Exponents& x, const Exponents& y) const {
    const int dx = std::accumulate(x.begin(), x.end(), 0);
    const int dy = std::accumulate(y.begin(), y.end(), 0);
    if (dx != dy) return dx < dy;
    return x < y;
  }
};

/// Sparse multivariate polynomial with exact coefficients in Q(sqrt 5).
///
/// Terms are kept in a sorted map keyed by exponent vector, so equal
/// polynomials compare equal and textual output is canonical. A total
/// degree cap guards against runaway compositions.
class Polynomial {
 public:
  static constexpr int kMaxTotalDegree = 64;

  using TermMap = std::map<Exponents, QSqrt5, GradedLexLess>;

  Polynomial() = default;
  explicit Polynomial(int nvars) : nvars_(nvars) {}

  static Polynomial constant(int nvars, QSqrt5 c);
  static Polynomial variable(int nvars, int index);
  static Polynomial monomial(int nvars, Exponents e, QSqrt5 c);
  /// Linear form <v, x>.
  static Polynomial linearForm(const std::vector<QSqrt5>& v);

  int nvars() const { return nvars_; }
  bool isZero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  std::size_t termCount() const { return terms_.size(); }

  /// Total degree; -1 for the zero polynomial.
  int totalDegree() const;
  int degreeIn(int var) const;

  void addTerm(const Exponents& e, const QSqrt5& c);

  Polynomial& operator+=(const Polynomial& q);
  Polynomial& operator-=(const Polynomial& q);
  Polynomial& operator*=(const Polynomial& q) { return *this = *this * q; }
  Polynomial& operator*=(const QSqrt5& c);

  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(Polynomial p, const QSqrt5& c) { return p *= c; }
  friend Polynomial operator*(const QSqrt5& c, Polynomial p) { return p *= c; }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& p, const Polynomial& q) {
    return p.nvars_ == q.nvars_ && p.terms_ == q.terms_;
  }
  friend bool operator!=(const Polynomial& p, const Polynomial& q) { return !(p == q); }

  /// Deterministic total order for use as a container key.
  static int compare(const Polynomial& p, const Polynomial& q);

  Polynomial pow(int e) const;
  Polynomial derivative(int var) const;
  std::vector<Polynomial> gradient() const;

  double eval(std::span<const double> x) const;
  QSqrt5 evalExact(const std::vector<QSqrt5>& x) const;

  std::string str() const;

 private:
  int nvars_ = 0;
  TermMap terms_;
};

struct PolynomialLess {
  bool operator()(const Polynomial& p, const Polynomial& q) const {
    return Polynomial::compare(p, q) < 0;
  }
};

/// Flattened double-precision form for hot evaluation loops. Exactness is
/// given up; the numeric solvers use this, the algebra stays on Polynomial.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  explicit CompiledPolynomial(const Polynomial& p);

  int nvars() const { return nvars_; }
  double eval(std::span<const double> x) const;

 private:
  int nvars_ = 0;
  std::vector<int> powOffset_;  // per variable, into the power scratch
  int powSize_ = 0;
  std::vector<double> coef_;
  std::vector<int> exps_;  // stride nvars_
};

/// Exact substitution F(g_1, ..., g_m) for F in m variables.
Polynomial compose(const Polynomial& F, const std::vector<Polynomial>& gs);

/// p(L_1(x), ..., L_n(x)) for linear forms L_i(x) = sum_j M[i][j] x_j.
/// M is row-major with p.nvars() rows; the forms may live in a different
/// number of variables (the number of columns).
Polynomial substituteLinear(const Polynomial& p,
                            const std::vector<std::vector<QSqrt5>>& rows);

/// Parses the textual syntax: `+ - * ^`, integer and p/q literals, variables
/// x1..xn or y1..yk, and the token sqrt5. If nvars < 0 the variable count is
/// inferred from the largest index present.
Polynomial parsePolynomial(std::string_view text, int nvars = -1);

}  // namespace strata

#endif  // STRATA_POLYNOMIAL_HPP
