#ifndef STRATA_QLINALG_HPP
#define STRATA_QLINALG_HPP

#include <vector>

#include "strata/numbers.hpp"

namespace strata {

using QVector = std::vector<QSqrt5>;

QSqrt5 dot(const QVector& x, const QVector& y);

inline QVector operator-(const QVector& x) {
  QVector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = -x[i];
  return r;
}
QVector operator+(const QVector& x, const QVector& y);
QVector operator-(const QVector& x, const QVector& y);
QVector operator*(const QSqrt5& c, const QVector& x);

bool lexLess(const QVector& x, const QVector& y);
struct QVectorLexLess {
  bool operator()(const QVector& x, const QVector& y) const { return lexLess(x, y); }
};

std::vector<double> toDouble(const QVector& v);

/// Dense square matrix over Q(sqrt 5), row major.
struct QMatrix {
  int n = 0;
  std::vector<QSqrt5> a;

  QMatrix() = default;
  explicit QMatrix(int size) : n(size), a(static_cast<std::size_t>(size) * size) {}

  static QMatrix identity(int size);

  QSqrt5& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  const QSqrt5& at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

  QMatrix transpose() const;
  QVector apply(const QVector& v) const;
  friend QMatrix operator*(const QMatrix& x, const QMatrix& y);
  friend bool operator==(const QMatrix& x, const QMatrix& y) {
    return x.n == y.n && x.a == y.a;
  }
  bool isOrthogonal() const;
  std::vector<std::vector<QSqrt5>> rows() const;
};

struct QMatrixLexLess {
  bool operator()(const QMatrix& x, const QMatrix& y) const;
};

/// Reflection through the hyperplane orthogonal to the (nonzero) root.
QMatrix reflectionMatrix(const QVector& root);

/// In-place Gauss-Jordan elimination to reduced row echelon form.
/// Returns the rank; rows must share a common length.
int rowReduce(std::vector<QVector>& rows);

int rankOf(std::vector<QVector> rows);

/// Canonical basis (RREF rows) of the span of the given vectors.
std::vector<QVector> canonicalSpan(std::vector<QVector> rows);

/// Canonical basis of the null space {x : rows * x = 0}, dim = width - rank.
std::vector<QVector> nullSpace(const std::vector<QVector>& rows, int width);

/// Solves A x = b exactly for square A; throws on singular A.
QVector solveLinear(const QMatrix& A, const QVector& b);

}  // namespace strata

#endif  // STRATA_QLINALG_HPP
