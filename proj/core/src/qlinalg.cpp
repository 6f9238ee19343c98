#include "strata/qlinalg.hpp"

#include <algorithm>

namespace strata {

QSqrt5 dot(const QVector& x, const QVector& y) {
  if (x.size() != y.size()) throw Error("dot: dimension mismatch");
  QSqrt5 acc(0);
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

QVector operator+(const QVector& x, const QVector& y) {
  if (x.size() != y.size()) throw Error("vector dimension mismatch");
  QVector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return r;
}

QVector operator-(const QVector& x, const QVector& y) {
  if (x.size() != y.size()) throw Error("vector dimension mismatch");
  QVector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

QVector operator*(const QSqrt5& c, const QVector& x) {
  QVector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = c * x[i];
  return r;
}

bool lexLess(const QVector& x, const QVector& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != y[i]) return lexLess(x[i], y[i]);
  return false;
}

std::vector<double> toDouble(const QVector& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].toDouble();
  return r;
}

QMatrix QMatrix::identity(int size) {
  QMatrix m(size);
  for (int i = 0; i < size; ++i) m.at(i, i) = QSqrt5(1);
  return m;
}

QMatrix QMatrix::transpose() const {
  QMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(j, i) = at(i, j);
  return m;
}

QVector QMatrix::apply(const QVector& v) const {
  if (static_cast<int>(v.size()) != n) throw Error("matrix apply: dimension mismatch");
  QVector r(n, QSqrt5(0));
  for (int i = 0; i < n; ++i) {
    QSqrt5 acc(0);
    for (int j = 0; j < n; ++j) acc += at(i, j) * v[j];
    r[i] = acc;
  }
  return r;
}

QMatrix operator*(const QMatrix& x, const QMatrix& y) {
  if (x.n != y.n) throw Error("matrix product: dimension mismatch");
  QMatrix r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      const QSqrt5& xik = x.at(i, k);
      if (xik.isZero()) continue;
      for (int j = 0; j < x.n; ++j) {
        const QSqrt5& ykj = y.at(k, j);
        if (!ykj.isZero()) r.at(i, j) += xik * ykj;
      }
    }
  return r;
}

bool QMatrix::isOrthogonal() const {
  return transpose() * *this == identity(n);
}

std::vector<std::vector<QSqrt5>> QMatrix::rows() const {
  std::vector<QVector> r(n);
  for (int i = 0; i < n; ++i) {
    r[i].resize(n);
    for (int j = 0; j < n; ++j) r[i][j] = at(i, j);
  }
  return r;
}

bool QMatrixLexLess::operator()(const QMatrix& x, const QMatrix& y) const {
  if (x.n != y.n) return x.n < y.n;
  for (std::size_t i = 0; i < x.a.size(); ++i)
    if (x.a[i] != y.a[i]) return lexLess(x.a[i], y.a[i]);
  return false;
}

QMatrix reflectionMatrix(const QVector& root) {
  const int n = static_cast<int>(root.size());
  QSqrt5 norm = dot(root, root);
  if (norm.isZero()) throw Error("reflectionMatrix: zero root");
  QMatrix m = QMatrix::identity(n);
  QSqrt5 two(2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) -= two * root[i] * root[j] / norm;
  return m;
}

int rowReduce(std::vector<QVector>& rows) {
  if (rows.empty()) return 0;
  const int width = static_cast<int>(rows[0].size());
  int rank = 0;
  for (int col = 0; col < width && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (!rows[r][col].isZero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    QSqrt5 inv = rows[rank][col].inverse();
    for (int j = col; j < width; ++j) rows[rank][j] *= inv;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][col].isZero()) continue;
      QSqrt5 f = rows[r][col];
      for (int j = col; j < width; ++j) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  rows.resize(rank);
  return rank;
}

int rankOf(std::vector<QVector> rows) { return rowReduce(rows); }

std::vector<QVector> canonicalSpan(std::vector<QVector> rows) {
  rowReduce(rows);
  return rows;
}

std::vector<QVector> nullSpace(const std::vector<QVector>& rowsIn, int width) {
  std::vector<QVector> rows = rowsIn;
  rowReduce(rows);
  std::vector<int> pivotCol(rows.size());
  std::vector<bool> isPivot(width, false);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    int c = 0;
    while (c < width && rows[r][c].isZero()) ++c;
    pivotCol[r] = c;
    if (c < width) isPivot[c] = true;
  }
  std::vector<QVector> basis;
  for (int freeCol = 0; freeCol < width; ++freeCol) {
    if (isPivot[freeCol]) continue;
    QVector v(width, QSqrt5(0));
    v[freeCol] = QSqrt5(1);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (pivotCol[r] < width) v[pivotCol[r]] = -rows[r][freeCol];
    basis.push_back(std::move(v));
  }
  return basis;
}

QVector solveLinear(const QMatrix& A, const QVector& b) {
  const int n = A.n;
  if (static_cast<int>(b.size()) != n) throw Error("solveLinear: dimension mismatch");
  std::vector<QVector> rows(n, QVector(n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) rows[i][j] = A.at(i, j);
    rows[i][n] = b[i];
  }
  if (rowReduce(rows) != n) throw Error("solveLinear: singular system");
  QVector x(n);
  for (int i = 0; i < n; ++i) x[i] = rows[i][n];
  return x;
}

}  // namespace strata
