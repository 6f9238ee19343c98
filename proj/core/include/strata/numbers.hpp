#ifndef STRATA_NUMBERS_HPP
#define STRATA_NUMBERS_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace strata {

using Rational = boost::multiprecision::mpq_rational;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Element of the real quadratic field Q(sqrt 5), stored as a + b*sqrt(5).
/// All arithmetic is exact; crystallographic data keeps b = 0 throughout.
struct QSqrt5 {
  Rational a{0};
  Rational b{0};

  QSqrt5() = default;
  QSqrt5(int v) : a(v) {}                       // NOLINT(google-explicit-constructor)
  QSqrt5(long long v) : a(v) {}                 // NOLINT(google-explicit-constructor)
  QSqrt5(Rational v) : a(std::move(v)) {}       // NOLINT(google-explicit-constructor)
  QSqrt5(Rational ra, Rational rb) : a(std::move(ra)), b(std::move(rb)) {}

  static QSqrt5 sqrt5() { return QSqrt5(Rational(0), Rational(1)); }
  /// The golden ratio (1 + sqrt 5) / 2.
  static QSqrt5 phi() { return QSqrt5(Rational(1, 2), Rational(1, 2)); }

  bool isZero() const { return a == 0 && b == 0; }
  bool isRational() const { return b == 0; }

  QSqrt5& operator+=(const QSqrt5& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  QSqrt5& operator-=(const QSqrt5& o) {
    a -= o.a;
    b -= o.b;
    return *this;
  }
  QSqrt5& operator*=(const QSqrt5& o) {
    // (a + b s)(c + d s) = (ac + 5bd) + (ad + bc) s
    Rational na = a * o.a + 5 * (b * o.b);
    Rational nb = a * o.b + b * o.a;
    a = std::move(na);
    b = std::move(nb);
    return *this;
  }
  QSqrt5& operator/=(const QSqrt5& o) { return *this *= o.inverse(); }

  QSqrt5 operator-() const { return QSqrt5(-a, -b); }

  friend QSqrt5 operator+(QSqrt5 x, const QSqrt5& y) { return x += y; }
  friend QSqrt5 operator-(QSqrt5 x, const QSqrt5& y) { return x -= y; }
  friend QSqrt5 operator*(QSqrt5 x, const QSqrt5& y) { return x *= y; }
  friend QSqrt5 operator/(QSqrt5 x, const QSqrt5& y) { return x /= y; }
  friend bool operator==(const QSqrt5& x, const QSqrt5& y) {
    return x.a == y.a && x.b == y.b;
  }
  friend bool operator!=(const QSqrt5& x, const QSqrt5& y) { return !(x == y); }

  QSqrt5 conjugate() const { return QSqrt5(a, -b); }

  QSqrt5 inverse() const {
    // 1/(a + b s) = (a - b s)/(a^2 - 5 b^2); the norm vanishes only at 0.
    Rational norm = a * a - 5 * (b * b);
    if (norm == 0) throw Error("QSqrt5: division by zero");
    return QSqrt5(a / norm, -b / norm);
  }

  /// Sign of the real number a + b*sqrt(5): -1, 0, or +1.
  int sign() const {
    const int sa = a.sign();
    const int sb = b.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 with 5 b^2.
    const Rational a2 = a * a;
    const Rational b2 = 5 * (b * b);
    if (a2 == b2) return 0;
    return (a2 > b2) ? sa : sb;
  }

  double toDouble() const {
    static const double kSqrt5 = std::sqrt(5.0);
    return a.convert_to<double>() + b.convert_to<double>() * kSqrt5;
  }

  std::string str() const;
};

/// Numeric comparison in R.
inline int compare(const QSqrt5& x, const QSqrt5& y) { return (x - y).sign(); }

/// Deterministic container ordering (lexicographic on the (a, b) pair —
/// this is not the numeric order on R).
inline bool lexLess(const QSqrt5& x, const QSqrt5& y) {
  if (x.a != y.a) return x.a < y.a;
  return x.b < y.b;
}

struct QSqrt5LexLess {
  bool operator()(const QSqrt5& x, const QSqrt5& y) const { return lexLess(x, y); }
};

inline std::string QSqrt5::str() const {
  if (b == 0) return a.str();
  std::string s;
  if (a != 0) {
    s += a.str();
    s += (b > 0) ? "+" : "-";
  } else if (b < 0) {
    s += "-";
  }
  Rational babs = abs(b);
  if (babs != 1) {
    s += babs.str();
    s += "*";
  }
  s += "sqrt5";
  return s;
}

inline std::ostream& operator<<(std::ostream& os, const QSqrt5& v) {
  return os << v.str();
}

}  // namespace strata

#endif  // STRATA_NUMBERS_HPP
