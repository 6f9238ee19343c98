#include "strata/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace strata {

namespace {

int sumOf(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

void checkDegreeCap(int deg) {
  if (deg > Polynomial::kMaxTotalDegree)
    throw Error("polynomial degree cap " + std::to_string(Polynomial::kMaxTotalDegree) +
                " exceeded (degree " + std::to_string(deg) + ")");
}

}  // namespace

Polynomial Polynomial::constant(int nvars, QSqrt5 c) {
  Polynomial p(nvars);
  p.addTerm(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int index) {
  if (index < 0 || index >= nvars) throw Error("variable index out of range");
  Exponents e(nvars, 0);
  e[index] = 1;
  return monomial(nvars, std::move(e), QSqrt5(1));
}

Polynomial Polynomial::monomial(int nvars, Exponents e, QSqrt5 c) {
  if (static_cast<int>(e.size()) != nvars) throw Error("exponent vector length mismatch");
  Polynomial p(nvars);
  p.addTerm(e, c);
  return p;
}

Polynomial Polynomial::linearForm(const std::vector<QSqrt5>& v) {
  Polynomial p(static_cast<int>(v.size()));
  Exponents e(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    e[i] = 1;
    p.addTerm(e, v[i]);
    e[i] = 0;
  }
  return p;
}

int Polynomial::totalDegree() const {
  if (terms_.empty()) return -1;
  // Graded order: the last term carries the maximal total degree.
  return sumOf(terms_.rbegin()->first);
}

int Polynomial::degreeIn(int var) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

void Polynomial::addTerm(const Exponents& e, const QSqrt5& c) {
  if (static_cast<int>(e.size()) != nvars_) throw Error("exponent vector length mismatch");
  if (c.isZero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.isZero()) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& q) {
  if (nvars_ != q.nvars_) throw Error("polynomial arity mismatch");
  for (const auto& [e, c] : q.terms_) addTerm(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& q) {
  if (nvars_ != q.nvars_) throw Error("polynomial arity mismatch");
  for (const auto& [e, c] : q.terms_) addTerm(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const QSqrt5& c) {
  if (c.isZero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [e, v] : r.terms_) v = -v;
  return r;
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  if (p.nvars_ != q.nvars_) throw Error("polynomial arity mismatch");
  Polynomial r(p.nvars_);
  if (p.isZero() || q.isZero()) return r;
  checkDegreeCap(p.totalDegree() + q.totalDegree());
  Exponents e(p.nvars_);
  for (const auto& [ep, cp] : p.terms_) {
    for (const auto& [eq, cq] : q.terms_) {
      for (int i = 0; i < p.nvars_; ++i) e[i] = ep[i] + eq[i];
      r.addTerm(e, cp * cq);
    }
  }
  return r;
}

int Polynomial::compare(const Polynomial& p, const Polynomial& q) {
  if (p.nvars_ != q.nvars_) return p.nvars_ < q.nvars_ ? -1 : 1;
  auto it = p.terms_.begin();
  auto jt = q.terms_.begin();
  GradedLexLess less;
  for (; it != p.terms_.end() && jt != q.terms_.end(); ++it, ++jt) {
    if (less(it->first, jt->first)) return -1;
    if (less(jt->first, it->first)) return 1;
    if (it->second != jt->second) {
      if (it->second.a != jt->second.a) return it->second.a < jt->second.a ? -1 : 1;
      return it->second.b < jt->second.b ? -1 : 1;
    }
  }
  if (it != p.terms_.end()) return 1;
  if (jt != q.terms_.end()) return -1;
  return 0;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw Error("negative exponent");
  Polynomial r = constant(nvars_, QSqrt5(1));
  Polynomial base(*this);
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d(e);
    d[var] -= 1;
    r.addTerm(d, c * QSqrt5(e[var]));
  }
  return r;
}

std::vector<Polynomial> Polynomial::gradient() const {
  std::vector<Polynomial> g;
  g.reserve(nvars_);
  for (int i = 0; i < nvars_; ++i) g.push_back(derivative(i));
  return g;
}

double Polynomial::eval(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != nvars_) throw Error("evaluation point dimension mismatch");
  // Per-variable power tables amortize the monomial products.
  thread_local std::vector<std::vector<double>> pows;
  pows.assign(nvars_, {});
  for (int i = 0; i < nvars_; ++i) {
    const int d = degreeIn(i);
    auto& t = pows[i];
    t.resize(d + 1);
    t[0] = 1.0;
    for (int k = 1; k <= d; ++k) t[k] = t[k - 1] * x[i];
  }
  double acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = c.toDouble();
    for (int i = 0; i < nvars_; ++i)
      if (e[i]) m *= pows[i][e[i]];
    acc += m;
  }
  return acc;
}

QSqrt5 Polynomial::evalExact(const std::vector<QSqrt5>& x) const {
  if (static_cast<int>(x.size()) != nvars_) throw Error("evaluation point dimension mismatch");
  std::vector<std::vector<QSqrt5>> pows(nvars_);
  for (int i = 0; i < nvars_; ++i) {
    const int d = degreeIn(i);
    pows[i].resize(d + 1);
    pows[i][0] = QSqrt5(1);
    for (int k = 1; k <= d; ++k) pows[i][k] = pows[i][k - 1] * x[i];
  }
  QSqrt5 acc(0);
  for (const auto& [e, c] : terms_) {
    QSqrt5 m = c;
    for (int i = 0; i < nvars_; ++i)
      if (e[i]) m *= pows[i][e[i]];
    acc += m;
  }
  return acc;
}

CompiledPolynomial::CompiledPolynomial(const Polynomial& p) : nvars_(p.nvars()) {
  powOffset_.resize(nvars_);
  int off = 0;
  for (int i = 0; i < nvars_; ++i) {
    powOffset_[i] = off;
    off += p.degreeIn(i) + 1;
  }
  powSize_ = off;
  coef_.reserve(p.termCount());
  exps_.reserve(p.termCount() * nvars_);
  for (const auto& [e, c] : p.terms()) {
    coef_.push_back(c.toDouble());
    exps_.insert(exps_.end(), e.begin(), e.end());
  }
}

double CompiledPolynomial::eval(std::span<const double> x) const {
  thread_local std::vector<double> pw;
  if (static_cast<int>(pw.size()) < powSize_) pw.resize(powSize_);
  for (int i = 0; i < nvars_; ++i) {
    const int off = powOffset_[i];
    const int top = (i + 1 < nvars_ ? powOffset_[i + 1] : powSize_) - off;
    pw[off] = 1.0;
    for (int k = 1; k < top; ++k) pw[off + k] = pw[off + k - 1] * x[i];
  }
  double acc = 0.0;
  const int* e = exps_.data();
  for (std::size_t t = 0; t < coef_.size(); ++t, e += nvars_) {
    double m = coef_[t];
    for (int i = 0; i < nvars_; ++i)
      if (e[i]) m *= pw[powOffset_[i] + e[i]];
    acc += m;
  }
  return acc;
}

Polynomial compose(const Polynomial& F, const std::vector<Polynomial>& gs) {
  if (static_cast<int>(gs.size()) != F.nvars())
    throw Error("compose: arity mismatch between F and the substituted list");
  if (gs.empty()) {
    QSqrt5 c(0);
    for (const auto& [e, cc] : F.terms()) c += cc;
    return Polynomial::constant(0, c);
  }
  const int n = gs[0].nvars();
  for (const auto& g : gs)
    if (g.nvars() != n) throw Error("compose: substituted polynomials disagree on arity");

  // Power tables g_i^k for every exponent that actually occurs.
  std::vector<std::vector<Polynomial>> pows(gs.size());
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const int d = F.degreeIn(static_cast<int>(i));
    pows[i].reserve(d + 1);
    pows[i].push_back(Polynomial::constant(n, QSqrt5(1)));
    for (int k = 1; k <= d; ++k) pows[i].push_back(pows[i].back() * gs[i]);
  }
  Polynomial r(n);
  for (const auto& [e, c] : F.terms()) {
    Polynomial term = Polynomial::constant(n, c);
    for (std::size_t i = 0; i < gs.size(); ++i)
      if (e[i]) term = term * pows[i][e[i]];
    r += term;
  }
  return r;
}

Polynomial substituteLinear(const Polynomial& p,
                            const std::vector<std::vector<QSqrt5>>& rows) {
  if (static_cast<int>(rows.size()) != p.nvars())
    throw Error("substituteLinear: row count must equal nvars");
  const int m = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  std::vector<Polynomial> forms;
  forms.reserve(rows.size());
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != m) throw Error("substituteLinear: ragged rows");
    forms.push_back(Polynomial::linearForm(r));
  }
  // Memoized monomial expansion: each distinct monomial costs one
  // linear multiplication on top of a smaller monomial.
  std::map<Exponents, Polynomial> memo;
  memo.emplace(Exponents(p.nvars(), 0), Polynomial::constant(m, QSqrt5(1)));
  auto expand = [&](const Exponents& e, auto&& self) -> const Polynomial& {
    auto it = memo.find(e);
    if (it != memo.end()) return it->second;
    int i = 0;
    while (e[i] == 0) ++i;
    Exponents d(e);
    d[i] -= 1;
    Polynomial val = self(d, self) * forms[i];
    return memo.emplace(e, std::move(val)).first->second;
  };
  Polynomial r(m);
  for (const auto& [e, c] : p.terms()) r += expand(e, expand) * c;
  return r;
}

// ---------------------------------------------------------------------------
// Textual form

namespace {

struct Parser {
  std::string_view s;
  std::size_t pos = 0;

  void skipWs() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eof() {
    skipWs();
    return pos >= s.size();
  }
  char peek() {
    skipWs();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool consume(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw Error("parse error at position " + std::to_string(pos) + ": " + msg);
  }

  long long integer() {
    skipWs();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return std::stoll(std::string(s.substr(start, pos - start)));
  }

  // number := INT ('/' INT)?
  Rational number() {
    Rational num(integer());
    skipWs();
    if (pos < s.size() && s[pos] == '/') {
      ++pos;
      Rational den(integer());
      if (den == 0) fail("zero denominator");
      num /= den;
    }
    return num;
  }

  int maxVarSeen = 0;

  // base := number | sqrt5 | var | '(' expr ')'
  Polynomial base(int nvars) {
    skipWs();
    if (pos >= s.size()) fail("unexpected end of input");
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c)))
      return Polynomial::constant(nvars, QSqrt5(number()));
    if (c == '(') {
      ++pos;
      Polynomial e = expr(nvars);
      if (!consume(')')) fail("expected ')'");
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos]))))
        ++pos;
      std::string word(s.substr(start, pos - start));
      if (word == "sqrt5") return Polynomial::constant(nvars, QSqrt5::sqrt5());
      if ((word[0] == 'x' || word[0] == 'y') && word.size() > 1) {
        int idx = std::stoi(word.substr(1));
        if (idx < 1) fail("variable indices start at 1");
        maxVarSeen = std::max(maxVarSeen, idx);
        if (idx > nvars) fail("variable " + word + " exceeds arity " + std::to_string(nvars));
        return Polynomial::variable(nvars, idx - 1);
      }
      fail("unknown token '" + word + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  // factor := base ('^' INT)?
  Polynomial factor(int nvars) {
    Polynomial b = base(nvars);
    if (consume('^')) {
      long long e = integer();
      if (e < 0 || e > Polynomial::kMaxTotalDegree) fail("exponent out of range");
      return b.pow(static_cast<int>(e));
    }
    return b;
  }

  // term := factor ('*' factor)*
  Polynomial term(int nvars) {
    Polynomial t = factor(nvars);
    while (consume('*')) t = t * factor(nvars);
    return t;
  }

  // expr := ('-')? term (('+'|'-') term)*
  Polynomial expr(int nvars) {
    bool neg = false;
    if (consume('-'))
      neg = true;
    else
      consume('+');
    Polynomial acc = term(nvars);
    if (neg) acc = -acc;
    for (;;) {
      if (consume('+'))
        acc += term(nvars);
      else if (consume('-'))
        acc -= term(nvars);
      else
        break;
    }
    return acc;
  }
};

void appendMonomial(std::ostream& os, const Exponents& e, const QSqrt5& c, bool first) {
  const bool rationalNeg = c.isRational() && c.a < 0;
  QSqrt5 shown = rationalNeg ? -c : c;
  if (first) {
    if (rationalNeg) os << "-";
  } else {
    os << (rationalNeg ? " - " : " + ");
  }
  bool anyVar = std::any_of(e.begin(), e.end(), [](int v) { return v > 0; });
  std::string cs = shown.isRational() ? shown.a.str() : "(" + shown.str() + ")";
  if (!anyVar) {
    os << cs;
    return;
  }
  bool coefShown = false;
  if (cs != "1") {
    os << cs;
    coefShown = true;
  }
  bool firstVar = true;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (coefShown || !firstVar) os << "*";
    os << "x" << (i + 1);
    if (e[i] > 1) os << "^" << e[i];
    firstVar = false;
    coefShown = true;
  }
}

}  // namespace

Polynomial parsePolynomial(std::string_view text, int nvars) {
  if (nvars < 0) {
    // Two passes: discover the arity, then build.
    Parser probe{text};
    probe.expr(Polynomial::kMaxTotalDegree);  // arity bound irrelevant on probe
    nvars = probe.maxVarSeen;
  }
  Parser p{text};
  Polynomial r = p.expr(nvars);
  if (!p.eof()) p.fail("trailing input");
  return r;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Canonical output: descending graded-lex.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    appendMonomial(os, it->first, it->second, first);
    first = false;
  }
  return os.str();
}

}  // namespace strata
