#include "strata/arrangement.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace strata {

namespace {

std::vector<QVector> fixedSpaceBasis(const RootSystem& rs) {
  std::vector<QVector> rows;
  for (int i : rs.positiveIdx) rows.push_back(rs.roots[i]);
  return nullSpace(rows, rs.dim);
}

std::string spanKey(const std::vector<QVector>& rref) {
  std::ostringstream os;
  for (const auto& row : rref) {
    for (const auto& c : row) os << c.a << "," << c.b << ";";
    os << "|";
  }
  return os.str();
}

Flat makeFlat(const GroupDescriptor& g, const RootSystem& rs,
              std::vector<QVector> normalRref) {
  Flat f;
  const int r = static_cast<int>(normalRref.size());
  f.dim = g.rank - r;
  f.normalBasis = std::move(normalRref);
  for (int i : rs.positiveIdx) {
    QVector probe = rs.roots[i];
    std::vector<QVector> rows = f.normalBasis;
    rows.push_back(probe);
    if (rankOf(rows) == r) f.normalRoots.push_back(i);
  }
  std::vector<QVector> cut = f.normalBasis;
  for (auto& fx : fixedSpaceBasis(rs)) cut.push_back(fx);
  f.basis = nullSpace(cut, rs.dim);
  return f;
}

}  // namespace

std::vector<Flat> hyperplanes(const GroupDescriptor& g) {
  const RootSystem& rs = rootSystem(g);
  std::vector<Flat> out;
  out.reserve(rs.positiveIdx.size());
  for (int i : rs.positiveIdx)
    out.push_back(makeFlat(g, rs, canonicalSpan({rs.roots[i]})));
  return out;
}

std::vector<Flat> flats(const GroupDescriptor& g, int dim) {
  if (dim < 0 || dim > g.rank) throw Error("flats: dimension out of range");
  const RootSystem& rs = rootSystem(g);
  const int targetRank = g.rank - dim;

  std::map<std::string, std::vector<QVector>> level;
  level.emplace(spanKey({}), std::vector<QVector>{});
  for (int r = 0; r < targetRank; ++r) {
    std::map<std::string, std::vector<QVector>> next;
    for (const auto& [key, span] : level) {
      for (int i : rs.positiveIdx) {
        std::vector<QVector> grown = span;
        grown.push_back(rs.roots[i]);
        grown = canonicalSpan(std::move(grown));
        if (static_cast<int>(grown.size()) != r + 1) continue;  // root already in span
        std::string k = spanKey(grown);
        next.emplace(std::move(k), std::move(grown));
      }
    }
    level = std::move(next);
  }
  std::vector<Flat> out;
  out.reserve(level.size());
  for (auto& [key, span] : level) out.push_back(makeFlat(g, rs, std::move(span)));
  return out;
}

std::vector<Flat> flatOrbitRepresentatives(const GroupDescriptor& g, int dim) {
  const RootSystem& rs = rootSystem(g);
  auto all = flats(g, dim);
  std::map<std::string, int> keyToIndex;
  for (std::size_t i = 0; i < all.size(); ++i)
    keyToIndex[spanKey(all[i].normalBasis)] = static_cast<int>(i);

  auto gens = simpleReflections(g);
  std::vector<bool> visited(all.size(), false);
  std::vector<Flat> reps;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (visited[i]) continue;
    reps.push_back(all[i]);  // the map is key-ordered, so this rep is canonical
    std::vector<int> queue{static_cast<int>(i)};
    visited[i] = true;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const Flat& cur = all[queue[q]];
      for (const auto& s : gens) {
        std::vector<QVector> moved;
        for (const auto& row : cur.normalBasis) moved.push_back(s.apply(row));
        auto key = spanKey(canonicalSpan(std::move(moved)));
        auto it = keyToIndex.find(key);
        if (it == keyToIndex.end()) throw Error("flat orbit left the enumeration");
        if (!visited[it->second]) {
          visited[it->second] = true;
          queue.push_back(it->second);
        }
      }
    }
  }
  return reps;
}

int stratumDimForRoots(const std::vector<QVector>& positiveRoots,
                       std::span<const double> p, double tol) {
  double pnorm = 0;
  for (double x : p) pnorm += x * x;
  pnorm = std::sqrt(pnorm);
  std::vector<QVector> vanishing;
  for (const auto& a : positiveRoots) {
    double dp = 0, an = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double ai = a[i].toDouble();
      dp += ai * p[i];
      an += ai * ai;
    }
    const double scale = std::sqrt(an) * std::max(pnorm, 1e-300);
    if (std::abs(dp) <= tol * scale || std::abs(dp) == 0.0) vanishing.push_back(a);
  }
  return static_cast<int>(p.size()) - rankOf(vanishing);
}

int stratumDim(const GroupDescriptor& g, std::span<const double> p, double tol) {
  const RootSystem& rs = rootSystem(g);
  if (static_cast<int>(p.size()) != rs.dim) throw Error("stratumDim: point dimension mismatch");
  std::vector<QVector> pos;
  for (int i : rs.positiveIdx) pos.push_back(rs.roots[i]);
  return stratumDimForRoots(pos, p, tol);
}

int stratumDimExact(const GroupDescriptor& g, const QVector& p) {
  const RootSystem& rs = rootSystem(g);
  if (static_cast<int>(p.size()) != rs.dim) throw Error("stratumDim: point dimension mismatch");
  std::vector<QVector> vanishing;
  for (int i : rs.positiveIdx)
    if (dot(rs.roots[i], p).isZero()) vanishing.push_back(rs.roots[i]);
  return rs.dim - rankOf(vanishing);
}

int stratumDimExact(const GroupDescriptor& g, const std::vector<Rational>& p) {
  QVector pq(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) pq[i] = QSqrt5(p[i]);
  return stratumDimExact(g, pq);
}

std::string StratumPattern::str() const {
  std::ostringstream os;
  os << familyName(family) << "-pattern(";
  for (std::size_t i = 0; i < multiplicities.size(); ++i)
    os << (i ? "," : "") << multiplicities[i];
  os << ")";
  if (zeros) os << " zeros=" << zeros;
  if (signBit < 0) os << " sign=-1";
  return os.str();
}

namespace {

void partitionsInto(int n, int maxParts, int maxPart, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  if (maxParts == 0) return;
  for (int p = std::min(n, maxPart); p >= 1; --p) {
    cur.push_back(p);
    partitionsInto(n - p, maxParts - 1, p, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> partitions(int n, int maxParts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  partitionsInto(n, maxParts, n == 0 ? 1 : n, cur, out);
  return out;
}

}  // namespace

std::vector<StratumPattern> patterns(Family family, int n, int k) {
  if (k < 1 || k > n) throw Error("patterns: k out of range");
  std::vector<StratumPattern> out;
  auto add = [&](std::vector<int> mult, int zeros, int sign) {
    StratumPattern p;
    p.family = family;
    p.n = n;
    p.freeVars = static_cast<int>(mult.size());
    p.multiplicities = std::move(mult);
    p.zeros = zeros;
    p.signBit = sign;
    out.push_back(std::move(p));
  };
  switch (family) {
    case Family::A:
      for (auto& m : partitions(n, k)) add(m, 0, 1);
      break;
    case Family::B:
      for (int z = 0; z <= n; ++z)
        for (auto& m : partitions(n - z, k)) add(m, z, 1);
      break;
    case Family::D:
      for (int z = 0; z <= n; ++z) {
        if (z == 1) {
          if (k >= 2)
            for (auto& m : partitions(n - 1, k - 1)) add(m, 1, 1);
          continue;
        }
        for (auto& m : partitions(n - z, k)) {
          add(m, z, 1);
          if (z == 0 && !m.empty()) add(m, 0, -1);
        }
      }
      break;
    default:
      throw Error("patterns are defined for the A, B, D families only");
  }
  return out;
}

std::vector<double> embed(const StratumPattern& pat, std::span<const double> t) {
  if (static_cast<int>(t.size()) != pat.freeVars) throw Error("embed: dimension mismatch");
  std::vector<double> x;
  x.reserve(pat.n);
  for (std::size_t i = 0; i < pat.multiplicities.size(); ++i)
    for (int r = 0; r < pat.multiplicities[i]; ++r) x.push_back(t[i]);
  for (int z = 0; z < pat.zeros; ++z) x.push_back(0.0);
  if (pat.signBit < 0 && !pat.multiplicities.empty()) {
    const int lastBlockEnd = pat.n - pat.zeros - 1;
    x[lastBlockEnd] = -x[lastBlockEnd];
  }
  return x;
}

std::vector<Rational> embedExact(const StratumPattern& pat,
                                 const std::vector<Rational>& t) {
  if (static_cast<int>(t.size()) != pat.freeVars) throw Error("embed: dimension mismatch");
  std::vector<Rational> x;
  x.reserve(pat.n);
  for (std::size_t i = 0; i < pat.multiplicities.size(); ++i)
    for (int r = 0; r < pat.multiplicities[i]; ++r) x.push_back(t[i]);
  for (int z = 0; z < pat.zeros; ++z) x.push_back(Rational(0));
  if (pat.signBit < 0 && !pat.multiplicities.empty()) {
    const int lastBlockEnd = pat.n - pat.zeros - 1;
    x[lastBlockEnd] = -x[lastBlockEnd];
  }
  return x;
}

int jacobianRank(const std::vector<Polynomial>& basics, std::span<const double> p,
                 int k, double tol) {
  if (k + 1 > static_cast<int>(basics.size()))
    throw Error("jacobianRank: k+1 exceeds the number of basics");
  const int n = basics[0].nvars();
  Eigen::MatrixXd J(k + 1, n);
  for (int i = 0; i <= k; ++i) {
    auto grad = basics[i].gradient();
    for (int j = 0; j < n; ++j) J(i, j) = grad[j].eval(p);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++rank;
  return rank;
}

int jacobianRankExact(const std::vector<Polynomial>& basics,
                      const std::vector<Rational>& p, int k) {
  if (k + 1 > static_cast<int>(basics.size()))
    throw Error("jacobianRank: k+1 exceeds the number of basics");
  const int n = basics[0].nvars();
  QVector pq(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) pq[i] = QSqrt5(p[i]);
  std::vector<QVector> rows;
  for (int i = 0; i <= k; ++i) {
    auto grad = basics[i].gradient();
    QVector row(n);
    for (int j = 0; j < n; ++j) row[j] = grad[j].evalExact(pq);
    rows.push_back(std::move(row));
  }
  return rankOf(rows);
}

}  // namespace strata
