#include "strata/coxeter.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

namespace strata {

namespace {

QSqrt5 half() { return QSqrt5(Rational(1, 2)); }

QVector unitVec(int n, int i) {
  QVector v(n, QSqrt5(0));
  v[i] = QSqrt5(1);
  return v;
}

std::vector<int> degreesFor(Family f, int param) {
  std::vector<int> d;
  switch (f) {
    case Family::A:
      for (int i = 2; i <= param + 1; ++i) d.push_back(i);
      break;
    case Family::B:
      for (int i = 1; i <= param; ++i) d.push_back(2 * i);
      break;
    case Family::D:
      for (int i = 1; i < param; ++i) d.push_back(2 * i);
      d.push_back(param);
      std::sort(d.begin(), d.end());
      break;
    case Family::I2:
      d = {2, param};
      break;
    case Family::H3:
      d = {2, 6, 10};
      break;
    case Family::H4:
      d = {2, 12, 20, 30};
      break;
    case Family::F4:
      d = {2, 6, 8, 12};
      break;
    case Family::E6:
      d = {2, 5, 6, 8, 9, 12};
      break;
    case Family::E7:
      d = {2, 6, 8, 10, 12, 14, 18};
      break;
    case Family::E8:
      d = {2, 8, 12, 14, 18, 20, 24, 30};
      break;
  }
  return d;
}

DynkinDiagram chainDiagram(int nodes, std::vector<std::pair<int, int>> specialLabels = {}) {
  DynkinDiagram dg;
  dg.nodes = nodes;
  for (int i = 0; i + 1 < nodes; ++i) {
    int label = 3;
    for (auto& [edge, l] : specialLabels)
      if (edge == i) label = l;
    dg.edges.push_back({i, i + 1, label});
  }
  return dg;
}

DynkinDiagram diagramFor(Family f, int param) {
  DynkinDiagram dg;
  switch (f) {
    case Family::A:
      return chainDiagram(param);
    case Family::B:
      return chainDiagram(param, {{param - 2, 4}});
    case Family::D:
      dg.nodes = param;
      for (int i = 0; i + 1 <= param - 3; ++i) dg.edges.push_back({i, i + 1, 3});
      if (param >= 3) {
        dg.edges.push_back({param - 3, param - 2, 3});
        dg.edges.push_back({param - 3, param - 1, 3});
      }
      return dg;
    case Family::I2:
      dg.nodes = 2;
      dg.edges.push_back({0, 1, param});
      return dg;
    case Family::H3:
      return chainDiagram(3, {{0, 5}});
    case Family::H4:
      return chainDiagram(4, {{0, 5}});
    case Family::F4:
      return chainDiagram(4, {{1, 4}});
    case Family::E6:
    case Family::E7:
    case Family::E8: {
      int n = f == Family::E6 ? 6 : (f == Family::E7 ? 7 : 8);
      dg.nodes = n;
      dg.edges.push_back({0, 2, 3});
      dg.edges.push_back({1, 3, 3});
      for (int i = 2; i + 1 < n; ++i) dg.edges.push_back({i, i + 1, 3});
      return dg;
    }
  }
  return dg;
}

}  // namespace

std::string familyName(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::D: return "D";
    case Family::I2: return "I2";
    case Family::H3: return "H3";
    case Family::H4: return "H4";
    case Family::F4: return "F4";
    case Family::E6: return "E6";
    case Family::E7: return "E7";
    case Family::E8: return "E8";
  }
  return "?";
}

int DynkinDiagram::label(int u, int v) const {
  for (const auto& e : edges)
    if ((e[0] == u && e[1] == v) || (e[0] == v && e[1] == u)) return e[2];
  return 2;
}

std::vector<std::vector<std::pair<int, int>>> DynkinDiagram::adjacency() const {
  std::vector<std::vector<std::pair<int, int>>> adj(nodes);
  for (const auto& e : edges) {
    adj[e[0]].push_back({e[1], e[2]});
    adj[e[1]].push_back({e[0], e[2]});
  }
  return adj;
}

std::string GroupDescriptor::name() const {
  switch (family) {
    case Family::A:
    case Family::B:
    case Family::D:
      return familyName(family) + std::to_string(param);
    case Family::I2:
      return "I2(" + std::to_string(param) + ")";
    default:
      return familyName(family);
  }
}

GroupDescriptor catalog(Family f, int param) {
  GroupDescriptor g;
  g.family = f;
  g.param = param;
  switch (f) {
    case Family::A:
      if (param < 1) throw Error("A_m requires m >= 1");
      g.rank = param;
      g.ambientDim = param + 1;
      g.essential = false;
      break;
    case Family::B:
      if (param < 2) throw Error("B_n requires n >= 2");
      g.rank = param;
      g.ambientDim = param;
      g.essential = true;
      break;
    case Family::D:
      if (param < 2) throw Error("D_n requires n >= 2");
      g.rank = param;
      g.ambientDim = param;
      g.essential = true;
      break;
    case Family::I2:
      if (param < 3) throw Error("I2(m) requires m >= 3");
      g.rank = 2;
      if (param == 4) {
        g.ambientDim = 2;
        g.essential = true;
      } else if (param == 3 || param == 5 || param == 6) {
        g.ambientDim = 3;
        g.essential = false;
      } else {
        g.ambientDim = 0;  // no Q(sqrt 5) realization
        g.essential = false;
      }
      break;
    case Family::H3:
      g.rank = 3;
      g.ambientDim = 3;
      g.essential = true;
      break;
    case Family::H4:
    case Family::F4:
      g.rank = 4;
      g.ambientDim = 4;
      g.essential = true;
      break;
    case Family::E6:
      g.rank = 6;
      g.ambientDim = 8;
      g.essential = false;
      break;
    case Family::E7:
      g.rank = 7;
      g.ambientDim = 8;
      g.essential = false;
      break;
    case Family::E8:
      g.rank = 8;
      g.ambientDim = 8;
      g.essential = true;
      break;
  }
  g.degrees = degreesFor(f, param);
  g.realizedDegrees = g.degrees;
  if (g.ambientDim > g.rank) {
    for (int i = 0; i < g.ambientDim - g.rank; ++i) g.realizedDegrees.push_back(1);
    std::sort(g.realizedDegrees.begin(), g.realizedDegrees.end());
  }
  g.order = 1;
  for (int d : g.degrees) g.order *= static_cast<std::uint64_t>(d);
  g.diagram = diagramFor(f, param);
  return g;
}

GroupDescriptor parseGroup(std::string_view text) {
  std::string s(text);
  auto numTail = [&](std::size_t from) {
    if (from >= s.size()) throw Error("group syntax: missing rank in '" + s + "'");
    return std::stoi(s.substr(from));
  };
  if (s.rfind("I2(", 0) == 0 && s.back() == ')')
    return catalog(Family::I2, std::stoi(s.substr(3, s.size() - 4)));
  if (s == "H3") return catalog(Family::H3);
  if (s == "H4") return catalog(Family::H4);
  if (s == "F4") return catalog(Family::F4);
  if (s == "E6") return catalog(Family::E6);
  if (s == "E7") return catalog(Family::E7);
  if (s == "E8") return catalog(Family::E8);
  if (!s.empty() && s[0] == 'A') return catalog(Family::A, numTail(1));
  if (!s.empty() && s[0] == 'B') return catalog(Family::B, numTail(1));
  if (!s.empty() && s[0] == 'D') return catalog(Family::D, numTail(1));
  throw Error("unknown group '" + s + "'");
}

// ---------------------------------------------------------------------------
// Root systems

namespace {

// Generic positivity functional: rho = (1, 1/101, 1/101^2, ...). The base
// dominates every tail for entries of the magnitudes that occur here.
QSqrt5 rhoPairing(const QVector& v) {
  Rational scale(1);
  QSqrt5 acc(0);
  for (const auto& c : v) {
    acc += QSqrt5(scale * c.a, scale * c.b);
    scale /= 101;
  }
  return acc;
}

void finishRootSystem(RootSystem& rs, const std::vector<QVector>& simple) {
  std::set<QVector, QVectorLexLess> seen(rs.roots.begin(), rs.roots.end());
  if (seen.size() != rs.roots.size()) throw Error("duplicate roots in construction");
  rs.positiveIdx.clear();
  for (std::size_t i = 0; i < rs.roots.size(); ++i) {
    int s = rhoPairing(rs.roots[i]).sign();
    if (s == 0) throw Error("positivity functional degenerate");
    if (s > 0) rs.positiveIdx.push_back(static_cast<int>(i));
  }
  rs.simpleIdx.clear();
  for (const auto& sr : simple) {
    auto it = std::find(rs.roots.begin(), rs.roots.end(), sr);
    if (it == rs.roots.end()) throw Error("simple root not in root set");
    rs.simpleIdx.push_back(static_cast<int>(it - rs.roots.begin()));
  }
}

void addPair(std::vector<QVector>& roots, const QVector& v) {
  roots.push_back(v);
  roots.push_back(-v);
}

std::vector<QVector> icosahedralRoots3() {
  // (+-1, 0, 0) in all positions, and all sign patterns of the cyclic
  // permutations of (1, phi, phi - 1) / 2.
  std::vector<QVector> roots;
  for (int i = 0; i < 3; ++i) addPair(roots, unitVec(3, i));
  const QSqrt5 entries[3] = {half(), QSqrt5::phi() * half(),
                             (QSqrt5::phi() - QSqrt5(1)) * half()};
  const int cyc[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (const auto& p : cyc)
    for (int s0 : {1, -1})
      for (int s1 : {1, -1})
        for (int s2 : {1, -1}) {
          QVector v(3);
          v[p[0]] = QSqrt5(s0) * entries[0];
          v[p[1]] = QSqrt5(s1) * entries[1];
          v[p[2]] = QSqrt5(s2) * entries[2];
          roots.push_back(v);
        }
  return roots;
}

std::vector<QVector> h4Roots() {
  std::vector<QVector> roots;
  for (int i = 0; i < 4; ++i) addPair(roots, unitVec(4, i));
  for (int s0 : {1, -1})
    for (int s1 : {1, -1})
      for (int s2 : {1, -1})
        for (int s3 : {1, -1}) {
          QVector v(4);
          v[0] = QSqrt5(s0) * half();
          v[1] = QSqrt5(s1) * half();
          v[2] = QSqrt5(s2) * half();
          v[3] = QSqrt5(s3) * half();
          roots.push_back(v);
        }
  // Even permutations of (0, 1, phi, phi - 1)/2 with free signs on the
  // nonzero slots.
  const QSqrt5 entries[4] = {QSqrt5(0), half(), QSqrt5::phi() * half(),
                             (QSqrt5::phi() - QSqrt5(1)) * half()};
  int perm[4] = {0, 1, 2, 3};
  std::set<QVector, QVectorLexLess> seen;
  do {
    // parity of perm
    int inv = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (perm[i] > perm[j]) ++inv;
    if (inv % 2) continue;
    for (int s1 : {1, -1})
      for (int s2 : {1, -1})
        for (int s3 : {1, -1}) {
          const int sign[4] = {1, s1, s2, s3};
          QVector v(4);
          for (int i = 0; i < 4; ++i) v[i] = QSqrt5(sign[perm[i]]) * entries[perm[i]];
          if (seen.insert(v).second) roots.push_back(v);
        }
  } while (std::next_permutation(perm, perm + 4));
  return roots;
}

std::vector<QVector> e8Roots() {
  std::vector<QVector> roots;
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) {
      QVector v(8, QSqrt5(0));
      v[i] = QSqrt5(1);
      v[j] = QSqrt5(1);
      addPair(roots, v);
      v[j] = QSqrt5(-1);
      addPair(roots, v);
    }
  for (int mask = 0; mask < 256; ++mask) {
    if (__builtin_popcount(mask) % 2) continue;  // even number of minus signs
    QVector v(8);
    for (int i = 0; i < 8; ++i) v[i] = (mask >> i & 1) ? -half() : half();
    roots.push_back(v);
  }
  return roots;
}

std::vector<QVector> e8SimpleRoots() {
  std::vector<QVector> s;
  QVector a1(8, -half());
  a1[0] = half();
  a1[7] = half();
  s.push_back(a1);
  QVector a2(8, QSqrt5(0));
  a2[0] = QSqrt5(1);
  a2[1] = QSqrt5(1);
  s.push_back(a2);
  for (int i = 0; i < 6; ++i) {
    QVector v(8, QSqrt5(0));
    v[i] = QSqrt5(-1);
    v[i + 1] = QSqrt5(1);
    s.push_back(v);
  }
  return s;  // Bourbaki order: alpha_1 .. alpha_8
}

bool inSpan(const std::vector<QVector>& rref, const QVector& v) {
  QVector r = v;
  const int width = static_cast<int>(v.size());
  for (const auto& row : rref) {
    int c = 0;
    while (c < width && row[c].isZero()) ++c;
    if (c == width) continue;
    if (!r[c].isZero()) {
      QSqrt5 f = r[c];
      for (int j = c; j < width; ++j) r[j] -= f * row[j];
    }
  }
  return std::all_of(r.begin(), r.end(), [](const QSqrt5& x) { return x.isZero(); });
}

// Simple roots of the rho-positive system: exactly the positive roots
// whose reflection permutes the remaining positive roots (inversion set of
// size one). This works for the non-crystallographic types as well, where
// "not a sum of two positive roots" fails to characterize simplicity.
std::vector<QVector> simpleOfPositiveSystem(const std::vector<QVector>& roots,
                                            const std::vector<int>& positiveIdx) {
  std::set<QVector, QVectorLexLess> pos;
  for (int i : positiveIdx) pos.insert(roots[i]);
  std::vector<QVector> simple;
  for (const QVector& a : pos) {
    QMatrix ref = reflectionMatrix(a);
    int inversions = 0;
    for (const QVector& b : pos)
      if (!pos.count(ref.apply(b))) ++inversions;
    if (inversions == 1) simple.push_back(a);  // only a itself flips sign
  }
  return simple;
}

int bondLabel(const QVector& x, const QVector& y) {
  QSqrt5 num = dot(x, y) * dot(x, y);
  QSqrt5 den = dot(x, x) * dot(y, y);
  QSqrt5 r = num / den;
  if (r == QSqrt5(0)) return 2;
  if (r == QSqrt5(Rational(1, 4))) return 3;
  if (r == QSqrt5(Rational(1, 2))) return 4;
  if (r == QSqrt5(Rational(3, 8), Rational(1, 8))) return 5;
  if (r == QSqrt5(Rational(3, 4))) return 6;
  throw Error("unrecognized bond angle between roots");
}

// Orders a computed simple system of an H-type chain so that the 5-bond sits
// at the front: nodes 0-1 carry label 5, the rest label 3.
std::vector<QVector> orderHChain(std::vector<QVector> simple) {
  const int n = static_cast<int>(simple.size());
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (bondLabel(simple[i], simple[j]) > 2) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
  int start = -1;
  for (int i = 0; i < n; ++i)
    if (adj[i].size() == 1 && bondLabel(simple[i], simple[adj[i][0]]) == 5) start = i;
  if (start < 0) throw Error("H-type simple system: no 5-bond endpoint");
  std::vector<QVector> ordered;
  std::vector<bool> used(n, false);
  int cur = start;
  for (int step = 0; step < n; ++step) {
    ordered.push_back(simple[cur]);
    used[cur] = true;
    int next = -1;
    for (int j : adj[cur])
      if (!used[j]) next = j;
    if (next < 0 && step + 1 < n) throw Error("H-type simple system is not a chain");
    cur = next;
  }
  return ordered;
}

RootSystem buildRootSystem(const GroupDescriptor& g) {
  RootSystem rs;
  rs.dim = g.ambientDim;
  std::vector<QVector> simple;
  switch (g.family) {
    case Family::A: {
      const int n = g.param + 1;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          QVector v(n, QSqrt5(0));
          v[i] = QSqrt5(1);
          v[j] = QSqrt5(-1);
          rs.roots.push_back(v);
        }
      for (int i = 0; i + 1 < n; ++i) {
        QVector v(n, QSqrt5(0));
        v[i] = QSqrt5(1);
        v[i + 1] = QSqrt5(-1);
        simple.push_back(v);
      }
      break;
    }
    case Family::B: {
      const int n = g.param;
      for (int i = 0; i < n; ++i) addPair(rs.roots, unitVec(n, i));
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          QVector v(n, QSqrt5(0));
          v[i] = QSqrt5(1);
          v[j] = QSqrt5(1);
          addPair(rs.roots, v);
          v[j] = QSqrt5(-1);
          addPair(rs.roots, v);
        }
      for (int i = 0; i + 1 < n; ++i) {
        QVector v(n, QSqrt5(0));
        v[i] = QSqrt5(1);
        v[i + 1] = QSqrt5(-1);
        simple.push_back(v);
      }
      simple.push_back(unitVec(n, n - 1));
      break;
    }
    case Family::D: {
      const int n = g.param;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          QVector v(n, QSqrt5(0));
          v[i] = QSqrt5(1);
          v[j] = QSqrt5(1);
          addPair(rs.roots, v);
          v[j] = QSqrt5(-1);
          addPair(rs.roots, v);
        }
      for (int i = 0; i + 1 < n; ++i) {
        QVector v(n, QSqrt5(0));
        v[i] = QSqrt5(1);
        v[i + 1] = QSqrt5(-1);
        simple.push_back(v);
      }
      QVector v(n, QSqrt5(0));
      v[n - 2] = QSqrt5(1);
      v[n - 1] = QSqrt5(1);
      simple.push_back(v);
      break;
    }
    case Family::F4: {
      for (int i = 0; i < 4; ++i) addPair(rs.roots, unitVec(4, i));
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
          QVector v(4, QSqrt5(0));
          v[i] = QSqrt5(1);
          v[j] = QSqrt5(1);
          addPair(rs.roots, v);
          v[j] = QSqrt5(-1);
          addPair(rs.roots, v);
        }
      for (int mask = 0; mask < 16; ++mask) {
        QVector v(4);
        for (int i = 0; i < 4; ++i) v[i] = (mask >> i & 1) ? -half() : half();
        rs.roots.push_back(v);
      }
      simple.resize(4, QVector(4, QSqrt5(0)));
      simple[0][1] = QSqrt5(1);
      simple[0][2] = QSqrt5(-1);
      simple[1][2] = QSqrt5(1);
      simple[1][3] = QSqrt5(-1);
      simple[2][3] = QSqrt5(1);
      simple[3] = {half(), -half(), -half(), -half()};
      break;
    }
    case Family::H3: {
      rs.roots = icosahedralRoots3();
      simple = orderHChain(simpleOfPositiveSystem(rs.roots, [&] {
        std::vector<int> pos;
        for (std::size_t i = 0; i < rs.roots.size(); ++i)
          if (rhoPairing(rs.roots[i]).sign() > 0) pos.push_back(static_cast<int>(i));
        return pos;
      }()));
      break;
    }
    case Family::H4: {
      rs.roots = h4Roots();
      simple = orderHChain(simpleOfPositiveSystem(rs.roots, [&] {
        std::vector<int> pos;
        for (std::size_t i = 0; i < rs.roots.size(); ++i)
          if (rhoPairing(rs.roots[i]).sign() > 0) pos.push_back(static_cast<int>(i));
        return pos;
      }()));
      break;
    }
    case Family::E6:
    case Family::E7:
    case Family::E8: {
      std::vector<QVector> all = e8Roots();
      std::vector<QVector> s8 = e8SimpleRoots();
      int keep = g.family == Family::E6 ? 6 : (g.family == Family::E7 ? 7 : 8);
      simple.assign(s8.begin(), s8.begin() + keep);
      if (keep == 8) {
        rs.roots = std::move(all);
      } else {
        auto rref = canonicalSpan(simple);
        for (const auto& r : all)
          if (inSpan(rref, r)) rs.roots.push_back(r);
      }
      break;
    }
    case Family::I2: {
      if (g.param == 3) {
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            QVector v(3, QSqrt5(0));
            v[i] = QSqrt5(1);
            v[j] = QSqrt5(-1);
            rs.roots.push_back(v);
          }
        simple = {{QSqrt5(1), QSqrt5(-1), QSqrt5(0)}, {QSqrt5(0), QSqrt5(1), QSqrt5(-1)}};
      } else if (g.param == 4) {
        for (int i = 0; i < 2; ++i) addPair(rs.roots, unitVec(2, i));
        QVector v(2, QSqrt5(1));
        addPair(rs.roots, v);
        v[1] = QSqrt5(-1);
        addPair(rs.roots, v);
        simple = {{QSqrt5(1), QSqrt5(-1)}, {QSqrt5(0), QSqrt5(1)}};
      } else if (g.param == 6) {
        for (int i = 0; i < 3; ++i)
          for (int j = i + 1; j < 3; ++j) {
            QVector v(3, QSqrt5(0));
            v[i] = QSqrt5(1);
            v[j] = QSqrt5(-1);
            addPair(rs.roots, v);
          }
        for (int i = 0; i < 3; ++i) {
          QVector v(3, QSqrt5(-1));
          v[i] = QSqrt5(2);
          addPair(rs.roots, v);
        }
        simple = {{QSqrt5(1), QSqrt5(-1), QSqrt5(0)}, {QSqrt5(-2), QSqrt5(1), QSqrt5(1)}};
      } else if (g.param == 5) {
        // Rank-2 subsystem of H3 spanned by its 5-bond simple pair.
        GroupDescriptor h3 = catalog(Family::H3);
        RootSystem h = buildRootSystem(h3);
        std::vector<QVector> pair = {h.roots[h.simpleIdx[0]], h.roots[h.simpleIdx[1]]};
        auto rref = canonicalSpan(pair);
        for (const auto& r : h.roots)
          if (inSpan(rref, r)) rs.roots.push_back(r);
        simple = {h.roots[h.simpleIdx[0]], h.roots[h.simpleIdx[1]]};
      } else {
        throw Error("I2(" + std::to_string(g.param) +
                    ") has no exact realization here (m in {3,4,5,6} only)");
      }
      break;
    }
  }
  finishRootSystem(rs, simple);
  return rs;
}

}  // namespace

const RootSystem& rootSystem(const GroupDescriptor& g) {
  if (!g.hasRealization())
    throw Error(g.name() + " has no exact realization");
  static std::map<std::string, RootSystem> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(g.name());
  if (it == cache.end()) it = cache.emplace(g.name(), buildRootSystem(g)).first;
  return it->second;
}

std::vector<QMatrix> simpleReflections(const GroupDescriptor& g) {
  const RootSystem& rs = rootSystem(g);
  std::vector<QMatrix> gens;
  gens.reserve(rs.simpleIdx.size());
  for (int idx : rs.simpleIdx) gens.push_back(reflectionMatrix(rs.roots[idx]));
  return gens;
}

std::vector<QMatrix> generateGroup(const GroupDescriptor& g, std::uint64_t orderCap) {
  if (g.order > orderCap)
    throw Error(g.name() + ": group order " + std::to_string(g.order) +
                " exceeds the generation cap " + std::to_string(orderCap));
  auto gens = simpleReflections(g);
  std::set<QMatrix, QMatrixLexLess> seen;
  std::deque<QMatrix> queue;
  std::vector<QMatrix> elems;
  QMatrix id = QMatrix::identity(g.ambientDim);
  seen.insert(id);
  queue.push_back(id);
  while (!queue.empty()) {
    QMatrix cur = std::move(queue.front());
    queue.pop_front();
    elems.push_back(cur);
    for (const auto& s : gens) {
      QMatrix next = cur * s;
      if (seen.insert(next).second) queue.push_back(next);
    }
    if (seen.size() > orderCap) throw Error("group generation exceeded the order cap");
  }
  return elems;
}

std::vector<QVector> vectorOrbit(const GroupDescriptor& g, const QVector& v) {
  auto gens = simpleReflections(g);
  std::set<QVector, QVectorLexLess> seen;
  std::deque<QVector> queue;
  std::vector<QVector> orbit;
  seen.insert(v);
  queue.push_back(v);
  while (!queue.empty()) {
    QVector cur = std::move(queue.front());
    queue.pop_front();
    orbit.push_back(cur);
    for (const auto& s : gens) {
      QVector next = s.apply(cur);
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return orbit;
}

namespace {

Polynomial expandLinearPower(const QVector& w, int d) {
  const int n = static_cast<int>(w.size());
  std::vector<std::vector<QSqrt5>> pw(n);
  for (int i = 0; i < n; ++i) {
    pw[i].resize(d + 1);
    pw[i][0] = QSqrt5(1);
    for (int k = 1; k <= d; ++k) pw[i][k] = pw[i][k - 1] * w[i];
  }
  std::vector<Rational> fact(d + 1);
  fact[0] = 1;
  for (int k = 1; k <= d; ++k) fact[k] = fact[k - 1] * k;

  Polynomial out(n);
  Exponents e(n, 0);
  std::function<void(int, int, QSqrt5, Rational)> rec =
      [&](int var, int rem, QSqrt5 prod, Rational denom) {
        if (var == n - 1) {
          if (w[var].isZero() && rem > 0) return;
          e[var] = rem;
          QSqrt5 coef = prod * pw[var][rem];
          Rational mult = fact[d] / (denom * fact[rem]);
          out.addTerm(e, coef * QSqrt5(mult));
          e[var] = 0;
          return;
        }
        const int hi = w[var].isZero() ? 0 : rem;
        for (int k = 0; k <= hi; ++k) {
          e[var] = k;
          rec(var + 1, rem - k, prod * pw[var][k], denom * fact[k]);
          e[var] = 0;
        }
      };
  rec(0, d, QSqrt5(1), Rational(1));
  return out;
}

}  // namespace

Polynomial applyMatrix(const Polynomial& p, const QMatrix& m) {
  return substituteLinear(p, m.rows());
}

Polynomial reynoldsLinearPower(const GroupDescriptor& g, const QVector& v, int d) {
  auto orbit = vectorOrbit(g, v);
  Polynomial acc(g.ambientDim);
  for (const auto& w : orbit) acc += expandLinearPower(w, d);
  acc *= QSqrt5(Rational(1, static_cast<long>(orbit.size())));
  return acc;
}

Polynomial reynolds(const GroupDescriptor& g, const Polynomial& p) {
  if (!g.hasRealization()) throw Error(g.name() + " has no exact realization");
  if (p.nvars() != g.ambientDim) throw Error("reynolds: arity mismatch");
  if (g.order > 1000000) throw Error(g.name() + ": order cap exceeded for reynolds");

  Polynomial result(g.ambientDim);
  Polynomial rest(g.ambientDim);
  for (const auto& [e, c] : p.terms()) {
    int support = 0, var = -1, deg = 0;
    for (int i = 0; i < p.nvars(); ++i)
      if (e[i]) {
        ++support;
        var = i;
        deg = e[i];
      }
    if (support == 0) {
      result.addTerm(e, c);
    } else if (support == 1) {
      result += reynoldsLinearPower(g, unitVec(g.ambientDim, var), deg) * c;
    } else {
      rest.addTerm(e, c);
    }
  }
  if (!rest.isZero()) {
    // Orbit of the polynomial itself; the group average equals the orbit
    // average because g -> g.q is |Stab(q)|-to-1.
    auto gens = simpleReflections(g);
    std::vector<std::vector<std::vector<QSqrt5>>> genRows;
    genRows.reserve(gens.size());
    for (const auto& s : gens) genRows.push_back(s.rows());
    std::set<Polynomial, PolynomialLess> seen;
    std::deque<Polynomial> queue;
    Polynomial sum(g.ambientDim);
    seen.insert(rest);
    queue.push_back(rest);
    while (!queue.empty()) {
      Polynomial cur = std::move(queue.front());
      queue.pop_front();
      sum += cur;
      for (const auto& rows : genRows) {
        Polynomial next = substituteLinear(cur, rows);
        if (seen.insert(next).second) queue.push_back(next);
      }
      if (seen.size() > 1000000) throw Error("polynomial orbit exceeded the order cap");
    }
    sum *= QSqrt5(Rational(1, static_cast<long>(seen.size())));
    result += sum;
  }
  return result;
}

DynkinDiagram diagramFromRoots(const RootSystem& rs) {
  DynkinDiagram dg;
  dg.nodes = static_cast<int>(rs.simpleIdx.size());
  for (int i = 0; i < dg.nodes; ++i)
    for (int j = i + 1; j < dg.nodes; ++j) {
      int m = bondLabel(rs.roots[rs.simpleIdx[i]], rs.roots[rs.simpleIdx[j]]);
      if (m > 2) dg.edges.push_back({i, j, m});
    }
  return dg;
}

}  // namespace strata
