#include "strata/parabolic.hpp"

#include <algorithm>
#include <map>

namespace strata {

namespace {

struct ComponentShape {
  std::vector<int> nodes;                     // ambient indices, ascending
  std::vector<std::array<int, 3>> edges;      // local endpoints into nodes
};

GroupDescriptor classifyComponent(const ComponentShape& c) {
  const int k = static_cast<int>(c.nodes.size());
  if (k == 1) return catalog(Family::A, 1);

  std::vector<int> degree(k, 0);
  int maxLabel = 3;
  for (const auto& e : c.edges) {
    ++degree[e[0]];
    ++degree[e[1]];
    maxLabel = std::max(maxLabel, e[2]);
  }
  const bool isPath = *std::max_element(degree.begin(), degree.end()) <= 2 &&
                      static_cast<int>(c.edges.size()) == k - 1;

  auto fail = [&] { throw Error("unclassifiable subdiagram component"); };

  if (maxLabel == 3) {
    if (isPath) return catalog(Family::A, k);
    // One branch node of degree 3; classify by sorted arm lengths.
    if (static_cast<int>(c.edges.size()) != k - 1) fail();
    int branch = -1;
    for (int i = 0; i < k; ++i) {
      if (degree[i] > 3) fail();
      if (degree[i] == 3) {
        if (branch >= 0) fail();
        branch = i;
      }
    }
    if (branch < 0) fail();
    std::vector<std::vector<int>> adj(k);
    for (const auto& e : c.edges) {
      adj[e[0]].push_back(e[1]);
      adj[e[1]].push_back(e[0]);
    }
    std::vector<int> arms;
    for (int start : adj[branch]) {
      int len = 1, prev = branch, cur = start;
      for (;;) {
        int next = -1;
        for (int nb : adj[cur])
          if (nb != prev) next = nb;
        if (next < 0) break;
        prev = cur;
        cur = next;
        ++len;
      }
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms.size() != 3) fail();
    if (arms[0] == 1 && arms[1] == 1) return catalog(Family::D, k);
    if (arms[0] == 1 && arms[1] == 2 && arms[2] == 2) return catalog(Family::E6);
    if (arms[0] == 1 && arms[1] == 2 && arms[2] == 3) return catalog(Family::E7);
    if (arms[0] == 1 && arms[1] == 2 && arms[2] == 4) return catalog(Family::E8);
    fail();
  }

  if (!isPath) fail();
  if (k == 2) {
    if (maxLabel == 4) return catalog(Family::B, 2);
    return catalog(Family::I2, maxLabel);
  }

  // Order the path and locate the special bond.
  std::vector<std::vector<std::pair<int, int>>> adj(k);
  for (const auto& e : c.edges) {
    adj[e[0]].push_back({e[1], e[2]});
    adj[e[1]].push_back({e[0], e[2]});
  }
  int end = -1;
  for (int i = 0; i < k; ++i)
    if (adj[i].size() == 1) end = i;
  std::vector<int> labels;  // along the path
  {
    int prev = -1, cur = end;
    while (static_cast<int>(labels.size()) < k - 1) {
      int next = -1, lab = 0;
      for (auto [nb, l] : adj[cur])
        if (nb != prev) {
          next = nb;
          lab = l;
        }
      labels.push_back(lab);
      prev = cur;
      cur = next;
    }
  }
  int specialPos = -1, specialCount = 0;
  for (int i = 0; i < k - 1; ++i)
    if (labels[i] > 3) {
      specialPos = i;
      ++specialCount;
    }
  if (specialCount != 1) fail();
  const int lab = labels[specialPos];
  const bool terminal = specialPos == 0 || specialPos == k - 2;
  if (lab == 4 && terminal) return catalog(Family::B, k);
  if (lab == 4 && k == 4) return catalog(Family::F4);
  if (lab == 5 && terminal && k == 3) return catalog(Family::H3);
  if (lab == 5 && terminal && k == 4) return catalog(Family::H4);
  fail();
  return {};
}

}  // namespace

std::string SubdiagramDecomposition::str() const {
  if (components.empty()) return "(empty)";
  std::string s;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (i) s += " x ";
    s += components[i].type.name();
  }
  return s;
}

SubdiagramDecomposition classifySubdiagram(const GroupDescriptor& g,
                                           const std::vector<int>& nodes) {
  for (int v : nodes)
    if (v < 0 || v >= g.diagram.nodes) throw Error("subdiagram node out of range");
  std::vector<int> sorted(nodes);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::map<int, int> local;
  for (std::size_t i = 0; i < sorted.size(); ++i) local[sorted[i]] = static_cast<int>(i);
  const int k = static_cast<int>(sorted.size());
  std::vector<std::vector<int>> adj(k);
  std::vector<std::array<int, 3>> edges;
  for (const auto& e : g.diagram.edges) {
    auto iu = local.find(e[0]);
    auto iv = local.find(e[1]);
    if (iu == local.end() || iv == local.end()) continue;
    edges.push_back({iu->second, iv->second, e[2]});
    adj[iu->second].push_back(iv->second);
    adj[iv->second].push_back(iu->second);
  }

  SubdiagramDecomposition dec;
  std::vector<bool> seen(k, false);
  for (int start = 0; start < k; ++start) {
    if (seen[start]) continue;
    std::vector<int> comp{start};
    seen[start] = true;
    for (std::size_t q = 0; q < comp.size(); ++q)
      for (int nb : adj[comp[q]])
        if (!seen[nb]) {
          seen[nb] = true;
          comp.push_back(nb);
        }
    std::sort(comp.begin(), comp.end());
    std::map<int, int> compLocal;
    for (std::size_t i = 0; i < comp.size(); ++i) compLocal[comp[i]] = static_cast<int>(i);
    ComponentShape shape;
    for (int v : comp) shape.nodes.push_back(sorted[v]);
    for (const auto& e : edges)
      if (compLocal.count(e[0]) && compLocal.count(e[1]))
        shape.edges.push_back({compLocal[e[0]], compLocal[e[1]], e[2]});
    dec.components.push_back({classifyComponent(shape), shape.nodes});
  }
  return dec;
}

int topDegree(const SubdiagramDecomposition& dec) {
  int top = 0;
  for (const auto& c : dec.components) top = std::max(top, c.type.topDegree());
  return top;
}

ParnumResult parnum(const GroupDescriptor& g, int d) {
  if (d < 0) throw Error("parnum: d must be nonnegative");
  if (d >= 2 * g.topDegree())
    throw Error("no parabolic certificate: d >= 2*d_n(" + g.name() + ")");
  const int n = g.diagram.nodes;
  // Size-major, then lexicographic on the node list: the first hit is the
  // canonical minimal witness.
  std::vector<std::vector<int>> bySize(n + 1);
  for (int mask = 0; mask < (1 << n); ++mask)
    bySize[__builtin_popcount(static_cast<unsigned>(mask))].push_back(mask);
  for (auto& v : bySize)
    std::sort(v.begin(), v.end(), [n](int x, int y) {
      std::vector<int> lx, ly;
      for (int i = 0; i < n; ++i) {
        if (x >> i & 1) lx.push_back(i);
        if (y >> i & 1) ly.push_back(i);
      }
      return lx < ly;
    });
  for (int size = 1; size <= n; ++size) {
    for (int mask : bySize[size]) {
      std::vector<int> nodes;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) nodes.push_back(i);
      SubdiagramDecomposition dec = classifySubdiagram(g, nodes);
      if (2 * topDegree(dec) > d) return {size - 1, nodes, dec};
    }
  }
  throw Error("no parabolic certificate");  // unreachable given the domain check
}

ParnumResult secparnum(const GroupDescriptor& g, int k) {
  if (k < 1 || k > g.rank) throw Error("secparnum: k out of range");
  const int d = 2 * g.degrees[k - 1];
  if (d >= 2 * g.topDegree()) {
    ParnumResult r;
    r.value = g.rank - 1;
    for (int i = 0; i < g.diagram.nodes; ++i) r.witness.push_back(i);
    r.decomposition = classifySubdiagram(g, r.witness);
    return r;
  }
  return parnum(g, d);
}

// ---------------------------------------------------------------------------
// Published table

namespace {

struct BestConnected {
  int topDegree = 0;
  std::string name;
};

// Best (largest top degree) connected subdiagram of each size.
std::vector<BestConnected> bestConnectedBySize(const GroupDescriptor& g) {
  const int n = g.diagram.nodes;
  std::vector<BestConnected> best(n + 1);
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> nodes;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) nodes.push_back(i);
    SubdiagramDecomposition dec = classifySubdiagram(g, nodes);
    if (dec.components.size() != 1) continue;
    const int size = static_cast<int>(nodes.size());
    const int top = topDegree(dec);
    auto& slot = best[size];
    if (top > slot.topDegree) {
      slot.topDegree = top;
      slot.name = dec.components[0].type.name();
    }
  }
  return best;
}

}  // namespace

ParabolicBound table1(const GroupDescriptor& g) {
  ParabolicBound out;
  out.group = g;
  const int dn = g.topDegree();
  const int dMax = 2 * dn - 1;
  out.parnumByD.assign(dMax + 1, 0);

  auto addRow = [&](int lo, int hi, int value, std::string witness, int wtop) {
    if (lo > hi) return;
    out.rows.push_back({lo, hi, value, std::move(witness), wtop});
    for (int d = lo; d <= hi; ++d) out.parnumByD[d] = value;
  };

  switch (g.family) {
    case Family::A: {
      const int n = g.param + 1;  // number of permuted letters
      for (int v = 0; v < n; ++v)
        addRow(2 * v, std::min(2 * v + 1, dMax), v, "A" + std::to_string(v), v + 1);
      break;
    }
    case Family::B: {
      for (int v = 0; v < g.param; ++v)
        addRow(4 * v, std::min(4 * v + 3, dMax), v, "B" + std::to_string(v + 1),
               2 * (v + 1));
      break;
    }
    case Family::D: {
      for (int v = 1; v < g.param; ++v)
        addRow(4 * (v - 1), std::min(4 * (v - 1) + 3, dMax), v,
               "D" + std::to_string(v + 1), 2 * v);
      out.parnumByD[0] = 1;
      break;
    }
    case Family::I2: {
      addRow(1, dMax, 1, g.name(), g.param);
      out.parnumByD[0] = 1;
      break;
    }
    default: {
      auto best = bestConnectedBySize(g);
      for (int v = 1; v < g.rank; ++v) {
        const int lo = (v == 1) ? 1 : 2 * best[v].topDegree;
        const int hi = 2 * best[v + 1].topDegree - 1;
        addRow(lo, hi, v, best[v + 1].name, best[v + 1].topDegree);
      }
      out.parnumByD[0] = 1;
      break;
    }
  }

  // SecParNum via the published convention. The A row tracks the permutation
  // action on R^n, whose realized degrees include the linear invariant.
  const std::vector<int>& degs =
      (g.family == Family::A) ? g.realizedDegrees : g.degrees;
  for (int k = 1; k <= g.rank; ++k) {
    const int d2 = 2 * degs[k - 1];
    int value;
    if (d2 <= dMax)
      value = out.parnumByD[d2];
    else
      value = (g.family == Family::D) ? g.rank : g.rank - 1;
    out.secByK.push_back(value);
  }
  return out;
}

}  // namespace strata
