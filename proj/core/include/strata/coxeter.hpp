#ifndef STRATA_COXETER_HPP
#define STRATA_COXETER_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "strata/polynomial.hpp"
#include "strata/qlinalg.hpp"

namespace strata {

enum class Family { A, B, D, I2, H3, H4, F4, E6, E7, E8 };

std::string familyName(Family f);

struct DynkinDiagram {
  int nodes = 0;
  std::vector<std::array<int, 3>> edges;  // {u, v, label} with u < v, 0-based

  int label(int u, int v) const;  // 2 when not adjacent
  std::vector<std::vector<std::pair<int, int>>> adjacency() const;
};

struct GroupDescriptor {
  Family family = Family::A;
  int param = 0;  // A_m: m, B_n/D_n: n, I2(m): m, exceptional types: 0
  int rank = 0;   // essential rank
  int ambientDim = 0;  // dimension of the exact realization; 0 if none
  bool essential = false;
  std::vector<int> degrees;          // Chevalley degrees, ascending
  std::vector<int> realizedDegrees;  // degrees of the realized action, incl.
                                     // degree-1 invariants of fixed directions
  std::uint64_t order = 0;
  DynkinDiagram diagram;

  bool hasRealization() const { return ambientDim > 0; }
  int fixedDim() const { return ambientDim - rank; }
  int topDegree() const { return degrees.empty() ? 0 : degrees.back(); }
  std::string name() const;
};

/// Catalog lookup. param: A_m needs m >= 1, B_n n >= 2, D_n n >= 2,
/// I2(m) m >= 3; exceptional families ignore param.
GroupDescriptor catalog(Family f, int param = 0);

/// Parses `A5`, `B4`, `D6`, `I2(7)`, `H3`, `H4`, `F4`, `E6`, `E7`, `E8`.
GroupDescriptor parseGroup(std::string_view text);

struct RootSystem {
  int dim = 0;
  std::vector<QVector> roots;     // closed under negation
  std::vector<int> simpleIdx;     // a simple system, in diagram node order
  std::vector<int> positiveIdx;   // one representative per +- pair

  const QVector& simpleRoot(int node) const { return roots[simpleIdx[node]]; }
};

/// Exact root data. Throws for I2(m) with m outside {3,4,5,6} and any other
/// entry without a Q(sqrt 5) realization.
const RootSystem& rootSystem(const GroupDescriptor& g);

std::vector<QMatrix> simpleReflections(const GroupDescriptor& g);

/// Breadth-first closure of the simple reflections; exact dedup.
/// Throws when the catalog order exceeds the cap.
std::vector<QMatrix> generateGroup(const GroupDescriptor& g,
                                   std::uint64_t orderCap = 1000000);

/// Orbit of a vector under the group, closed via the simple reflections.
std::vector<QVector> vectorOrbit(const GroupDescriptor& g, const QVector& v);

/// Group averaging projector onto the invariant ring, exact.
/// Terms supported on a single variable are averaged through vector orbits;
/// the remainder goes through the orbit of the polynomial itself.
Polynomial reynolds(const GroupDescriptor& g, const Polynomial& p);

/// (1/|orbit(v)|) * sum over the orbit of <w, x>^d — the Reynolds image of
/// any polynomial <v, x>^d, expanded exactly.
Polynomial reynoldsLinearPower(const GroupDescriptor& g, const QVector& v, int d);

/// Applies one orthogonal matrix to a polynomial: returns p(M x).
Polynomial applyMatrix(const Polynomial& p, const QMatrix& m);

/// Bond labels recomputed from root geometry; used to validate catalog data.
DynkinDiagram diagramFromRoots(const RootSystem& rs);

}  // namespace strata

#endif  // STRATA_COXETER_HPP
