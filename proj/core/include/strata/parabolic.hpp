#ifndef STRATA_PARABOLIC_HPP
#define STRATA_PARABOLIC_HPP

#include <string>
#include <vector>

#include "strata/coxeter.hpp"

namespace strata {

struct SubdiagramComponent {
  GroupDescriptor type;
  std::vector<int> nodes;  // ambient diagram nodes, ascending
};

struct SubdiagramDecomposition {
  std::vector<SubdiagramComponent> components;  // ordered by smallest node
  std::string str() const;                      // e.g. "A1 x A2 x A4"
};

/// Classifies the induced subdiagram on the given simple nodes into its
/// irreducible catalog types. Throws on an unclassifiable component.
SubdiagramDecomposition classifySubdiagram(const GroupDescriptor& g,
                                           const std::vector<int>& nodes);

/// Largest Chevalley degree over the components; 0 for the empty diagram.
int topDegree(const SubdiagramDecomposition& dec);

struct ParnumResult {
  int value;                 // min |I| - 1 over qualifying subsets
  std::vector<int> witness;  // the minimal qualifying I, lex tie-break
  SubdiagramDecomposition decomposition;
};

/// Exhaustive subset search for min{|I| - 1 : 2 * topDegree(W_I) > d}.
/// Requires 0 <= d < 2 * topDegree(G); throws "no parabolic certificate"
/// otherwise.
ParnumResult parnum(const GroupDescriptor& g, int d);

/// parnum(g, 2 * d_k). For k = rank the argument leaves the parnum domain;
/// rank - 1 is returned in that case.
ParnumResult secparnum(const GroupDescriptor& g, int k);

struct Table1Row {
  int dLo = 0, dHi = 0;
  int value = 0;
  std::string witness;
  int witnessTopDegree = 0;
};

struct ParabolicBound {
  GroupDescriptor group;
  std::vector<Table1Row> rows;  // the published row blocks
  std::vector<int> parnumByD;   // d = 0 .. 2*d_n(G)-1, published convention
  std::vector<int> secByK;      // index k-1, k = 1 .. rank
};

/// Reproduces the published parabolic-bound table. The infinite families
/// follow their closed forms; the exceptional blocks are derived from the
/// best connected subdiagram of each size. Note this differs from the
/// literal exhaustive minimum at small d (see parnum).
ParabolicBound table1(const GroupDescriptor& g);

}  // namespace strata

#endif  // STRATA_PARABOLIC_HPP
