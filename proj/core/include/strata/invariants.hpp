#ifndef STRATA_INVARIANTS_HPP
#define STRATA_INVARIANTS_HPP

#include <string>
#include <vector>

#include "strata/coxeter.hpp"
#include "strata/polynomial.hpp"

namespace strata {

/// s_k = x_1^k + ... + x_n^k.
Polynomial powerSum(int nvars, int k);
/// e_k = sum of all squarefree degree-k monomials.
Polynomial elementarySymmetric(int nvars, int k);

enum class BasisVariant { Auto, PowerSum, Elementary, PaperD, F4, H4Surrogate };

struct BasicInvariantSet {
  GroupDescriptor group;
  std::vector<Polynomial> polys;  // ascending degree
  std::vector<int> degreeTies;    // 1-based k with deg(pi_{k+1}) == deg(pi_k)
  std::string variantName;

  int count() const { return static_cast<int>(polys.size()); }
  int nvars() const { return polys.empty() ? 0 : polys[0].nvars(); }
  std::vector<int> degrees() const;
};

/// Basic invariants per family:
///   A:  power sums s_1..s_n on R^n (or elementary symmetric polynomials),
///   B:  s_{2i},
///   D:  s_2, s_4, ..., with e_n in the middle slot,
///   F4: s_2 and the explicit degree-6 invariant normalized to take the
///       value 1 at the first unit vector, plus Reynolds images in degrees
///       8 and 12,
///   H3/I2: the squared norm of the essential part plus Reynolds images,
///   H4: s_2 and the Reynolds surrogate in degree 12 (plus degrees 20, 30).
BasicInvariantSet basicInvariants(const GroupDescriptor& g,
                                  BasisVariant variant = BasisVariant::Auto);

/// Expresses an S_n-symmetric polynomial exactly in power-sum coordinates:
/// the result F satisfies compose(F, [s_1..s_n]) == sym. Throws when the
/// input is not symmetric.
Polynomial newtonRewrite(const Polynomial& sym, int n);

struct SparsityReport {
  int k = 0;
  bool basisIndependent = false;  // d_{k+1} > d_k
  bool tieAmbiguous = false;
  std::string note;
};

/// Reports whether "the first k basics" is a basis-independent notion for
/// this group, flagging the tied-degree cases (notably D_n with n even,
/// k = n/2, where the middle invariant mixes s_n and e_n).
SparsityReport sparsityCertificate(const BasicInvariantSet& basis, int k);

/// Sum over pairs of (x_i + x_j)^6 + (x_i - x_j)^6 in four variables.
Polynomial f4SecondInvariantRawSum();
/// The same invariant scaled so its value at (1,0,0,0) is 1.
Polynomial f4SecondInvariant();
/// The degree-12 surrogate for the second basic invariant: reynolds(x_1^12).
Polynomial h4SurrogateInvariant();

}  // namespace strata

#endif  // STRATA_INVARIANTS_HPP
