#ifndef STRATA_ARRANGEMENT_HPP
#define STRATA_ARRANGEMENT_HPP

#include <span>
#include <string>
#include <vector>

#include "strata/coxeter.hpp"
#include "strata/polynomial.hpp"
#include "strata/qlinalg.hpp"

namespace strata {

/// A flat of the reflection arrangement, i.e. an intersection of mirror
/// hyperplanes. Flats are intersected with the span of the roots, so `dim`
/// counts essential dimensions; for essential groups that is the ambient
/// dimension of the subspace.
struct Flat {
  int dim = 0;
  std::vector<int> normalRoots;      // positive roots vanishing on the flat
  std::vector<QVector> normalBasis;  // canonical (RREF) basis of the normal space
  std::vector<QVector> basis;        // canonical basis of the flat itself
};

/// One flat per +- root pair (dim = rank - 1).
std::vector<Flat> hyperplanes(const GroupDescriptor& g);

/// All distinct flats of the given essential dimension, by closing
/// hyperplane intersections with canonical dedup. dim = rank yields the
/// single full flat with empty normal set.
std::vector<Flat> flats(const GroupDescriptor& g, int dim);

/// One flat per orbit of the group action, canonical representative.
std::vector<Flat> flatOrbitRepresentatives(const GroupDescriptor& g, int dim);

/// Ambient stratum dimension: n - rank{alpha in Phi+ : <alpha, p> ~ 0}.
/// The vanishing test is relative: |<a,p>| <= tol * |a| * |p|.
int stratumDim(const GroupDescriptor& g, std::span<const double> p, double tol = 1e-9);
int stratumDimExact(const GroupDescriptor& g, const std::vector<Rational>& p);
int stratumDimExact(const GroupDescriptor& g, const QVector& p);

/// Same computation against an explicit list of positive normals.
int stratumDimForRoots(const std::vector<QVector>& positiveRoots,
                       std::span<const double> p, double tol = 1e-9);

/// Finite parameterization of one family of strata points for the infinite
/// families: j blocks of equal coordinates (multiplicities), optional zero
/// coordinates, and a sign bit for the last block (D only).
struct StratumPattern {
  Family family = Family::A;
  int n = 0;
  int freeVars = 0;
  std::vector<int> multiplicities;  // descending, sums to n - zeros
  int zeros = 0;
  int signBit = 1;

  std::string str() const;
};

/// Complete duplicate-free pattern list covering the k-stratum up to the
/// group action. Requires 1 <= k <= n.
std::vector<StratumPattern> patterns(Family family, int n, int k);

/// Realizes a pattern: block value t_i repeated multiplicity_i times, zeros
/// appended, sign bit applied to the last coordinate of the final block.
std::vector<double> embed(const StratumPattern& pat, std::span<const double> t);
std::vector<Rational> embedExact(const StratumPattern& pat,
                                 const std::vector<Rational>& t);

/// Rank of the (k+1) x n Jacobian of basics[0..k] at p.
int jacobianRank(const std::vector<Polynomial>& basics, std::span<const double> p,
                 int k, double tol = 1e-9);
int jacobianRankExact(const std::vector<Polynomial>& basics,
                      const std::vector<Rational>& p, int k);

}  // namespace strata

#endif  // STRATA_ARRANGEMENT_HPP
