#ifndef STRATA_REDUCE_HPP
#define STRATA_REDUCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "strata/arrangement.hpp"
#include "strata/invariants.hpp"

namespace strata {

/// An invariant objective written in the first k basic invariants:
/// f = F(pi_1, ..., pi_k).
struct SparseObjective {
  Polynomial F;  // polynomial in y_1..y_k
  int k = 0;
  BasicInvariantSet basis;
};

SparseObjective makeSparseObjective(const GroupDescriptor& g, const Polynomial& F,
                                    BasisVariant variant = BasisVariant::Auto);

enum class Sense { Min, Max, Feasibility };

struct SphereConstraint {
  double radius = 1.0;
};
struct PrincipalConstraint {
  std::vector<double> targets;  // values for pi_1..pi_j
};
using Constraint = std::variant<std::monostate, SphereConstraint, PrincipalConstraint>;

struct Problem {
  GroupDescriptor group;
  SparseObjective objective;
  Constraint constraint;
  Sense sense = Sense::Min;
};

enum class SolveStatus { Solved, InfeasibleNumerically, UnboundedSuspected };

std::string to_string(SolveStatus s);

struct Solution {
  SolveStatus status = SolveStatus::Solved;
  double value = 0.0;
  std::vector<double> witness;  // ambient coordinates
  std::string patternDescription;
  int witnessStratumDim = -1;
  double residual = 0.0;  // constraint violation, sum of squares
  int kEffective = 0;
  std::vector<std::string> warnings;
};

struct SolverOptions {
  std::uint64_t seed = 0;
  int startsPerDim = 16;
  int maxIter = 600;
  double tolFeasibility = 1e-10;  // residual threshold for feasibility
  double tolRank = 1e-9;          // stratum membership tolerance
  double tolValue = 1e-6;         // value agreement tolerance
  int jobs = 1;
  bool assumeCoercive = false;
};

/// Reduces the problem to the k-dimensional strata: pattern families for
/// A/B/D, flats for I2/H3/F4/H4 (H4 carries a conjecture warning). The
/// effective sparsity includes every invariant fixed by the constraint.
Solution solveOnStrata(const Problem& p, const SolverOptions& opt = {});

/// Full-dimensional multistart descent with no strata restriction; the
/// independent verification oracle. Requires ambient dimension <= 8.
Solution bruteOracle(const Problem& p, const SolverOptions& opt = {});

/// Least-squares feasibility for the principal variety pi_i = v_i,
/// i = 1..|targets|. "InfeasibleNumerically" records that no witness was
/// found within the budget, not a proof of emptiness.
Solution nonemptyPrincipal(const GroupDescriptor& g, const BasicInvariantSet& basis,
                           const std::vector<double>& targets,
                           const SolverOptions& opt = {});

struct HyperplaneRestriction {
  Polynomial restricted;        // in n-1 variables
  std::vector<QVector> frame;   // columns spanning the hyperplane
  QVector normal;               // representative root of the orbit
  std::string orbitLabel;
};

/// One restricted problem per orbit of reflection hyperplanes. Requires the
/// objective to be at most linear in some basic invariant (checked in
/// y-coordinates).
std::vector<HyperplaneRestriction> restrictToHyperplanes(const SparseObjective& obj);

/// Numeric search for a real zero of the restricted polynomial.
bool restrictionHasZero(const HyperplaneRestriction& r, const SolverOptions& opt = {},
                        std::vector<double>* witnessAmbient = nullptr);

/// Numeric search for a real zero of an arbitrary polynomial (the oracle
/// counterpart of restrictionHasZero).
bool polynomialHasRealZero(const Polynomial& f, const SolverOptions& opt = {},
                           std::vector<double>* witness = nullptr);

struct NonnegReport {
  bool nonneg = false;
  double minValue = 0.0;
  std::vector<double> witness;
  std::string patternDescription;
};

/// Minimizes f over the strata intersected with {g_i >= 0} and the given
/// constraint; verdict nonneg iff the minimum clears -1e-8.
NonnegReport checkNonneg(const SparseObjective& f,
                         const std::vector<Polynomial>& inequalitiesInY,
                         const Constraint& constraint, const SolverOptions& opt = {});

struct F4Report {
  bool identityRawSum = false;    // 6 * pi_2 equals the pair sum form
  bool identitySquares = false;   // pi_2(x) equals g(x_1^2, ..., x_4^2)
  double sphereMin = 0.0, sphereMax = 0.0;
  std::vector<double> minWitness, maxWitness;
  int minStratumDim = -1, maxStratumDim = -1;
  std::vector<double> interiorCriticalValues;  // distinct, ascending
  int interiorCriticalPoints = 0;
  double boundaryMin = 0.0, boundaryMax = 0.0;
};

/// Reproduces the full F4 chain: the algebraic identities, the bivariate
/// simplex reduction with its interior critical values, and the sphere
/// extrema of pi_2 with stratum membership of the witnesses.
F4Report f4Certificate(const SolverOptions& opt = {});

struct H4Report {
  double minValue = 0.0, maxValue = 0.0;
  std::vector<double> minWitness, maxWitness;
  int minStratumDim = -1, maxStratumDim = -1;
  std::string minMatchedOrbit, maxMatchedOrbit;  // "(1,0,0,0)" or "(1,1,0,0)/sqrt2"
  double minOrbitDistance = 0.0, maxOrbitDistance = 0.0;
  double invarianceDeviation = 0.0;
};

/// Optimizes the Reynolds surrogate over the unit sphere by dense
/// multistart and locates the extremizers inside the H4 arrangement.
H4Report h4Evidence(const SolverOptions& opt = {});

}  // namespace strata

#endif  // STRATA_REDUCE_HPP
