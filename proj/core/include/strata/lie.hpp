#ifndef STRATA_LIE_HPP
#define STRATA_LIE_HPP

#include <Eigen/Dense>

#include "strata/reduce.hpp"

namespace strata {

enum class LieKind { SL, SO };

struct MatrixPoint {
  LieKind kind = LieKind::SL;
  Eigen::MatrixXd A;

  int n() const { return static_cast<int>(A.rows()); }
  void validate() const;  // trace ~ 0 for sl, A^T = -A for so
};

/// tr(A^k) for each requested k, by repeated multiplication.
std::vector<double> tracePowers(const MatrixPoint& p, const std::vector<int>& ks);

/// Pfaffian of an even skew-symmetric matrix by expansion along the first
/// row; pf([[0, a], [-a, 0]]) = a.
double pfaffian(const Eigen::MatrixXd& skew);

struct LieProblem {
  LieKind kind = LieKind::SL;
  int n = 0;
  Problem weylProblem;  // the equivalent reflection-group problem
};

/// Translates an adjoint-invariant objective into the Weyl-group problem:
///   sl_n: F in t_2..t_k (t_i = tr(A^i)) on diagonal matrices -> A-type
///         power sums with the trace pinned to zero;
///   so_n: F in t_2, t_4, ... (and pf for even n) on block rotations ->
///         B/D-type coordinates for the block parameters.
/// The variable y_i of `objectiveInT` is read as t_{i+1} for sl (t_2..),
/// and as t_{2i} for so, with the last variable meaning pf when n is even
/// and usePfaffian is set.
LieProblem lieReduce(LieKind kind, int n, const Polynomial& objectiveInT,
                     const Constraint& constraint, Sense sense,
                     bool usePfaffian = false);

/// Reconstructs a diagonal (sl) or block-diagonal (so) matrix witness from
/// the Weyl-problem solution.
MatrixPoint backMapWitness(const LieProblem& lp, const Solution& sol);

}  // namespace strata

#endif  // STRATA_LIE_HPP
