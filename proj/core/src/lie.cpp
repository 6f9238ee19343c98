#include "strata/lie.hpp"

#include <cmath>

namespace strata {

void MatrixPoint::validate() const {
  if (A.rows() != A.cols()) throw Error("MatrixPoint: square matrix required");
  if (kind == LieKind::SL) {
    if (std::abs(A.trace()) > 1e-12 * std::max(1.0, A.norm()))
      throw Error("MatrixPoint: sl matrix must be trace-free");
  } else {
    if ((A + A.transpose()).norm() != 0.0)
      throw Error("MatrixPoint: so matrix must be exactly skew-symmetric");
  }
}

std::vector<double> tracePowers(const MatrixPoint& p, const std::vector<int>& ks) {
  std::vector<double> out;
  out.reserve(ks.size());
  int maxK = 0;
  for (int k : ks) {
    if (k < 1) throw Error("tracePowers: exponent must be positive");
    maxK = std::max(maxK, k);
  }
  std::vector<double> traces(maxK + 1, 0.0);
  Eigen::MatrixXd P = p.A;
  traces[1] = P.trace();
  for (int k = 2; k <= maxK; ++k) {
    P = P * p.A;
    traces[k] = P.trace();
  }
  for (int k : ks) out.push_back(traces[k]);
  return out;
}

namespace {

double pfaffianRec(const Eigen::MatrixXd& A, std::vector<int>& idx) {
  const int m = static_cast<int>(idx.size());
  if (m == 0) return 1.0;
  const int i0 = idx[0];
  double acc = 0.0;
  for (int j = 1; j < m; ++j) {
    const double a = A(i0, idx[j]);
    if (a == 0.0) continue;
    std::vector<int> rest;
    rest.reserve(m - 2);
    for (int t = 1; t < m; ++t)
      if (t != j) rest.push_back(idx[t]);
    const double sign = (j % 2 == 1) ? 1.0 : -1.0;
    acc += sign * a * pfaffianRec(A, rest);
  }
  return acc;
}

}  // namespace

double pfaffian(const Eigen::MatrixXd& skew) {
  const int n = static_cast<int>(skew.rows());
  if (n % 2 != 0) throw Error("pfaffian: requires even dimension");
  if ((skew + skew.transpose()).norm() > 1e-12 * std::max(1.0, skew.norm()))
    throw Error("pfaffian: matrix is not skew-symmetric");
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  return pfaffianRec(skew, idx);
}

LieProblem lieReduce(LieKind kind, int n, const Polynomial& objectiveInT,
                     const Constraint& constraint, Sense sense, bool usePfaffian) {
  LieProblem lp;
  lp.kind = kind;
  lp.n = n;
  Problem& wp = lp.weylProblem;
  wp.sense = sense;

  if (kind == LieKind::SL) {
    if (n < 2) throw Error("lieReduce: sl_n needs n >= 2");
    const int mVars = objectiveInT.nvars();  // variables t_2 .. t_{mVars+1}
    if (mVars + 1 > n) throw Error("lieReduce: invariant index exceeds n");
    wp.group = catalog(Family::A, n - 1);
    // y_i of the Weyl objective is s_i; shift t_{j} -> y_j.
    const int kw = mVars + 1;
    std::vector<Polynomial> shift;
    for (int i = 0; i < mVars; ++i) shift.push_back(Polynomial::variable(kw, i + 1));
    wp.objective = makeSparseObjective(wp.group, compose(objectiveInT, shift));
    // Trace zero is always pinned; a sphere fixes tr(A^2) in addition.
    std::vector<double> targets{0.0};
    if (const auto* sph = std::get_if<SphereConstraint>(&constraint)) {
      targets.push_back(sph->radius * sph->radius);
    } else if (const auto* pr = std::get_if<PrincipalConstraint>(&constraint)) {
      for (double v : pr->targets) targets.push_back(v);  // values of t_2, t_3, ...
    }
    wp.constraint = PrincipalConstraint{targets};
    return lp;
  }

  // so_n: block parameters b_1..b_m.
  const int m = n / 2;
  if (m < 2) throw Error("lieReduce: so_n needs n >= 4");
  const bool even = n % 2 == 0;
  if (usePfaffian && !even) throw Error("lieReduce: the Pfaffian needs even n");
  wp.group = even ? catalog(Family::D, m) : catalog(Family::B, m);
  BasicInvariantSet basis = basicInvariants(wp.group);
  const int kw = basis.count();
  // Variable i of objectiveInT is t_{2(i+1)}; the last one is pf when
  // requested. t_{2j} = 2 (-1)^j s_{2j}(b), pf = e_m(b).
  const int tVars = objectiveInT.nvars();
  std::vector<Polynomial> subst;
  for (int i = 0; i < tVars; ++i) {
    const bool isPf = usePfaffian && i == tVars - 1;
    if (isPf) {
      const int slot = m / 2;  // e_m sits after the first floor(m/2) power sums
      subst.push_back(Polynomial::variable(kw, slot));
    } else {
      const int j = i + 1;  // t_{2j}
      int slot;             // index of s_{2j}(b) among the basics
      if (!even) {
        slot = j - 1;
      } else {
        slot = (j <= m / 2) ? j - 1 : j;  // skip the e_m slot
      }
      if (slot >= kw) throw Error("lieReduce: invariant index exceeds the basis");
      subst.push_back(Polynomial::variable(kw, slot) *
                      QSqrt5(Rational(2) * (j % 2 ? -1 : 1)));
    }
  }
  wp.objective = makeSparseObjective(wp.group, compose(objectiveInT, subst));
  if (const auto* sph = std::get_if<SphereConstraint>(&constraint)) {
    wp.constraint = SphereConstraint{sph->radius};
  } else if (const auto* pr = std::get_if<PrincipalConstraint>(&constraint)) {
    // Targets arrive in t-coordinates (t_2, t_4, ...); map them onto the
    // power-sum basics. Pfaffian targets are not remapped here.
    std::vector<double> targets;
    for (std::size_t i = 0; i < pr->targets.size(); ++i) {
      const int j = static_cast<int>(i) + 1;
      targets.push_back(pr->targets[i] / (2.0 * (j % 2 ? -1.0 : 1.0)));
    }
    wp.constraint = PrincipalConstraint{targets};
  } else {
    wp.constraint = std::monostate{};
  }
  return lp;
}

MatrixPoint backMapWitness(const LieProblem& lp, const Solution& sol) {
  MatrixPoint mp;
  if (lp.kind == LieKind::SL) {
    mp.kind = LieKind::SL;
    const int n = lp.n;
    mp.A = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) mp.A(i, i) = sol.witness[i];
    // Exact trace-zero up to the solver tolerance; snap the residue.
    const double tr = mp.A.trace();
    for (int i = 0; i < n; ++i) mp.A(i, i) -= tr / n;
    return mp;
  }
  mp.kind = LieKind::SO;
  const int n = lp.n;
  const int m = n / 2;
  mp.A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < m; ++i) {
    const double b = sol.witness[i];
    mp.A(2 * i, 2 * i + 1) = b;
    mp.A(2 * i + 1, 2 * i) = -b;
  }
  return mp;
}

}  // namespace strata
