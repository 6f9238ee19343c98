#include "strata/reduce.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <set>
#include <sstream>

#include "strata/optimize.hpp"

namespace strata {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Solved: return "solved";
    case SolveStatus::InfeasibleNumerically: return "infeasible-numerically";
    case SolveStatus::UnboundedSuspected: return "unbounded-suspected";
  }
  return "?";
}

SparseObjective makeSparseObjective(const GroupDescriptor& g, const Polynomial& F,
                                    BasisVariant variant) {
  SparseObjective obj;
  obj.basis = basicInvariants(g, variant);
  if (F.nvars() > obj.basis.count())
    throw Error("objective uses more invariant coordinates than the group has basics");
  obj.F = F;
  obj.k = F.nvars();
  return obj;
}

namespace {

// ---------------------------------------------------------------------------
// Pointwise evaluation of F(pi_1..pi_k) and its ambient gradient. The
// composition is never expanded; everything is evaluated through the chain
// rule.

struct Engine {
  const BasicInvariantSet* basis = nullptr;
  const Polynomial* F = nullptr;  // may be null for pure feasibility
  int needBasics = 0;
  int kObjective = 0;
  int ambient = 0;
  std::vector<CompiledPolynomial> cBasics;  // pi_1..pi_need
  std::vector<CompiledPolynomial> cFgrad;
  CompiledPolynomial cF;
  std::vector<std::vector<CompiledPolynomial>> cBGrad;

  void init(const BasicInvariantSet& b, const Polynomial* f, int need) {
    basis = &b;
    F = f;
    needBasics = need;
    ambient = b.nvars();
    for (int i = 0; i < need; ++i) cBasics.emplace_back(b.polys[i]);
    if (f) {
      kObjective = f->nvars();
      cF = CompiledPolynomial(*f);
      for (const auto& d : f->gradient()) cFgrad.emplace_back(d);
    }
    for (int i = 0; i < need; ++i) {
      std::vector<CompiledPolynomial> g;
      for (const auto& d : b.polys[i].gradient()) g.emplace_back(d);
      cBGrad.push_back(std::move(g));
    }
  }

  double basic(int i, std::span<const double> x) const { return cBasics[i].eval(x); }

  double objective(std::span<const double> x) const {
    if (!F) return 0.0;
    thread_local std::vector<double> y;
    y.resize(kObjective);
    for (int i = 0; i < kObjective; ++i) y[i] = cBasics[i].eval(x);
    return cF.eval(y);
  }

  void objectiveGrad(std::span<const double> x, std::span<double> gx) const {
    std::fill(gx.begin(), gx.end(), 0.0);
    if (!F) return;
    thread_local std::vector<double> y;
    y.resize(kObjective);
    for (int i = 0; i < kObjective; ++i) y[i] = cBasics[i].eval(x);
    for (int i = 0; i < kObjective; ++i) {
      const double dF = cFgrad[i].eval(y);
      if (dF == 0.0) continue;
      for (int j = 0; j < ambient; ++j) gx[j] += dF * cBGrad[i][j].eval(x);
    }
  }
};

// A single reduced search space: pattern coordinates or a flat frame.
struct Space {
  int dim = 0;
  int ambient = 0;
  std::optional<StratumPattern> pattern;
  std::vector<std::vector<double>> frame;  // orthonormal spanning vectors
  std::vector<double> sphereWeights;
  std::string desc;
  int orderMinor = 0;  // tie-break within equal dim

  void embed(std::span<const double> t, std::vector<double>& x) const {
    if (pattern) {
      auto v = strata::embed(*pattern, t);
      x.assign(v.begin(), v.end());
      return;
    }
    x.assign(ambient, 0.0);
    for (int j = 0; j < dim; ++j)
      for (int i = 0; i < ambient; ++i) x[i] += frame[j][i] * t[j];
  }

  void pullback(std::span<const double> gx, std::vector<double>& gt) const {
    gt.assign(dim, 0.0);
    if (pattern) {
      int pos = 0;
      for (std::size_t b = 0; b < pattern->multiplicities.size(); ++b) {
        for (int r = 0; r < pattern->multiplicities[b]; ++r, ++pos) {
          double sgn = 1.0;
          if (pattern->signBit < 0 &&
              pos == pattern->n - pattern->zeros - 1)
            sgn = -1.0;
          gt[b] += sgn * gx[pos];
        }
      }
      return;
    }
    for (int j = 0; j < dim; ++j) {
      double s = 0.0;
      for (int i = 0; i < ambient; ++i) s += frame[j][i] * gx[i];
      gt[j] = s;
    }
  }
};

Space patternSpace(const StratumPattern& pat) {
  Space s;
  s.pattern = pat;
  s.dim = pat.freeVars;
  s.ambient = pat.n;
  s.desc = pat.str();
  s.sphereWeights.assign(pat.multiplicities.begin(), pat.multiplicities.end());
  return s;
}

std::vector<std::vector<double>> orthonormalize(const std::vector<QVector>& basis) {
  std::vector<std::vector<double>> out;
  for (const auto& bq : basis) {
    std::vector<double> v = toDouble(bq);
    for (const auto& u : out) {
      double d = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) d += u[i] * v[i];
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= d * u[i];
    }
    double n2 = 0.0;
    for (double c : v) n2 += c * c;
    if (n2 < 1e-20) continue;
    const double inv = 1.0 / std::sqrt(n2);
    for (double& c : v) c *= inv;
    out.push_back(std::move(v));
  }
  return out;
}

Space flatSpace(const Flat& f, int ambient, int minor) {
  Space s;
  s.dim = f.dim;
  s.ambient = ambient;
  s.frame = orthonormalize(f.basis);
  s.sphereWeights.assign(s.dim, 1.0);
  std::ostringstream os;
  os << "flat(dim=" << f.dim << ", normals=" << f.normalRoots.size() << ", #" << minor << ")";
  s.desc = os.str();
  s.orderMinor = minor;
  return s;
}

// Fraction of the constraint actually pinned by a sphere: index (1-based)
// of the squared-norm invariant among the basics.
int normInvariantIndex(const GroupDescriptor& g) {
  return g.family == Family::A ? 2 : 1;
}

struct Candidate {
  bool valid = false;
  double value = 0.0;
  double residual = 0.0;  // constraint violation, sum of squares
  std::vector<double> x;  // ambient witness
  int spaceIndex = -1;
};

struct CoreSetup {
  const GroupDescriptor* group;
  const BasicInvariantSet* basis;
  const Polynomial* F;  // null for feasibility
  const Constraint* constraint;
  Sense sense = Sense::Min;
  std::vector<Polynomial> extraPenaltiesY;  // inequalities g(y) >= 0
};

// Solves one space from one start; returns the local candidate.
Candidate solveOneStart(const CoreSetup& setup, const Engine& eng, const Space& space,
                        std::span<const double> t0, const SolverOptions& opt) {
  const double senseSign = setup.sense == Sense::Max ? -1.0 : 1.0;
  const bool feasibilityOnly = setup.sense == Sense::Feasibility;
  const auto* principal = std::get_if<PrincipalConstraint>(setup.constraint);
  const auto* sphere = std::get_if<SphereConstraint>(setup.constraint);

  std::vector<double> xScratch;
  std::vector<double> gxScratch(space.ambient);

  // Inequality penalties (checkNonneg) share the basis coordinates.
  std::vector<std::vector<Polynomial>> ineqGrads;
  for (const auto& q : setup.extraPenaltiesY) ineqGrads.push_back(q.gradient());
  auto ineqPenalty = [&](std::span<const double> x, double mu, std::vector<double>* gx) {
    if (setup.extraPenaltiesY.empty()) return 0.0;
    std::vector<double> y(eng.needBasics);
    for (int i = 0; i < eng.needBasics; ++i) y[i] = eng.basic(i, x);
    double acc = 0.0;
    for (std::size_t q = 0; q < setup.extraPenaltiesY.size(); ++q) {
      const auto& gq = setup.extraPenaltiesY[q];
      std::vector<double> yq(gq.nvars());
      for (int i = 0; i < gq.nvars(); ++i) yq[i] = y[i];
      const double v = gq.eval(yq);
      if (v >= 0.0) continue;
      acc += mu * v * v;
      if (gx) {
        for (int i = 0; i < gq.nvars(); ++i) {
          const double dq = ineqGrads[q][i].eval(yq);
          if (dq == 0.0) continue;
          for (int j = 0; j < space.ambient; ++j)
            (*gx)[j] += 2.0 * mu * v * dq * eng.cBGrad[i][j].eval(x);
        }
      }
    }
    return acc;
  };

  auto residualOf = [&](std::span<const double> x) {
    if (!principal) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < principal->targets.size(); ++i) {
      const double d = eng.basic(static_cast<int>(i), x) - principal->targets[i];
      acc += d * d;
    }
    return acc;
  };

  auto makeObjective = [&](double muPrincipal, double muIneq) {
    Objective obj;
    obj.dim = space.dim;
    obj.value = [&, muPrincipal, muIneq](std::span<const double> t) {
      std::vector<double> x;
      space.embed(t, x);
      double v = feasibilityOnly ? 0.0 : senseSign * eng.objective(x);
      if (principal) v += (feasibilityOnly ? 1.0 : muPrincipal) * residualOf(x);
      v += ineqPenalty(x, muIneq, nullptr);
      return v;
    };
    obj.gradient = [&, muPrincipal, muIneq](std::span<const double> t, std::span<double> gt) {
      std::vector<double> x;
      space.embed(t, x);
      std::vector<double> gx(space.ambient, 0.0);
      if (!feasibilityOnly) {
        eng.objectiveGrad(x, gxScratch);
        for (int i = 0; i < space.ambient; ++i) gx[i] += senseSign * gxScratch[i];
      }
      if (principal) {
        const double mu = feasibilityOnly ? 1.0 : muPrincipal;
        for (std::size_t q = 0; q < principal->targets.size(); ++q) {
          const double d = eng.basic(static_cast<int>(q), x) - principal->targets[q];
          if (d == 0.0) continue;
          for (int j = 0; j < space.ambient; ++j)
            gx[j] += 2.0 * mu * d * eng.cBGrad[q][j].eval(x);
        }
      }
      ineqPenalty(x, muIneq, &gx);
      std::vector<double> gtv;
      space.pullback(gx, gtv);
      for (int j = 0; j < space.dim; ++j) gt[j] = gtv[j];
    };
    return obj;
  };

  Manifold manifold = Manifold::free();
  if (sphere) manifold = Manifold::sphere(sphere->radius, space.sphereWeights);

  std::vector<double> t(t0.begin(), t0.end());
  if (space.dim == 0) {
    Candidate c;
    space.embed(t, c.x);
    c.value = eng.F ? eng.objective(c.x) : 0.0;
    c.residual = residualOf(c.x);
    if (sphere) {
      double q = -sphere->radius * sphere->radius;
      for (double xi : c.x) q += xi * xi;
      c.residual += q * q;
      c.valid = std::abs(q) <= 1e-9;
    } else {
      c.valid = true;
    }
    return c;
  }

  if (feasibilityOnly || !principal) {
    const double muIneq = setup.extraPenaltiesY.empty() ? 0.0 : 1e6;
    LocalResult lr = minimizeLocal(makeObjective(0.0, muIneq), t, manifold, opt.maxIter);
    t = lr.x;
  } else {
    // Penalty phase, then descend along the constraint manifold with
    // Gauss-Newton reprojection.
    for (double mu : {1e4, 1e6}) {
      LocalResult lr = minimizeLocal(makeObjective(mu, 1e6), t, manifold, opt.maxIter / 2);
      t = lr.x;
    }
    const int j = static_cast<int>(principal->targets.size());
    auto project = [&](std::vector<double>& tt) {
      for (int it = 0; it < 40; ++it) {
        std::vector<double> x;
        space.embed(tt, x);
        Eigen::VectorXd res(j);
        Eigen::MatrixXd J(j, space.dim);
        for (int i = 0; i < j; ++i) {
          res(i) = eng.basic(i, x) - principal->targets[i];
          std::vector<double> gx(space.ambient), gtv;
          for (int c = 0; c < space.ambient; ++c) gx[c] = eng.cBGrad[i][c].eval(x);
          space.pullback(gx, gtv);
          for (int c = 0; c < space.dim; ++c) J(i, c) = gtv[c];
        }
        if (res.squaredNorm() < 1e-28) break;
        Eigen::MatrixXd JtJ = J.transpose() * J +
                              1e-12 * Eigen::MatrixXd::Identity(space.dim, space.dim);
        Eigen::VectorXd d = JtJ.ldlt().solve(-J.transpose() * res);
        for (int c = 0; c < space.dim; ++c) tt[c] += d(c);
      }
    };
    project(t);
    // Projected descent on the objective.
    std::vector<double> x, gx(space.ambient), gtv;
    double step = 1e-2;
    for (int it = 0; it < opt.maxIter; ++it) {
      space.embed(t, x);
      eng.objectiveGrad(x, gx);
      for (auto& v : gx) v *= senseSign;
      space.pullback(gx, gtv);
      // Project the step direction onto the tangent of the constraint set.
      Eigen::MatrixXd J(j, space.dim);
      for (int i = 0; i < j; ++i) {
        std::vector<double> bgx(space.ambient), bgt;
        for (int c = 0; c < space.ambient; ++c) bgx[c] = eng.cBGrad[i][c].eval(x);
        space.pullback(bgx, bgt);
        for (int c = 0; c < space.dim; ++c) J(i, c) = bgt[c];
      }
      Eigen::VectorXd g(space.dim);
      for (int c = 0; c < space.dim; ++c) g(c) = gtv[c];
      Eigen::MatrixXd JJt = J * J.transpose() +
                            1e-12 * Eigen::MatrixXd::Identity(j, j);
      Eigen::VectorXd lam = JJt.ldlt().solve(J * g);
      Eigen::VectorXd gtan = g - J.transpose() * lam;
      const double gn = gtan.norm();
      space.embed(t, x);
      const double f0 = eng.objective(x) * senseSign;
      if (gn < 1e-12 * std::max(1.0, std::abs(f0))) break;
      bool moved = false;
      double eta = std::min(step * 4.0, 1e3);
      for (int bt = 0; bt < 50; ++bt) {
        std::vector<double> tt(t);
        for (int c = 0; c < space.dim; ++c) tt[c] -= eta * gtan(c);
        project(tt);
        std::vector<double> xt;
        space.embed(tt, xt);
        const double ft = eng.objective(xt) * senseSign;
        if (ft <= f0 - 1e-4 * eta * gn * gn) {
          t = tt;
          step = eta;
          moved = true;
          break;
        }
        eta *= 0.5;
      }
      if (!moved) break;
    }
  }

  Candidate c;
  space.embed(t, c.x);
  c.value = eng.F ? eng.objective(c.x) : 0.0;
  c.residual = residualOf(c.x);
  c.valid = true;
  for (double v : c.x)
    if (!std::isfinite(v)) c.valid = false;
  return c;
}

std::vector<std::vector<double>> makeStarts(const Space& space, const CoreSetup& setup,
                                            const SolverOptions& opt, std::uint64_t salt) {
  const int dim = space.dim;
  std::vector<std::vector<double>> starts;
  if (dim == 0) {
    starts.push_back({});
    return starts;
  }
  double scale = 1.0;
  if (const auto* sph = std::get_if<SphereConstraint>(setup.constraint))
    scale = sph->radius;
  if (const auto* pr = std::get_if<PrincipalConstraint>(setup.constraint)) {
    double m = 1.0;
    for (double v : pr->targets) m = std::max(m, std::abs(v));
    scale = std::sqrt(m);
  }
  Rng rng(opt.seed ^ (salt * 0x9e3779b97f4a7c15ull + 0x51ull));
  const int count = std::max(4, opt.startsPerDim * dim);
  for (int s = 0; s < count; ++s) {
    auto u = haltonPoint(s, dim);
    std::vector<double> t(dim);
    const double mag = scale * (0.25 + 1.75 * rng.uniform());
    for (int i = 0; i < dim; ++i) t[i] = (2.0 * u[i] - 1.0 + 0.02 * rng.normal()) * mag;
    starts.push_back(std::move(t));
  }
  // Deterministic structured starts: axes and the all-equal diagonal.
  for (int i = 0; i < dim; ++i) {
    std::vector<double> t(dim, 0.0);
    t[i] = scale;
    starts.push_back(t);
    t[i] = -scale;
    starts.push_back(std::move(t));
  }
  starts.push_back(std::vector<double>(dim, scale / std::sqrt(static_cast<double>(dim))));
  return starts;
}

Candidate solveSpace(const CoreSetup& setup, const Engine& eng, const Space& space,
                     const SolverOptions& opt, std::uint64_t salt) {
  Candidate best;
  const bool feasibility = setup.sense == Sense::Feasibility;
  for (const auto& t0 : makeStarts(space, setup, opt, salt)) {
    Candidate c = solveOneStart(setup, eng, space, t0, opt);
    if (!c.valid) continue;
    bool better;
    if (feasibility)
      better = !best.valid || c.residual < best.residual - 1e-18 ||
               (c.residual < best.residual + 1e-18 && c.value < best.value);
    else if (setup.sense == Sense::Max)
      better = !best.valid || (c.residual < 1e-14 + best.residual && c.value > best.value + 1e-12) ||
               c.residual < best.residual - 1e-10;
    else
      better = !best.valid || (c.residual < 1e-14 + best.residual && c.value < best.value - 1e-12) ||
               c.residual < best.residual - 1e-10;
    if (better) best = c;
  }
  return best;
}

Solution mergeCandidates(const CoreSetup& setup, const std::vector<Space>& spaces,
                         std::vector<Candidate> cands, const SolverOptions& opt) {
  Solution sol;
  const auto* principal = std::get_if<PrincipalConstraint>(setup.constraint);
  const bool feasibility = setup.sense == Sense::Feasibility;
  const double feasTol = 1e-7;

  int bestIdx = -1;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    auto& c = cands[i];
    if (!c.valid) continue;
    c.spaceIndex = static_cast<int>(i);
    if (bestIdx < 0) {
      bestIdx = static_cast<int>(i);
      continue;
    }
    const Candidate& b = cands[bestIdx];
    bool better = false;
    if (feasibility) {
      better = c.residual < b.residual * (1.0 - 1e-12) - 1e-18;
    } else {
      const bool cFeas = !principal || c.residual <= feasTol * feasTol;
      const bool bFeas = !principal || b.residual <= feasTol * feasTol;
      if (cFeas != bFeas)
        better = cFeas;
      else if (!cFeas)
        better = c.residual < b.residual - 1e-14;
      else if (setup.sense == Sense::Max)
        better = c.value > b.value + 1e-9;
      else
        better = c.value < b.value - 1e-9;
    }
    if (better) bestIdx = static_cast<int>(i);
  }
  if (bestIdx < 0) {
    sol.status = SolveStatus::InfeasibleNumerically;
    sol.warnings.push_back("no admissible candidate found");
    return sol;
  }
  const Candidate& b = cands[bestIdx];
  sol.value = b.value;
  sol.witness = b.x;
  sol.residual = b.residual;
  sol.patternDescription = spaces[bestIdx].desc;
  if (feasibility) {
    sol.status = b.residual < opt.tolFeasibility ? SolveStatus::Solved
                                                 : SolveStatus::InfeasibleNumerically;
  } else if (principal) {
    double maxViolation = 0.0;
    // per-target violation from the stored sum of squares is enough here
    maxViolation = std::sqrt(b.residual);
    sol.status = maxViolation <= feasTol ? SolveStatus::Solved
                                         : SolveStatus::InfeasibleNumerically;
  } else {
    sol.status = SolveStatus::Solved;
  }
  return sol;
}

Solution runCore(const CoreSetup& setup, const std::vector<Space>& spaces,
                 const SolverOptions& opt, int needBasics) {
  Engine eng;
  eng.init(*setup.basis, setup.F, needBasics);
  std::vector<Candidate> cands(spaces.size());
  if (opt.jobs > 1) {
    std::vector<std::future<Candidate>> futs;
    futs.reserve(spaces.size());
    for (std::size_t i = 0; i < spaces.size(); ++i)
      futs.push_back(std::async(std::launch::async, [&, i] {
        return solveSpace(setup, eng, spaces[i], opt, i + 1);
      }));
    for (std::size_t i = 0; i < spaces.size(); ++i) cands[i] = futs[i].get();
  } else {
    for (std::size_t i = 0; i < spaces.size(); ++i)
      cands[i] = solveSpace(setup, eng, spaces[i], opt, i + 1);
  }
  return mergeCandidates(setup, spaces, std::move(cands), opt);
}

std::vector<Space> strataSpaces(const GroupDescriptor& g, int kEff, bool skipOrigin) {
  std::vector<Space> spaces;
  switch (g.family) {
    case Family::A:
    case Family::B:
    case Family::D: {
      const int n = g.ambientDim;
      auto pats = patterns(g.family, n, std::min(kEff, n));
      std::sort(pats.begin(), pats.end(), [](const StratumPattern& a, const StratumPattern& b) {
        if (a.freeVars != b.freeVars) return a.freeVars < b.freeVars;
        if (a.multiplicities != b.multiplicities) return a.multiplicities < b.multiplicities;
        if (a.zeros != b.zeros) return a.zeros < b.zeros;
        return a.signBit > b.signBit;
      });
      for (const auto& p : pats) {
        if (skipOrigin && p.freeVars == 0) continue;
        spaces.push_back(patternSpace(p));
      }
      break;
    }
    case Family::I2:
    case Family::H3:
    case Family::H4:
    case Family::F4: {
      for (int d = skipOrigin ? 1 : 0; d <= std::min(kEff, g.rank); ++d) {
        int minor = 0;
        for (const auto& f : flatOrbitRepresentatives(g, d))
          spaces.push_back(flatSpace(f, g.ambientDim, minor++));
      }
      break;
    }
    default:
      throw Error("solveOnStrata: no strata parameterization for " + g.name());
  }
  return spaces;
}

int effectiveSparsity(const Problem& p) {
  int k = p.objective.k;
  if (std::holds_alternative<SphereConstraint>(p.constraint))
    k = std::max(k, normInvariantIndex(p.group));
  if (const auto* pr = std::get_if<PrincipalConstraint>(&p.constraint))
    k = std::max(k, static_cast<int>(pr->targets.size()));
  return std::min(k, p.group.ambientDim);
}

void validateProblem(const Problem& p, const SolverOptions& opt, Solution& warnSink) {
  if (std::holds_alternative<std::monostate>(p.constraint) && !opt.assumeCoercive &&
      p.sense != Sense::Feasibility)
    throw Error(
        "unconstrained problem: extreme points need a compact feasible set; "
        "pass a sphere/principal constraint or assert coercivity");
  if (p.group.family == Family::H4)
    warnSink.warnings.push_back(
        "H4: the strata reduction is conjecture-backed; compare with bruteOracle");
}

Space ambientSpace(const GroupDescriptor& g) {
  Space s;
  s.dim = g.ambientDim;
  s.ambient = g.ambientDim;
  s.desc = "ambient";
  s.sphereWeights.assign(s.dim, 1.0);
  s.frame.clear();
  for (int i = 0; i < s.dim; ++i) {
    std::vector<double> e(s.dim, 0.0);
    e[i] = 1.0;
    s.frame.push_back(std::move(e));
  }
  return s;
}

// For groups realized non-essentially whose basics ignore the fixed
// directions (I2 here), the oracle runs in essential coordinates.
Space bruteSpace(const GroupDescriptor& g) {
  if (g.essential || g.family == Family::A) return ambientSpace(g);
  const RootSystem& rs = rootSystem(g);
  std::vector<QVector> rows;
  for (int i : rs.positiveIdx) rows.push_back(rs.roots[i]);
  Space s;
  s.frame = orthonormalize(canonicalSpan(rows));
  s.dim = static_cast<int>(s.frame.size());
  s.ambient = g.ambientDim;
  s.desc = "ambient(essential)";
  s.sphereWeights.assign(s.dim, 1.0);
  return s;
}

}  // namespace

Solution solveOnStrata(const Problem& p, const SolverOptions& opt) {
  Solution warnSink;
  validateProblem(p, opt, warnSink);
  const int kEff = effectiveSparsity(p);
  const bool sphere = std::holds_alternative<SphereConstraint>(p.constraint);
  CoreSetup setup{&p.group, &p.objective.basis,
                  p.sense == Sense::Feasibility ? nullptr : &p.objective.F,
                  &p.constraint, p.sense, {}};
  int need = p.objective.k;
  if (const auto* pr = std::get_if<PrincipalConstraint>(&p.constraint))
    need = std::max(need, static_cast<int>(pr->targets.size()));
  auto spaces = strataSpaces(p.group, kEff, sphere);
  Solution sol = runCore(setup, spaces, opt, need);
  sol.kEffective = kEff;
  sol.warnings.insert(sol.warnings.end(), warnSink.warnings.begin(), warnSink.warnings.end());
  if (!sol.witness.empty())
    sol.witnessStratumDim = stratumDim(p.group, sol.witness, std::max(opt.tolRank, 1e-8));
  return sol;
}

Solution bruteOracle(const Problem& p, const SolverOptions& opt) {
  if (p.group.ambientDim > 8) throw Error("bruteOracle: ambient dimension exceeds 8");
  Solution warnSink;
  if (std::holds_alternative<std::monostate>(p.constraint) && !opt.assumeCoercive &&
      p.sense != Sense::Feasibility)
    throw Error("unconstrained problem rejected (see solveOnStrata)");
  CoreSetup setup{&p.group, &p.objective.basis,
                  p.sense == Sense::Feasibility ? nullptr : &p.objective.F,
                  &p.constraint, p.sense, {}};
  int need = p.objective.k;
  if (const auto* pr = std::get_if<PrincipalConstraint>(&p.constraint))
    need = std::max(need, static_cast<int>(pr->targets.size()));
  std::vector<Space> spaces{bruteSpace(p.group)};
  SolverOptions o = opt;
  o.startsPerDim = std::max(opt.startsPerDim, 12);
  Solution sol = runCore(setup, spaces, o, need);
  sol.kEffective = effectiveSparsity(p);
  if (!sol.witness.empty())
    sol.witnessStratumDim = stratumDim(p.group, sol.witness, std::max(opt.tolRank, 1e-8));
  return sol;
}

Solution nonemptyPrincipal(const GroupDescriptor& g, const BasicInvariantSet& basis,
                           const std::vector<double>& targets, const SolverOptions& opt) {
  if (targets.empty()) throw Error("nonemptyPrincipal: empty target list");
  if (static_cast<int>(targets.size()) > basis.count())
    throw Error("nonemptyPrincipal: more targets than basics");
  Problem p;
  p.group = g;
  p.objective.basis = basis;
  p.objective.F = Polynomial(static_cast<int>(targets.size()));
  p.objective.k = static_cast<int>(targets.size());
  p.constraint = PrincipalConstraint{targets};
  p.sense = Sense::Feasibility;
  return solveOnStrata(p, opt);
}

// ---------------------------------------------------------------------------
// Hyperplane restriction

std::vector<HyperplaneRestriction> restrictToHyperplanes(const SparseObjective& obj) {
  const GroupDescriptor& g = obj.basis.group;
  const RootSystem& rs = rootSystem(g);
  bool linearInSome = false;
  for (int i = 0; i < obj.F.nvars(); ++i)
    if (obj.F.degreeIn(i) <= 1) {
      linearInSome = true;
      break;
    }
  if (obj.F.nvars() < obj.basis.count()) linearInSome = true;  // an absent top invariant
  if (!linearInSome)
    throw Error("restrictToHyperplanes: objective is nonlinear in every basic invariant");

  // Expand f = F(pi) once; the restricted problems are small by contract.
  std::vector<Polynomial> firstK(obj.basis.polys.begin(),
                                 obj.basis.polys.begin() + obj.F.nvars());
  Polynomial f = compose(obj.F, firstK);

  // Orbits of the positive roots.
  std::vector<HyperplaneRestriction> out;
  std::set<QVector, QVectorLexLess> assigned;
  for (int idx : rs.positiveIdx) {
    const QVector& alpha = rs.roots[idx];
    if (assigned.count(alpha)) continue;
    auto orbit = vectorOrbit(g, alpha);
    for (const auto& w : orbit) {
      assigned.insert(w);
      assigned.insert(-w);
    }
    HyperplaneRestriction hr;
    hr.normal = alpha;
    hr.orbitLabel = "orbit of size " + std::to_string(orbit.size() / 2) + " hyperplanes";
    hr.frame = nullSpace({alpha}, rs.dim);
    // x_i = sum_j frame[j][i] t_j
    std::vector<std::vector<QSqrt5>> rows(rs.dim,
                                          std::vector<QSqrt5>(hr.frame.size(), QSqrt5(0)));
    for (std::size_t j = 0; j < hr.frame.size(); ++j)
      for (int i = 0; i < rs.dim; ++i) rows[i][j] = hr.frame[j][i];
    hr.restricted = substituteLinear(f, rows);
    out.push_back(std::move(hr));
  }
  return out;
}

bool polynomialHasRealZero(const Polynomial& f, const SolverOptions& opt,
                           std::vector<double>* witness) {
  const int n = f.nvars();
  // Normalize by the largest coefficient so the zero threshold is scale-free.
  double scale = 0.0;
  for (const auto& [e, c] : f.terms()) scale = std::max(scale, std::abs(c.toDouble()));
  if (scale == 0.0) {
    if (witness) witness->assign(n, 0.0);
    return true;  // the zero polynomial
  }
  CompiledPolynomial cf(f);
  std::vector<CompiledPolynomial> cgrads;
  for (const auto& d : f.gradient()) cgrads.emplace_back(d);
  Objective obj;
  obj.dim = n;
  obj.value = [&](std::span<const double> x) {
    const double v = cf.eval(x) / scale;
    return v * v;
  };
  obj.gradient = [&](std::span<const double> x, std::span<double> gx) {
    const double v = cf.eval(x) / scale;
    for (int i = 0; i < n; ++i) gx[i] = 2.0 * v * cgrads[i].eval(x) / scale;
  };
  Rng rng(opt.seed ^ 0xabcdef123ull);
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> bestX;
  const int count = std::max(8, opt.startsPerDim * std::max(1, n));
  const double scales[4] = {0.5, 1.0, 2.0, 4.0};
  for (int s = 0; s < count; ++s) {
    auto u = haltonPoint(s, n);
    std::vector<double> x(n);
    const double mag = scales[s % 4];
    for (int i = 0; i < n; ++i) x[i] = (2.0 * u[i] - 1.0 + 0.05 * rng.normal()) * mag;
    LocalResult lr = minimizeLocal(obj, x, Manifold::free(), opt.maxIter);
    if (lr.value < best) {
      best = lr.value;
      bestX = lr.x;
    }
    if (best < 1e-20) break;
  }
  if (witness) *witness = bestX;
  return best < 1e-16;
}

bool restrictionHasZero(const HyperplaneRestriction& r, const SolverOptions& opt,
                        std::vector<double>* witnessAmbient) {
  std::vector<double> t;
  const bool found = polynomialHasRealZero(r.restricted, opt, &t);
  if (found && witnessAmbient) {
    witnessAmbient->assign(r.normal.size(), 0.0);
    for (std::size_t j = 0; j < r.frame.size(); ++j) {
      const auto col = toDouble(r.frame[j]);
      for (std::size_t i = 0; i < col.size(); ++i) (*witnessAmbient)[i] += col[i] * t[j];
    }
  }
  return found;
}

NonnegReport checkNonneg(const SparseObjective& f,
                         const std::vector<Polynomial>& inequalitiesInY,
                         const Constraint& constraint, const SolverOptions& opt) {
  Problem p;
  p.group = f.basis.group;
  p.objective = f;
  p.constraint = constraint;
  p.sense = Sense::Min;
  Solution warnSink;
  validateProblem(p, opt, warnSink);
  const int kEff = effectiveSparsity(p);
  const bool sphere = std::holds_alternative<SphereConstraint>(p.constraint);
  CoreSetup setup{&p.group, &p.objective.basis, &p.objective.F, &p.constraint,
                  Sense::Min, inequalitiesInY};
  int need = p.objective.k;
  for (const auto& q : inequalitiesInY) need = std::max(need, q.nvars());
  if (const auto* pr = std::get_if<PrincipalConstraint>(&p.constraint))
    need = std::max(need, static_cast<int>(pr->targets.size()));
  auto spaces = strataSpaces(p.group, std::min(std::max(kEff, need), p.group.ambientDim),
                             sphere);
  Solution sol = runCore(setup, spaces, opt, need);
  NonnegReport rep;
  rep.minValue = sol.value;
  rep.witness = sol.witness;
  rep.patternDescription = sol.patternDescription;
  rep.nonneg = sol.value >= -1e-8;
  return rep;
}

// ---------------------------------------------------------------------------
// F4 certificate

F4Report f4Certificate(const SolverOptions& opt) {
  F4Report rep;
  GroupDescriptor f4 = catalog(Family::F4);

  Polynomial pi2 = f4SecondInvariant();
  rep.identityRawSum = (pi2 * QSqrt5(6)) == f4SecondInvariantRawSum();

  // pi_2(x) = g(x_1^2, ..., x_4^2) with g = 5 s1 s2 - 4 s3.
  Polynomial gPoly = powerSum(4, 1) * powerSum(4, 2) * QSqrt5(5) -
                     powerSum(4, 3) * QSqrt5(4);
  {
    std::vector<Polynomial> squares;
    for (int i = 0; i < 4; ++i) {
      Polynomial xi = Polynomial::variable(4, i);
      squares.push_back(xi * xi);
    }
    rep.identitySquares = compose(gPoly, squares) == pi2;
  }

  // Extrema of pi_2 over the unit sphere through the strata engine.
  Problem prob;
  prob.group = f4;
  prob.objective = makeSparseObjective(f4, Polynomial::variable(2, 1));
  prob.constraint = SphereConstraint{1.0};
  prob.sense = Sense::Min;
  Solution mn = solveOnStrata(prob, opt);
  prob.sense = Sense::Max;
  Solution mx = solveOnStrata(prob, opt);
  rep.sphereMin = mn.value;
  rep.sphereMax = mx.value;
  rep.minWitness = mn.witness;
  rep.maxWitness = mx.witness;
  rep.minStratumDim = mn.witnessStratumDim;
  rep.maxStratumDim = mx.witnessStratumDim;

  // Bivariate reduction: g restricted to the simplex slice {y_1 = y_2}.
  // Coordinates (s, t): y = (s, s, t, 1 - 2s - t).
  std::vector<Polynomial> subst;
  {
    Polynomial s = Polynomial::variable(2, 0);
    Polynomial t = Polynomial::variable(2, 1);
    Polynomial one = Polynomial::constant(2, QSqrt5(1));
    subst = {s, s, t, one - s * QSqrt5(2) - t};
  }
  Polynomial gRestricted = compose(gPoly, subst);
  Polynomial gs = gRestricted.derivative(0);
  Polynomial gt = gRestricted.derivative(1);
  Polynomial gss = gs.derivative(0), gst = gs.derivative(1), gtt = gt.derivative(1);

  std::vector<std::pair<double, double>> critical;
  const int grid = 48;
  for (int a = 1; a < grid; ++a) {
    for (int b = 1; b < grid; ++b) {
      double s = 0.5 * a / grid;
      double t = 1.0 * b / grid;
      if (1.0 - 2.0 * s - t <= 0.0) continue;
      bool ok = true;
      for (int it = 0; it < 60; ++it) {
        const double x[2] = {s, t};
        const double r1 = gs.eval(x), r2 = gt.eval(x);
        if (std::abs(r1) + std::abs(r2) < 1e-14) break;
        const double h11 = gss.eval(x), h12 = gst.eval(x), h22 = gtt.eval(x);
        const double det = h11 * h22 - h12 * h12;
        if (std::abs(det) < 1e-14) {
          ok = false;
          break;
        }
        s -= (h22 * r1 - h12 * r2) / det;
        t -= (-h12 * r1 + h11 * r2) / det;
        if (!std::isfinite(s) || !std::isfinite(t)) {
          ok = false;
          break;
        }
      }
      const double u = 1.0 - 2.0 * s - t;
      if (!ok || s <= 1e-8 || t <= 1e-8 || u <= 1e-8) continue;
      const double x[2] = {s, t};
      if (std::abs(gs.eval(x)) + std::abs(gt.eval(x)) > 1e-10) continue;
      bool dup = false;
      for (auto& [cs, ct] : critical)
        if (std::abs(cs - s) + std::abs(ct - t) < 1e-7) dup = true;
      if (!dup) critical.push_back({s, t});
    }
  }
  rep.interiorCriticalPoints = static_cast<int>(critical.size());
  std::vector<double> values;
  for (auto& [s, t] : critical) {
    const double x[2] = {s, t};
    values.push_back(gRestricted.eval(x));
  }
  std::sort(values.begin(), values.end());
  for (double v : values)
    if (rep.interiorCriticalValues.empty() ||
        std::abs(rep.interiorCriticalValues.back() - v) > 1e-7)
      rep.interiorCriticalValues.push_back(v);

  // Boundary of the triangle {s >= 0, t >= 0, 1 - 2s - t >= 0}.
  double bmin = std::numeric_limits<double>::infinity(), bmax = -bmin;
  auto scan1d = [&](auto eval, double lo, double hi) {
    const int steps = 2000;
    for (int i = 0; i <= steps; ++i) {
      const double v = eval(lo + (hi - lo) * i / steps);
      bmin = std::min(bmin, v);
      bmax = std::max(bmax, v);
    }
  };
  scan1d([&](double t) { const double x[2] = {0.0, t}; return gRestricted.eval(x); }, 0.0, 1.0);
  scan1d([&](double s) { const double x[2] = {s, 0.0}; return gRestricted.eval(x); }, 0.0, 0.5);
  scan1d([&](double s) { const double x[2] = {s, 1.0 - 2.0 * s}; return gRestricted.eval(x); },
         0.0, 0.5);
  rep.boundaryMin = bmin;
  rep.boundaryMax = bmax;
  return rep;
}

// ---------------------------------------------------------------------------
// H4 evidence

namespace {

double orbitDistance(const std::vector<QVector>& orbit, std::span<const double> p,
                     double norm) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& w : orbit) {
    double d = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double wi = w[i].toDouble() / norm;
      d += (wi - p[i]) * (wi - p[i]);
    }
    best = std::min(best, std::sqrt(d));
  }
  return best;
}

}  // namespace

H4Report h4Evidence(const SolverOptions& opt) {
  H4Report rep;
  GroupDescriptor h4 = catalog(Family::H4);
  Polynomial R = h4SurrogateInvariant();
  CompiledPolynomial cR(R);
  std::vector<CompiledPolynomial> cGrads;
  for (const auto& d : R.gradient()) cGrads.emplace_back(d);

  Objective obj;
  obj.dim = 4;
  double senseSign = 1.0;
  obj.value = [&](std::span<const double> x) { return senseSign * cR.eval(x); };
  obj.gradient = [&](std::span<const double> x, std::span<double> g) {
    for (int i = 0; i < 4; ++i) g[i] = senseSign * cGrads[i].eval(x);
  };

  auto optimize = [&](double sign) {
    senseSign = sign;
    Rng rng(opt.seed ^ 0x44aa77ull);
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> bestX;
    const int count = std::max(64, opt.startsPerDim * 8);
    for (int s = 0; s < count; ++s) {
      auto u = haltonPoint(s, 4);
      std::vector<double> x(4);
      for (int i = 0; i < 4; ++i) x[i] = 2.0 * u[i] - 1.0 + 0.02 * rng.normal();
      LocalResult lr = minimizeLocal(obj, x, Manifold::sphere(1.0), opt.maxIter);
      if (lr.value < best) {
        best = lr.value;
        bestX = lr.x;
      }
    }
    return std::pair<double, std::vector<double>>(sign * best, bestX);
  };

  auto [minV, minX] = optimize(+1.0);
  auto [maxV, maxX] = optimize(-1.0);
  rep.minValue = minV;
  rep.maxValue = maxV;
  rep.minWitness = minX;
  rep.maxWitness = maxX;
  const double stratTol = 1e-7;
  rep.minStratumDim = stratumDim(h4, minX, stratTol);
  rep.maxStratumDim = stratumDim(h4, maxX, stratTol);

  QVector e1(4, QSqrt5(0));
  e1[0] = QSqrt5(1);
  QVector d11(4, QSqrt5(0));
  d11[0] = QSqrt5(1);
  d11[1] = QSqrt5(1);
  auto orbE1 = vectorOrbit(h4, e1);
  auto orbD = vectorOrbit(h4, d11);
  const double sq2 = std::sqrt(2.0);
  auto classify = [&](std::span<const double> x, double& dist) {
    const double dE = orbitDistance(orbE1, x, 1.0);
    const double dD = orbitDistance(orbD, x, sq2);
    if (dE <= dD) {
      dist = dE;
      return std::string("(1,0,0,0)");
    }
    dist = dD;
    return std::string("(1,1,0,0)/sqrt2");
  };
  rep.minMatchedOrbit = classify(minX, rep.minOrbitDistance);
  rep.maxMatchedOrbit = classify(maxX, rep.maxOrbitDistance);

  // Invariance spot check: values agree across random group translates.
  auto gens = simpleReflections(h4);
  std::vector<Eigen::Matrix4d> gensD;
  for (const auto& m : gens) {
    Eigen::Matrix4d md;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) md(i, j) = m.at(i, j).toDouble();
    gensD.push_back(md);
  }
  Rng rng(opt.seed ^ 0x771ull);
  double dev = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Vector4d x;
    for (int i = 0; i < 4; ++i) x(i) = rng.normal();
    x.normalize();
    std::vector<double> xv{x(0), x(1), x(2), x(3)};
    const double base = cR.eval(xv);
    for (int w = 0; w < 5; ++w) {
      Eigen::Matrix4d G = Eigen::Matrix4d::Identity();
      for (int step = 0; step < 24; ++step)
        G = gensD[rng.nextU64() % gensD.size()] * G;
      Eigen::Vector4d gx = G * x;
      std::vector<double> gv{gx(0), gx(1), gx(2), gx(3)};
      dev = std::max(dev, std::abs(cR.eval(gv) - base));
    }
  }
  rep.invarianceDeviation = dev;
  return rep;
}

}  // namespace strata
