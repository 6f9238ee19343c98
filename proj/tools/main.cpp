#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "strata/lie.hpp"
#include "strata/parabolic.hpp"
#include "strata/reduce.hpp"
#include "strata/selftest.hpp"

using json = nlohmann::ordered_json;
using namespace strata;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitUsage = 64;

struct RunConfig {
  std::uint64_t seed = 0;
  int starts = 16;
  int jobs = 1;
  int maxIter = 600;
  std::string format = "text";
  bool assumeCoercive = false;

  SolverOptions solver() const {
    SolverOptions o;
    o.seed = seed;
    o.startsPerDim = starts;
    o.jobs = jobs;
    o.maxIter = maxIter;
    o.assumeCoercive = assumeCoercive;
    return o;
  }
  bool jsonOut() const { return format == "json"; }
};

// 12 significant digits, stable across runs.
double round12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::stod(buf);
}

json pointJson(const std::vector<double>& p) {
  json a = json::array();
  for (double v : p) a.push_back(round12(v));
  return a;
}

std::vector<double> parsePointList(const std::string& csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t next = csv.find(',', pos);
    if (next == std::string::npos) next = csv.size();
    out.push_back(std::stod(csv.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

bool parseExactPointList(const std::string& csv, std::vector<Rational>& out) {
  out.clear();
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t next = csv.find(',', pos);
    if (next == std::string::npos) next = csv.size();
    std::string tok = csv.substr(pos, next - pos);
    if (tok.find('.') != std::string::npos || tok.find('e') != std::string::npos)
      return false;
    try {
      out.emplace_back(tok);
    } catch (...) {
      return false;
    }
    pos = next + 1;
  }
  return true;
}

Constraint parseConstraint(const std::string& text) {
  if (text.empty() || text == "none") return std::monostate{};
  if (text.rfind("sphere:", 0) == 0)
    return SphereConstraint{std::stod(text.substr(7))};
  if (text.rfind("principal:", 0) == 0)
    return PrincipalConstraint{parsePointList(text.substr(10))};
  throw Error("constraint must be none, sphere:R, or principal:v1,..,vj");
}

Sense parseSense(const std::string& s) {
  if (s == "min") return Sense::Min;
  if (s == "max") return Sense::Max;
  if (s == "feasible" || s == "feasibility") return Sense::Feasibility;
  throw Error("sense must be min, max, or feasible");
}

BasisVariant parseVariant(const std::string& v) {
  if (v == "auto" || v.empty()) return BasisVariant::Auto;
  if (v == "powersum") return BasisVariant::PowerSum;
  if (v == "elementary") return BasisVariant::Elementary;
  if (v == "paper-D") return BasisVariant::PaperD;
  if (v == "F4") return BasisVariant::F4;
  if (v == "H4-surrogate") return BasisVariant::H4Surrogate;
  throw Error("unknown basis variant '" + v + "'");
}

void emit(const RunConfig& cfg, const json& doc, const std::string& text) {
  if (cfg.jsonOut())
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << text;
}

json solutionJson(const Solution& s) {
  json j;
  j["status"] = to_string(s.status);
  j["value"] = round12(s.value);
  j["witness"] = pointJson(s.witness);
  j["pattern"] = s.patternDescription;
  j["witness_stratum_dim"] = s.witnessStratumDim;
  j["residual"] = round12(s.residual);
  j["k_effective"] = s.kEffective;
  j["warnings"] = s.warnings;
  return j;
}

std::string solutionText(const Solution& s) {
  std::ostringstream os;
  os << "status:  " << to_string(s.status) << "\n";
  os << "value:   " << round12(s.value) << "\n";
  os << "witness:";
  for (double w : s.witness) os << " " << round12(w);
  os << "\n";
  os << "pattern: " << s.patternDescription << "  (stratum dim "
     << s.witnessStratumDim << ")\n";
  os << "residual: " << s.residual << "\n";
  for (const auto& w : s.warnings) os << "warning: " << w << "\n";
  return os.str();
}

int exitOf(const Solution& s) {
  return s.status == SolveStatus::InfeasibleNumerically ? kExitInfeasible : kExitOk;
}

int cmdDegrees(const RunConfig& cfg, const std::string& group) {
  GroupDescriptor g = parseGroup(group);
  json j{{"group", g.name()}, {"degrees", g.degrees}, {"order", g.order},
         {"rank", g.rank}, {"essential", g.essential}};
  std::ostringstream os;
  for (std::size_t i = 0; i < g.degrees.size(); ++i)
    os << (i ? "," : "") << g.degrees[i];
  os << "\n";
  emit(cfg, j, os.str());
  return kExitOk;
}

int cmdInvariants(const RunConfig& cfg, const std::string& group,
                  const std::string& variant) {
  GroupDescriptor g = parseGroup(group);
  auto basis = basicInvariants(g, parseVariant(variant));
  json polys = json::array();
  std::ostringstream os;
  for (int i = 0; i < basis.count(); ++i) {
    polys.push_back(json{{"index", i + 1},
                         {"degree", basis.polys[i].totalDegree()},
                         {"poly", basis.polys[i].str()}});
    os << "pi_" << (i + 1) << " (deg " << basis.polys[i].totalDegree()
       << ") = " << basis.polys[i].str() << "\n";
  }
  json j{{"group", g.name()}, {"variant", basis.variantName},
         {"degree_ties", basis.degreeTies}, {"invariants", polys}};
  emit(cfg, j, os.str());
  return kExitOk;
}

int cmdParnum(const RunConfig& cfg, const std::string& group, int d, bool sec) {
  GroupDescriptor g = parseGroup(group);
  ParnumResult r = sec ? secparnum(g, d) : parnum(g, d);
  json j{{"group", g.name()}, {sec ? "k" : "d", d}, {"value", r.value},
         {"witness_nodes", r.witness}, {"witness_type", r.decomposition.str()}};
  std::ostringstream os;
  os << r.value << "  (witness " << r.decomposition.str() << ")\n";
  emit(cfg, j, os.str());
  return kExitOk;
}

int cmdTable1(const RunConfig& cfg, const std::string& group) {
  GroupDescriptor g = parseGroup(group);
  ParabolicBound tb = table1(g);
  json rows = json::array();
  std::ostringstream os;
  os << "G = " << g.name() << "\n";
  for (const auto& r : tb.rows) {
    rows.push_back(json{{"d_lo", r.dLo}, {"d_hi", r.dHi}, {"parnum", r.value},
                        {"witness", r.witness},
                        {"witness_top_degree", r.witnessTopDegree}});
    os << "  d " << r.dLo << " -- " << r.dHi << "   parNum " << r.value << "   W "
       << r.witness << "   d_n(W) " << r.witnessTopDegree << "\n";
  }
  json sec = json::array();
  for (std::size_t k = 0; k < tb.secByK.size(); ++k) {
    sec.push_back(json{{"k", k + 1}, {"secparnum", tb.secByK[k]}});
    os << "  k " << (k + 1) << "   SecParNum " << tb.secByK[k] << "\n";
  }
  emit(cfg, json{{"group", g.name()}, {"rows", rows}, {"sec", sec}}, os.str());
  return kExitOk;
}

int cmdStrata(const RunConfig& cfg, const std::string& group, int k, bool listPatterns,
              bool countFlats) {
  GroupDescriptor g = parseGroup(group);
  json j{{"group", g.name()}, {"k", k}};
  std::ostringstream os;
  if (listPatterns) {
    auto pats = patterns(g.family, g.ambientDim, k);
    json pj = json::array();
    for (const auto& p : pats) {
      pj.push_back(json{{"family", familyName(p.family)},
                        {"multiplicities", p.multiplicities},
                        {"zeros", p.zeros},
                        {"sign", p.signBit},
                        {"free_vars", p.freeVars}});
      os << p.str() << "\n";
    }
    j["patterns"] = pj;
  }
  if (countFlats) {
    json fj = json::array();
    for (int d = 0; d <= std::min(k, g.rank); ++d) {
      const auto fl = flats(g, d);
      fj.push_back(json{{"dim", d}, {"count", fl.size()}});
      os << "dim " << d << ": " << fl.size() << " flats\n";
    }
    j["flats"] = fj;
  }
  emit(cfg, j, os.str());
  return kExitOk;
}

int cmdStratumDim(const RunConfig& cfg, const std::string& group,
                  const std::string& point) {
  GroupDescriptor g = parseGroup(group);
  std::vector<Rational> exact;
  int dim;
  bool wasExact = parseExactPointList(point, exact);
  if (wasExact) {
    dim = stratumDimExact(g, exact);
  } else {
    auto p = parsePointList(point);
    dim = stratumDim(g, p);
  }
  emit(cfg, json{{"group", g.name()}, {"point", point}, {"stratum_dim", dim},
                 {"exact", wasExact}},
       std::to_string(dim) + "\n");
  return kExitOk;
}

int cmdJacobianRank(const RunConfig& cfg, const std::string& group,
                    const std::string& point, int k, const std::string& variant) {
  GroupDescriptor g = parseGroup(group);
  auto basis = basicInvariants(g, parseVariant(variant));
  std::vector<Rational> exact;
  int rank;
  bool wasExact = parseExactPointList(point, exact);
  if (wasExact) {
    rank = jacobianRankExact(basis.polys, exact, k);
  } else {
    auto p = parsePointList(point);
    rank = jacobianRank(basis.polys, p, k);
  }
  emit(cfg, json{{"group", g.name()}, {"point", point}, {"k", k}, {"rank", rank},
                 {"exact", wasExact}},
       std::to_string(rank) + "\n");
  return kExitOk;
}

int cmdSolve(const RunConfig& cfg, const std::string& group,
             const std::string& objective, int k, const std::string& constraint,
             const std::string& sense, const std::string& variant, bool oracle) {
  GroupDescriptor g = parseGroup(group);
  Polynomial F = parsePolynomial(objective, k > 0 ? k : -1);
  Problem p;
  p.group = g;
  p.objective = makeSparseObjective(g, F, parseVariant(variant));
  p.constraint = parseConstraint(constraint);
  p.sense = parseSense(sense);
  Solution s = solveOnStrata(p, cfg.solver());
  json j = solutionJson(s);
  std::string text = solutionText(s);
  if (oracle) {
    Solution b = bruteOracle(p, cfg.solver());
    j["oracle"] = solutionJson(b);
    j["oracle_gap"] = round12(std::abs(b.value - s.value));
    text += "oracle value: " + std::to_string(b.value) + " (gap " +
            std::to_string(std::abs(b.value - s.value)) + ")\n";
  }
  emit(cfg, j, text);
  return exitOf(s);
}

int cmdNonneg(const RunConfig& cfg, const std::string& group,
              const std::string& objective, const std::vector<std::string>& ineqs,
              const std::string& constraint, const std::string& variant) {
  GroupDescriptor g = parseGroup(group);
  Polynomial F = parsePolynomial(objective);
  SparseObjective obj = makeSparseObjective(g, F, parseVariant(variant));
  std::vector<Polynomial> qs;
  for (const auto& s : ineqs) qs.push_back(parsePolynomial(s));
  NonnegReport rep = checkNonneg(obj, qs, parseConstraint(constraint), cfg.solver());
  json j{{"nonneg", rep.nonneg}, {"min_value", round12(rep.minValue)},
         {"witness", pointJson(rep.witness)}, {"pattern", rep.patternDescription}};
  std::ostringstream os;
  os << (rep.nonneg ? "nonneg" : "not-nonneg") << "  min " << round12(rep.minValue)
     << " at " << rep.patternDescription << "\n";
  emit(cfg, j, os.str());
  return kExitOk;
}

int cmdF4(const RunConfig& cfg) {
  F4Report rep = f4Certificate(cfg.solver());
  json j{{"identity_raw_sum", rep.identityRawSum},
         {"identity_squares", rep.identitySquares},
         {"sphere_min", round12(rep.sphereMin)},
         {"sphere_max", round12(rep.sphereMax)},
         {"min_witness", pointJson(rep.minWitness)},
         {"max_witness", pointJson(rep.maxWitness)},
         {"min_stratum_dim", rep.minStratumDim},
         {"max_stratum_dim", rep.maxStratumDim},
         {"interior_critical_points", rep.interiorCriticalPoints},
         {"interior_critical_values", pointJson(rep.interiorCriticalValues)},
         {"boundary_min", round12(rep.boundaryMin)},
         {"boundary_max", round12(rep.boundaryMax)}};
  std::ostringstream os;
  os << "identities: raw-sum " << (rep.identityRawSum ? "ok" : "FAIL") << ", squares "
     << (rep.identitySquares ? "ok" : "FAIL") << "\n";
  os << "pi_2 on S^3: min " << round12(rep.sphereMin) << " (stratum dim "
     << rep.minStratumDim << "), max " << round12(rep.sphereMax) << " (stratum dim "
     << rep.maxStratumDim << ")\n";
  os << "interior critical values:";
  for (double v : rep.interiorCriticalValues) os << " " << round12(v);
  os << "  (" << rep.interiorCriticalPoints << " critical points)\n";
  os << "boundary extremes: [" << round12(rep.boundaryMin) << ", "
     << round12(rep.boundaryMax) << "]\n";
  emit(cfg, j, os.str());
  return kExitOk;
}

int cmdH4(const RunConfig& cfg) {
  H4Report rep = h4Evidence(cfg.solver());
  json j{{"min_value", round12(rep.minValue)},
         {"max_value", round12(rep.maxValue)},
         {"min_witness", pointJson(rep.minWitness)},
         {"max_witness", pointJson(rep.maxWitness)},
         {"min_stratum_dim", rep.minStratumDim},
         {"max_stratum_dim", rep.maxStratumDim},
         {"min_matched_orbit", rep.minMatchedOrbit},
         {"max_matched_orbit", rep.maxMatchedOrbit},
         {"min_orbit_distance", round12(rep.minOrbitDistance)},
         {"max_orbit_distance", round12(rep.maxOrbitDistance)},
         {"invariance_deviation", round12(rep.invarianceDeviation)}};
  std::ostringstream os;
  os << "surrogate on S^3: min " << round12(rep.minValue) << " at orbit of "
     << rep.minMatchedOrbit << " (dist " << rep.minOrbitDistance << ", stratum dim "
     << rep.minStratumDim << ")\n";
  os << "                  max " << round12(rep.maxValue) << " at orbit of "
     << rep.maxMatchedOrbit << " (dist " << rep.maxOrbitDistance << ", stratum dim "
     << rep.maxStratumDim << ")\n";
  os << "invariance deviation: " << rep.invarianceDeviation << "\n";
  emit(cfg, j, os.str());
  return kExitOk;
}

int cmdLieSolve(const RunConfig& cfg, const std::string& kind, int n,
                const std::string& objective, bool pf, const std::string& constraint,
                const std::string& sense, bool oracle) {
  LieKind lk;
  if (kind == "sl")
    lk = LieKind::SL;
  else if (kind == "so")
    lk = LieKind::SO;
  else
    throw Error("kind must be sl or so");
  Polynomial F = parsePolynomial(objective);
  LieProblem lp = lieReduce(lk, n, F, parseConstraint(constraint), parseSense(sense), pf);
  Solution s = solveOnStrata(lp.weylProblem, cfg.solver());
  MatrixPoint A = backMapWitness(lp, s);
  json rows = json::array();
  for (int i = 0; i < A.n(); ++i) {
    json row = json::array();
    for (int jj = 0; jj < A.n(); ++jj) row.push_back(round12(A.A(i, jj)));
    rows.push_back(row);
  }
  json j = solutionJson(s);
  j["weyl_group"] = lp.weylProblem.group.name();
  j["matrix_witness"] = rows;
  std::string text = solutionText(s);
  text += "weyl group: " + lp.weylProblem.group.name() + "\n";
  if (oracle) {
    Solution b = bruteOracle(lp.weylProblem, cfg.solver());
    j["oracle_gap"] = round12(std::abs(b.value - s.value));
    text += "oracle gap: " + std::to_string(std::abs(b.value - s.value)) + "\n";
  }
  emit(cfg, j, text);
  return exitOf(s);
}

int cmdSelftest(const RunConfig& cfg, const std::string& criteria) {
  std::vector<int> which;
  if (!criteria.empty()) {
    std::size_t pos = 0;
    while (pos <= criteria.size()) {
      std::size_t next = criteria.find(',', pos);
      if (next == std::string::npos) next = criteria.size();
      which.push_back(std::stoi(criteria.substr(pos, next - pos)));
      pos = next + 1;
    }
  }
  auto results = runAcceptance(cfg.solver(), std::cerr, which);
  bool allPass = true;
  json arr = json::array();
  for (const auto& r : results) {
    allPass = allPass && r.pass;
    arr.push_back(json{{"id", r.id}, {"name", r.name}, {"pass", r.pass},
                       {"detail", r.detail}, {"seconds", round12(r.seconds)}});
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name
              << "  [" << r.detail << "]  (" << r.seconds << " s)\n";
  }
  if (cfg.jsonOut())
    std::cout << json{{"criteria", arr}, {"pass", allPass}}.dump(2) << "\n";
  return allPass ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reflection-group strata toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "random seed (default 0)");
  app.add_option("--starts", cfg.starts, "multistart count per free variable");
  app.add_option("--jobs", cfg.jobs, "worker parallelism");
  app.add_option("--max-iter", cfg.maxIter, "local iteration cap");
  app.add_option("--format", cfg.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--assume-coercive", cfg.assumeCoercive,
               "allow unconstrained objectives, asserting coercivity");

  std::string group, point, objective, constraint = "none", sense = "min";
  std::string variant = "auto", criteria, kindStr;
  std::vector<std::string> ineqs;
  int dArg = 0, kArg = 0, nArg = 0;
  bool listPatterns = false, countFlats = false, oracle = false, pfFlag = false;

  auto* degrees = app.add_subcommand("degrees", "Chevalley degrees of a group");
  degrees->add_option("group", group)->required();

  auto* invariants = app.add_subcommand("invariants", "basic invariant polynomials");
  invariants->add_option("group", group)->required();
  invariants->add_option("--variant", variant);

  auto* parnumCmd = app.add_subcommand("parnum", "parabolic stratum bound at degree d");
  parnumCmd->add_option("group", group)->required();
  parnumCmd->add_option("d", dArg)->required();

  auto* secCmd = app.add_subcommand("secparnum", "parabolic bound at 2*d_k");
  secCmd->add_option("group", group)->required();
  secCmd->add_option("k", kArg)->required();

  auto* tableCmd = app.add_subcommand("table1", "full parabolic bound table");
  tableCmd->add_option("group", group)->required();

  auto* strataCmd = app.add_subcommand("strata", "stratum parameterizations");
  strataCmd->add_option("group", group)->required();
  strataCmd->add_option("k", kArg)->required();
  strataCmd->add_flag("--list-patterns", listPatterns);
  strataCmd->add_flag("--count-flats", countFlats);

  auto* sdCmd = app.add_subcommand("stratum-dim", "stratum dimension of a point");
  sdCmd->add_option("group", group)->required();
  sdCmd->add_option("point", point)->required();

  auto* jrCmd = app.add_subcommand("jacobian-rank", "rank of Jac(pi_1..pi_{k+1})");
  jrCmd->add_option("group", group)->required();
  jrCmd->add_option("point", point)->required();
  jrCmd->add_option("k", kArg)->required();
  jrCmd->add_option("--variant", variant);

  auto* solveCmd = app.add_subcommand("solve", "optimize a sparse invariant objective");
  solveCmd->add_option("--group", group)->required();
  solveCmd->add_option("--objective", objective, "polynomial in y1..yk")->required();
  solveCmd->add_option("--k", kArg, "sparsity (default: inferred)");
  solveCmd->add_option("--constraint", constraint, "none | sphere:R | principal:v1,..");
  solveCmd->add_option("--sense", sense, "min | max | feasible");
  solveCmd->add_option("--variant", variant);
  solveCmd->add_flag("--oracle", oracle, "also run the full-dimensional oracle");

  auto* nonnegCmd = app.add_subcommand("nonneg", "nonnegativity over strata");
  nonnegCmd->add_option("--group", group)->required();
  nonnegCmd->add_option("--objective", objective)->required();
  nonnegCmd->add_option("--ineq", ineqs, "inequality constraints g(y) >= 0");
  nonnegCmd->add_option("--constraint", constraint);
  nonnegCmd->add_option("--variant", variant);

  auto* f4Cmd = app.add_subcommand("f4-certificate", "the F4 computation chain");
  auto* h4Cmd = app.add_subcommand("h4-evidence", "the H4 surrogate evidence");

  auto* lieCmd = app.add_subcommand("lie-solve", "adjoint-invariant problems");
  lieCmd->add_option("--kind", kindStr, "sl | so")->required();
  lieCmd->add_option("--n", nArg)->required();
  lieCmd->add_option("--objective", objective, "polynomial in t-coordinates")->required();
  lieCmd->add_flag("--pfaffian", pfFlag, "last variable is the Pfaffian (so, even n)");
  lieCmd->add_option("--constraint", constraint);
  lieCmd->add_option("--sense", sense);
  lieCmd->add_flag("--oracle", oracle);

  auto* selftestCmd = app.add_subcommand("selftest", "run the acceptance suite");
  selftestCmd->add_option("--criteria", criteria, "comma list, default all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*degrees) return cmdDegrees(cfg, group);
    if (*invariants) return cmdInvariants(cfg, group, variant);
    if (*parnumCmd) return cmdParnum(cfg, group, dArg, false);
    if (*secCmd) return cmdParnum(cfg, group, kArg, true);
    if (*tableCmd) return cmdTable1(cfg, group);
    if (*strataCmd) return cmdStrata(cfg, group, kArg, listPatterns, countFlats);
    if (*sdCmd) return cmdStratumDim(cfg, group, point);
    if (*jrCmd) return cmdJacobianRank(cfg, group, point, kArg, variant);
    if (*solveCmd)
      return cmdSolve(cfg, group, objective, kArg, constraint, sense, variant, oracle);
    if (*nonnegCmd) return cmdNonneg(cfg, group, objective, ineqs, constraint, variant);
    if (*f4Cmd) return cmdF4(cfg);
    if (*h4Cmd) return cmdH4(cfg);
    if (*lieCmd)
      return cmdLieSolve(cfg, kindStr, nArg, objective, pfFlag, constraint, sense, oracle);
    if (*selftestCmd) return cmdSelftest(cfg, criteria);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}
