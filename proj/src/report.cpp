#include "clocus/report.hpp"

#include <array>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "clocus/constructions.hpp"
#include "clocus/criticalloci.hpp"
#include "clocus/idealanalysis.hpp"
#include "clocus/verification.hpp"

namespace clocus {

std::string scenarioModeName(ScenarioMode mode) {
  switch (mode) {
    case ScenarioMode::Analyze: return "analyze";
    case ScenarioMode::VerifyClassification: return "verify-classification";
    case ScenarioMode::ConstructScroll: return "construct-scroll";
    case ScenarioMode::ConstructCubic: return "construct-cubic";
    case ScenarioMode::ConstructFourLines: return "construct-four-lines";
  }
  throw ConfigError("unknown scenario mode");
}

ScenarioMode scenarioModeFromName(const std::string& name) {
  for (ScenarioMode m :
       {ScenarioMode::Analyze, ScenarioMode::VerifyClassification,
        ScenarioMode::ConstructScroll, ScenarioMode::ConstructCubic,
        ScenarioMode::ConstructFourLines})
    if (scenarioModeName(m) == name) return m;
  throw ConfigError("unknown mode \"" + name + "\"");
}

namespace {

[[noreturn]] void bad(const std::string& msg) { throw ConfigError(msg); }

void requireKeys(const Json& v, std::initializer_list<const char*> allowed,
                 const std::string& where) {
  if (!v.is_object()) bad(where + " must be a JSON object");
  for (const auto& item : v.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || item.key() == a;
    if (!known) bad(where + " has unknown key \"" + item.key() + "\"");
  }
}

long long intAt(const Json& v, const std::string& where) {
  if (!v.is_number_integer() && !v.is_number_unsigned())
    bad(where + " must be an integer");
  return v.get<long long>();
}

FieldSpec parseFieldSpec(const Json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "rationals" || s == "QQ") return FieldSpec::rationals();
    bad("field string must be \"rationals\" (alias \"QQ\")");
  }
  long long p = 0;
  if (v.is_object()) {
    requireKeys(v, {"prime"}, "field");
    if (!v.contains("prime")) bad("field object must be {\"prime\": p}");
    p = intAt(v["prime"], "field.prime");
  } else if (v.is_number_integer() || v.is_number_unsigned()) {
    p = v.get<long long>();
  } else {
    bad("field must be \"rationals\", a prime, or {\"prime\": p}");
  }
  if (p < 2 || p > std::numeric_limits<std::uint32_t>::max())
    bad("field modulus " + std::to_string(p) + " out of range");
  return FieldSpec::prime(static_cast<std::uint32_t>(p));  // validates primality
}

// Scalars arrive as integers or "a/b" strings (also plain "a").
template <class S>
S parseScalar(const Json& v, const Field<S>& F, const std::string& where) {
  if (v.is_number_integer() || v.is_number_unsigned())
    return F.from(v.get<long long>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    try {
      std::size_t used = 0;
      const std::string numTxt = s.substr(0, slash);
      const long long num = std::stoll(numTxt, &used);
      if (used != numTxt.size()) throw std::invalid_argument(s);
      long long den = 1;
      if (slash != std::string::npos) {
        const std::string denTxt = s.substr(slash + 1);
        den = std::stoll(denTxt, &used);
        if (used != denTxt.size()) throw std::invalid_argument(s);
      }
      if (den == 0) bad(where + ": zero denominator in \"" + s + "\"");
      return F.fromRatio(num, den);
    } catch (const ConfigError&) {
      throw;
    } catch (const SingularityError& e) {
      bad(where + ": " + e.what());
    } catch (const std::exception&) {
      bad(where + ": cannot parse scalar \"" + s + "\"");
    }
  }
  bad(where + " must be an integer or an \"a/b\" string");
}

template <class S>
MatrixX<S> parseMatrix(const Json& v, const Field<S>& F,
                       const std::string& where) {
  if (!v.is_array() || v.empty()) bad(where + " must be an array of rows");
  std::size_t cols = 0;
  for (const Json& row : v) {
    if (!row.is_array() || row.empty())
      bad(where + " rows must be nonempty arrays");
    if (cols == 0) cols = row.size();
    if (row.size() != cols) bad(where + " rows must share one length");
  }
  MatrixX<S> m(static_cast<int>(v.size()), static_cast<int>(cols));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      m(r, c) = parseScalar<S>(v[r][c], F,
                               where + "[" + std::to_string(r) + "][" +
                                   std::to_string(c) + "]");
  return m;
}

// A linear form as its coefficient vector, one entry per variable.
template <class S>
MultiPoly<S> parseLinearForm(const Json& v, const Field<S>& F, int numVars,
                             const std::string& where) {
  if (!v.is_array() || static_cast<int>(v.size()) != numVars)
    bad(where + " must list " + std::to_string(numVars) + " coefficients");
  MultiPoly<S> f = MultiPoly<S>::zero(numVars);
  for (int i = 0; i < numVars; ++i) {
    const S c = parseScalar<S>(v[i], F, where + "[" + std::to_string(i) + "]");
    if (!scalarIsZero(c)) f = f + MultiPoly<S>::variable(numVars, i).scaled(c);
  }
  return f;
}

Json scalarToJson(const Fp& v) {
  return Json(v.value());
}

Json scalarToJson(const Rational& v) {
  const auto num = boost::multiprecision::numerator(v);
  const auto den = boost::multiprecision::denominator(v);
  if (den == 1 && num >= std::numeric_limits<std::int64_t>::min() &&
      num <= std::numeric_limits<std::int64_t>::max())
    return Json(num.template convert_to<std::int64_t>());
  return Json(num.str() + "/" + den.str());
}

template <class S>
Json matrixToJson(const MatrixX<S>& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(scalarToJson(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class S>
Json camerasToJson(const std::vector<Projection<S>>& ps) {
  Json out = Json::array();
  for (const Projection<S>& p : ps) out.push_back(matrixToJson(p.matrix()));
  return out;
}

void pushCheck(Json& checks, bool& anyFailed, const std::string& name,
               bool pass, const std::string& detail) {
  Json entry;
  entry["name"] = name;
  entry["pass"] = pass;
  entry["detail"] = detail;
  checks.push_back(std::move(entry));
  anyFailed = anyFailed || !pass;
}

template <class S>
bool centersPairwiseDisjoint(const CriticalSetup<S>& setup) {
  const int n = setup.views();
  std::vector<MatrixX<S>> bases;
  bases.reserve(n);
  for (int i = 0; i < n; ++i)
    bases.push_back(kernelBasis<S>(setup.Qs[i].matrix()));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int joint =
          static_cast<int>(bases[i].cols() + bases[j].cols());
      if (joint > setup.k + 1) return false;  // forced to meet by dimension
      MatrixX<S> stacked(setup.k + 1, joint);
      stacked.leftCols(bases[i].cols()) = bases[i];
      stacked.rightCols(bases[j].cols()) = bases[j];
      if (rank<S>(stacked) != joint) return false;
    }
  return true;
}

template <class S>
struct AnalysisOutcome {
  std::optional<CriticalIdeal<S>> ideal;
  std::optional<QuarticPositionReport> position;
};

// Shared analysis body: setup echo, numeric invariants, bounds class,
// center containment, and (over a small prime field) the point survey.
// Appends the analyze-mode checks; construct modes add their own on top.
template <class S>
AnalysisOutcome<S> analyzeInto(Json& report, Json& checks, bool& anyFailed,
                               const CriticalSetup<S>& setup,
                               const Field<S>& F) {
  AnalysisOutcome<S> outcome;
  const int n = setup.views();
  const int k = setup.k;

  Json setupJson;
  setupJson["views"] = n;
  setupJson["k"] = k;
  setupJson["h"] = setup.hs;
  setupJson["firstCameras"] = camerasToJson(setup.Ps);
  setupJson["secondCameras"] = camerasToJson(setup.Qs);
  report["setup"] = std::move(setupJson);

  const BoundsReport bounds = boundsClassifier(n, k, setup.hs);
  Json boundsJson;
  boundsJson["classification"] = boundsClassName(bounds.cls);
  boundsJson["codimension"] = bounds.codim;
  boundsJson["reason"] = bounds.reason;
  report["bounds"] = std::move(boundsJson);

  if (setup.codim() < 1) {
    // No proper determinantal locus to analyze; report the class and stop.
    pushCheck(checks, anyFailed, "profile-feasible", false, bounds.reason);
    return outcome;
  }

  outcome.ideal = criticalIdeal(setup);
  const CriticalIdeal<S>& ideal = *outcome.ideal;

  Json inv;
  inv["codimension"] = setup.codim();
  inv["matrixRows"] = ideal.reduction.N.rows();
  inv["matrixCols"] = ideal.reduction.N.cols();
  inv["generators"] = static_cast<int>(ideal.generators.size());
  inv["generatorDegree"] = n;
  inv["expectedDimension"] = ideal.expectedDim;
  inv["expectedDegree"] = ideal.expectedDeg;
  std::optional<DimensionDegree> measured;
  std::string hilbertNote;
  try {
    const HilbertProfile profile = hilbertFunctionAuto(ideal.generators, n + 4);
    inv["hilbertFunction"] = profile.values;
    measured = dimensionAndDegree(profile);
    inv["measuredDimension"] = measured->dim;
    inv["measuredDegree"] = measured->degree;
  } catch (const NeedsHigherDegreeError& e) {
    hilbertNote = e.what();
    inv["hilbertFunction"] = nullptr;
    inv["measuredDimension"] = nullptr;
    inv["measuredDegree"] = nullptr;
  }
  report["invariants"] = std::move(inv);

  const std::vector<bool> contained = centerContainment(setup, ideal.generators);
  bool allContained = true;
  for (bool c : contained) allContained = allContained && c;
  Json centersJson;
  centersJson["contained"] = contained;
  centersJson["pairwiseDisjoint"] = centersPairwiseDisjoint(setup);
  report["centers"] = std::move(centersJson);

  if (n == 3) {
    try {
      const StructureReport<S> st = structureConstraints(setup);
      Json stJson;
      stJson["c"] = st.c;
      stJson["eps"] = st.eps;
      stJson["canonicalSplit"] = st.canonicalSplit;
      stJson["columnPure"] = std::vector<bool>(st.columnPure.begin(),
                                               st.columnPure.end());
      stJson["zeroBottomLeft"] = st.zeroBottomLeft;
      stJson["zeroMidSecond"] = st.zeroMidSecond;
      stJson["zeroThird"] = st.zeroThird;
      stJson["centersPairwiseDisjoint"] = st.centersPairwiseDisjoint;
      stJson["generic"] = st.generic;
      if (!st.notes.empty()) stJson["notes"] = st.notes;
      report["structure"] = std::move(stJson);
    } catch (const DimensionMismatchError&) {
      // not a trifocal shape the normal form covers; skip the section
    }
  }

  if (k == 3 && setup.hs == std::vector<int>{1, 1, 1, 1}) {
    try {
      const QuarticPositionReport pos = quarticGenericPosition(setup);
      outcome.position = pos;
      Json posJson;
      posJson["skewCenters"] = pos.skewCenters;
      posJson["residualsExist"] = pos.residualsExist;
      posJson["transversalContacts"] = pos.transversalContacts;
      posJson["missesFourthLine"] = pos.missesFourthLine;
      posJson["generic"] = pos.generic;
      report["position"] = std::move(posJson);
    } catch (const Error&) {
      // position probe is best-effort; a degenerate reduction just omits it
    }
  }

  if constexpr (std::is_same_v<S, Fp>) {
    const std::uint32_t p = F.characteristic();
    Json sj;
    if (p <= 31 && k <= 4 && p > static_cast<std::uint32_t>(n)) {
      const SmoothnessSurvey<S> survey =
          smoothnessSurvey(ideal.generators, setup.codim(), F);
      sj["surveyed"] = true;
      sj["pointsOnVariety"] = survey.pointsOnVariety;
      sj["singularCount"] = static_cast<long long>(survey.singularPoints.size());
      Json pts = Json::array();
      const std::size_t listed = std::min<std::size_t>(survey.singularPoints.size(), 50);
      for (std::size_t i = 0; i < listed; ++i) {
        Json pt = Json::array();
        for (int r = 0; r < survey.singularPoints[i].rows(); ++r)
          pt.push_back(scalarToJson(survey.singularPoints[i](r)));
        pts.push_back(std::move(pt));
      }
      sj["singularPoints"] = std::move(pts);
      Json hist;
      for (const auto& [rk, count] : survey.rankHistogram)
        hist[std::to_string(rk)] = count;
      sj["jacobianRankCounts"] = std::move(hist);
    } else {
      sj["surveyed"] = false;
      sj["reason"] = "point survey needs k <= 4 and n < p <= 31";
    }
    report["smoothness"] = std::move(sj);
  }

  const bool dimOk = measured && measured->dim == ideal.expectedDim;
  const bool degOk = measured && measured->degree == ideal.expectedDeg;
  std::ostringstream ddDetail;
  if (measured)
    ddDetail << "expected (" << ideal.expectedDim << ", " << ideal.expectedDeg
             << "), measured (" << measured->dim << ", " << measured->degree
             << ")";
  else
    ddDetail << "Hilbert fit did not stabilize: " << hilbertNote;
  pushCheck(checks, anyFailed, "dimension-matches-expected", dimOk,
            ddDetail.str());
  pushCheck(checks, anyFailed, "degree-matches-expected", degOk,
            ddDetail.str());
  pushCheck(checks, anyFailed, "centers-contained", allContained,
            allContained ? "every second-tuple center lies on the locus"
                         : "some center misses the locus");
  pushCheck(checks, anyFailed, "profile-feasible",
            bounds.cls != BoundsClass::ProfileInfeasible, bounds.reason);
  return outcome;
}

template <class S>
CriticalSetup<S> parseSetupJson(const Json& v, const Field<S>& F) {
  requireKeys(v, {"firstCameras", "secondCameras"}, "setup");
  if (!v.contains("firstCameras") || !v.contains("secondCameras"))
    bad("setup needs firstCameras and secondCameras");
  auto parseCams = [&](const Json& arr, const std::string& where) {
    if (!arr.is_array() || arr.size() < 2)
      bad(where + " must list at least two cameras");
    std::vector<Projection<S>> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string slot = where + "[" + std::to_string(i) + "]";
      try {
        out.push_back(makeProjection<S>(parseMatrix<S>(arr[i], F, slot)));
      } catch (const ConfigError&) {
        throw;
      } catch (const Error& e) {
        bad(slot + ": " + e.what());
      }
    }
    return out;
  };
  auto Ps = parseCams(v["firstCameras"], "setup.firstCameras");
  auto Qs = parseCams(v["secondCameras"], "setup.secondCameras");
  try {
    return CriticalSetup<S>::make(std::move(Ps), std::move(Qs));
  } catch (const Error& e) {
    bad(std::string("setup: ") + e.what());
  }
}

template <class S>
CriticalSetup<S> setupForAnalyze(const ScenarioConfig& cfg, const Field<S>& F,
                                 SplitMix64& rng) {
  if (!cfg.setup.is_null()) return parseSetupJson<S>(cfg.setup, F);
  requireKeys(cfg.random, {"k", "h"}, "random");
  if (!cfg.random.contains("k") || !cfg.random.contains("h"))
    bad("random needs k and h");
  const int k = static_cast<int>(intAt(cfg.random["k"], "random.k"));
  if (k < 2 || k > 24) bad("random.k must lie in [2, 24]");
  const Json& hJson = cfg.random["h"];
  if (!hJson.is_array() || hJson.size() < 2)
    bad("random.h must list at least two target dimensions");
  std::vector<int> hs;
  int sumH = 0;
  for (std::size_t i = 0; i < hJson.size(); ++i) {
    const int h = static_cast<int>(
        intAt(hJson[i], "random.h[" + std::to_string(i) + "]"));
    if (h < 1 || h >= k) bad("random.h entries must satisfy 1 <= h <= k-1");
    hs.push_back(h);
    sumH += h;
  }
  if (sumH <= k)
    bad("profile has no proper critical locus: sum h = " +
        std::to_string(sumH) + " <= k = " + std::to_string(k));
  return sampleCriticalSetup(F, rng, k, hs);
}

template <class S>
void runConstructScroll(const ScenarioConfig& cfg, const Field<S>& F,
                        SplitMix64& rng, Json& report, Json& checks,
                        bool& anyFailed) {
  requireKeys(cfg.target, {"matrix", "split"}, "target");
  if (!cfg.target.contains("matrix")) bad("target needs a matrix");
  const Json& rowsJson = cfg.target["matrix"];
  if (!rowsJson.is_array() || rowsJson.size() < 2)
    bad("target.matrix must list at least two rows");
  int numVars = 0;
  for (const Json& row : rowsJson) {
    if (!row.is_array() || row.size() != 2)
      bad("target.matrix rows must hold exactly two linear forms");
    for (const Json& form : row) {
      if (!form.is_array() || form.empty())
        bad("target.matrix entries must be coefficient arrays");
      if (numVars == 0) numVars = static_cast<int>(form.size());
      if (static_cast<int>(form.size()) != numVars)
        bad("target.matrix forms must share one variable count");
    }
  }
  PolyMatrix<S> m(static_cast<int>(rowsJson.size()), 2, numVars);
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < 2; ++c)
      m.set(r, c,
            parseLinearForm<S>(rowsJson[r][c], F, numVars,
                               "target.matrix[" + std::to_string(r) + "][" +
                                   std::to_string(c) + "]"));
  const ScrollMatrix<S> scroll = ScrollMatrix<S>::make(std::move(m));

  std::optional<int> h1;
  if (cfg.target.contains("split"))
    h1 = static_cast<int>(intAt(cfg.target["split"], "target.split"));

  Json targetJson;
  targetJson["kind"] = "minimal-degree-matrix";
  targetJson["ambient"] = scroll.ambientDim();
  targetJson["codimension"] = scroll.codim();
  report["target"] = std::move(targetJson);

  const CriticalSetup<S> setup =
      projectionsFromMinimalDegree(scroll, F, rng, h1);
  const auto outcome = analyzeInto(report, checks, anyFailed, setup, F);

  std::string why;
  const int dMax = setup.views() + 2;
  const bool match =
      outcome.ideal &&
      idealsMatchThroughDegree(scroll.minors(), outcome.ideal->generators,
                               dMax, &why);
  pushCheck(checks, anyFailed, "target-ideal-recovered", match,
            match ? "graded pieces of the target and critical ideals agree "
                    "through degree " + std::to_string(dMax)
                  : why);
}

template <class S>
void runConstructCubic(const ScenarioConfig& cfg, const Field<S>& F,
                       SplitMix64& rng, Json& report, Json& checks,
                       bool& anyFailed) {
  requireKeys(cfg.target, {"L", "M"}, "target");
  if (!cfg.target.contains("L") || !cfg.target.contains("M"))
    bad("target needs L and M, three linear forms each");
  auto parseTriple = [&](const Json& arr, const std::string& where) {
    if (!arr.is_array() || arr.size() != 3)
      bad(where + " must list exactly three linear forms");
    const Json& first = arr[0];
    if (!first.is_array() || first.empty())
      bad(where + " entries must be coefficient arrays");
    const int numVars = static_cast<int>(first.size());
    std::array<MultiPoly<S>, 3> out{MultiPoly<S>::zero(numVars),
                                    MultiPoly<S>::zero(numVars),
                                    MultiPoly<S>::zero(numVars)};
    for (int i = 0; i < 3; ++i)
      out[i] = parseLinearForm<S>(arr[i], F, numVars,
                                  where + "[" + std::to_string(i) + "]");
    return out;
  };
  auto L = parseTriple(cfg.target["L"], "target.L");
  auto M = parseTriple(cfg.target["M"], "target.M");
  const CayleySalmonForm<S> cs =
      CayleySalmonForm<S>::make(std::move(L), std::move(M));

  Json targetJson;
  targetJson["kind"] = "cayley-salmon-cubic";
  targetJson["cubic"] = cs.cubic().toString("x");
  report["target"] = std::move(targetJson);

  const CriticalSetup<S> setup = projectionsFromCubic(cs, F, rng);
  const auto outcome = analyzeInto(report, checks, anyFailed, setup, F);

  std::string why;
  const int dMax = setup.views() + 2;
  const std::vector<MultiPoly<S>> target{cs.cubic()};
  const bool match =
      outcome.ideal &&
      idealsMatchThroughDegree(target, outcome.ideal->generators, dMax, &why);
  pushCheck(checks, anyFailed, "target-ideal-recovered", match,
            match ? "graded pieces of the cubic and critical ideals agree "
                    "through degree " + std::to_string(dMax)
                  : why);
}

template <class S>
void runConstructFourLines(const ScenarioConfig& cfg, const Field<S>& F,
                           SplitMix64& rng, Json& report, Json& checks,
                           bool& anyFailed) {
  requireKeys(cfg.target, {"lines"}, "target");
  if (!cfg.target.contains("lines")) bad("target needs lines");
  const Json& linesJson = cfg.target["lines"];
  if (!linesJson.is_array() || linesJson.size() != 4)
    bad("target.lines must list exactly four lines");
  std::array<std::array<MultiPoly<S>, 2>, 4> forms{};
  for (int i = 0; i < 4; ++i) {
    const Json& pair = linesJson[i];
    if (!pair.is_array() || pair.size() != 2)
      bad("each line needs exactly two linear forms");
    for (int j = 0; j < 2; ++j)
      forms[i][j] = parseLinearForm<S>(
          pair[j], F, 4,
          "target.lines[" + std::to_string(i) + "][" + std::to_string(j) +
              "]");
  }
  const FourLines<S> lines = FourLines<S>::make(std::move(forms));

  Json targetJson;
  targetJson["kind"] = "four-skew-lines";
  report["target"] = std::move(targetJson);

  const FourLinesRealization<S> made = projectionsFromFourLines(lines, F, rng);
  const auto outcome = analyzeInto(report, checks, anyFailed, made.setup, F);

  bool recover = true;
  for (int i = 0; i < 4; ++i) {
    const MatrixX<S> stacked =
        stackRows<S>(made.setup.Qs[i].matrix(), lines.lineCamera(i));
    recover = recover && rank<S>(stacked) == 2;
  }
  pushCheck(checks, anyFailed, "centers-recover-lines", recover,
            recover ? "each second-tuple center equals its input line"
                    : "some center drifted off its input line");

  std::string why;
  const int dMax = made.setup.views() + 2;
  const std::vector<MultiPoly<S>> target{
      polyDeterminant(fourLinesMatrix(lines, made.mixing))};
  const bool match =
      outcome.ideal &&
      idealsMatchThroughDegree(target, outcome.ideal->generators, dMax, &why);
  pushCheck(checks, anyFailed, "target-ideal-recovered", match,
            match ? "graded pieces of the quartic and critical ideals agree "
                    "through degree " + std::to_string(dMax)
                  : why);

  std::string posDetail = "skew/residuals/contacts/misses = ";
  if (outcome.position) {
    const QuarticPositionReport& pos = *outcome.position;
    auto mark = [](bool b) { return b ? "+" : "-"; };
    posDetail += std::string(mark(pos.skewCenters)) + mark(pos.residualsExist) +
                 mark(pos.transversalContacts) + mark(pos.missesFourthLine);
    pushCheck(checks, anyFailed, "residual-cubic-geometry", pos.generic,
              posDetail);
  } else {
    pushCheck(checks, anyFailed, "residual-cubic-geometry", false,
              "position probe failed to run");
  }
}

template <class S>
void runTyped(const ScenarioConfig& cfg, const Field<S>& F, Json& report,
              Json& checks, bool& anyFailed) {
  SplitMix64 rng(cfg.seed);
  switch (cfg.mode) {
    case ScenarioMode::Analyze: {
      const CriticalSetup<S> setup = setupForAnalyze(cfg, F, rng);
      analyzeInto(report, checks, anyFailed, setup, F);
      return;
    }
    case ScenarioMode::ConstructScroll:
      runConstructScroll(cfg, F, rng, report, checks, anyFailed);
      return;
    case ScenarioMode::ConstructCubic:
      runConstructCubic(cfg, F, rng, report, checks, anyFailed);
      return;
    case ScenarioMode::ConstructFourLines:
      runConstructFourLines(cfg, F, rng, report, checks, anyFailed);
      return;
    case ScenarioMode::VerifyClassification:
      break;  // handled before the typed dispatch
  }
  throw ConfigError("mode not handled");
}

}  // namespace

Json ScenarioConfig::echo() const {
  Json doc;
  doc["version"] = version;
  doc["mode"] = scenarioModeName(mode);
  if (field.kind == FieldKind::Rationals) {
    doc["field"] = "rationals";
  } else {
    Json f;
    f["prime"] = field.modulus;
    doc["field"] = std::move(f);
  }
  doc["seed"] = seed;
  if (!setup.is_null()) doc["setup"] = setup;
  if (!random.is_null()) doc["random"] = random;
  if (!target.is_null()) doc["target"] = target;
  if (outputPath) doc["output"] = *outputPath;
  return doc;
}

ScenarioConfig parseScenarioConfig(const Json& doc) {
  requireKeys(doc,
              {"version", "mode", "field", "seed", "setup", "random", "target",
               "output"},
              "config");
  ScenarioConfig cfg;
  if (!doc.contains("version"))
    bad("config needs an integer version (current: " +
        std::to_string(kConfigVersion) + ")");
  cfg.version = static_cast<int>(intAt(doc["version"], "version"));
  if (cfg.version != kConfigVersion)
    bad("unsupported config version " + std::to_string(cfg.version) +
        "; this build reads version " + std::to_string(kConfigVersion));
  if (!doc.contains("mode")|| !doc["mode"].is_string())
    bad("config needs a mode string");
  cfg.mode = scenarioModeFromName(doc["mode"].get<std::string>());
  if (doc.contains("field")) cfg.field = parseFieldSpec(doc["field"]);
  if (doc.contains("seed")) {
    const long long s = intAt(doc["seed"], "seed");
    if (s < 0) bad("seed must be nonnegative");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  if (doc.contains("setup")) cfg.setup = doc["setup"];
  if (doc.contains("random")) cfg.random = doc["random"];
  if (doc.contains("target")) cfg.target = doc["target"];
  if (doc.contains("output")) {
    if (!doc["output"].is_string()) bad("output must be a path string");
    cfg.outputPath = doc["output"].get<std::string>();
  }

  const bool hasSetup = !cfg.setup.is_null();
  const bool hasRandom = !cfg.random.is_null();
  const bool hasTarget = !cfg.target.is_null();
  switch (cfg.mode) {
    case ScenarioMode::Analyze:
      if (hasTarget) bad("analyze takes no target");
      if (hasSetup == hasRandom)
        bad("analyze needs exactly one of setup or random");
      break;
    case ScenarioMode::VerifyClassification:
      if (hasSetup || hasRandom || hasTarget)
        bad("verify-classification takes no setup, random, or target");
      break;
    case ScenarioMode::ConstructScroll:
    case ScenarioMode::ConstructCubic:
    case ScenarioMode::ConstructFourLines:
      if (hasSetup || hasRandom)
        bad("construct modes take a target, not setup or random");
      if (!hasTarget) bad("construct modes need a target");
      break;
  }
  return cfg;
}

ScenarioConfig loadScenarioConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parseScenarioConfig(doc);
}

ScenarioResult runScenario(const ScenarioConfig& config) {
  Json report;
  report["tool"] = "clocus";
  report["version"] = kToolVersion;
  report["mode"] = scenarioModeName(config.mode);
  report["field"] = config.field.describe();
  report["seed"] = config.seed;
  report["config"] = config.echo();

  Json checks = Json::array();
  bool anyFailed = false;

  if (config.mode == ScenarioMode::VerifyClassification) {
    if (config.field.kind != FieldKind::PrimeField || config.field.modulus < 11)
      throw ConfigError(
          "verify-classification measures over GF(p) with p >= 11");
    SuiteOptions options;
    options.seed = config.seed;
    options.measurePrime = config.field.modulus;
    for (const CheckResult& r : classificationSuite(options))
      pushCheck(checks, anyFailed, r.name, r.passed, r.detail);
  } else if (config.field.kind == FieldKind::PrimeField) {
    const Field<Fp> F(config.field);
    runTyped<Fp>(config, F, report, checks, anyFailed);
  } else {
    const Field<Rational> F(config.field);
    runTyped<Rational>(config, F, report, checks, anyFailed);
  }

  report["checks"] = std::move(checks);
  report["verdict"] = anyFailed ? "FAIL" : "PASS";
  return ScenarioResult{std::move(report), anyFailed};
}

std::string renderReportJson(const Json& report) {
  return report.dump(2) + "\n";
}

std::string renderReportText(const Json& report) {
  std::ostringstream out;
  out << report.value("tool", "clocus") << " " << report.value("version", "")
      << "  mode=" << report.value("mode", "")
      << "  field=" << report.value("field", "") << "  seed=" << report["seed"]
      << "\n";
  if (report.contains("target") && report["target"].contains("kind"))
    out << "target: " << report["target"]["kind"].get<std::string>() << "\n";
  if (report.contains("setup")) {
    const Json& s = report["setup"];
    out << "setup: views=" << s["views"] << " k=" << s["k"]
        << " h=" << s["h"].dump() << "\n";
  }
  if (report.contains("invariants")) {
    const Json& inv = report["invariants"];
    out << "invariants: expected (dim, deg) = (" << inv["expectedDimension"]
        << ", " << inv["expectedDegree"] << "), measured ("
        << inv["measuredDimension"] << ", " << inv["measuredDegree"] << ")\n";
  }
  if (report.contains("bounds"))
    out << "bounds: " << report["bounds"]["classification"].get<std::string>()
        << " (" << report["bounds"]["reason"].get<std::string>() << ")\n";
  if (report.contains("smoothness") &&
      report["smoothness"].value("surveyed", false)) {
    const Json& sj = report["smoothness"];
    out << "survey: " << sj["pointsOnVariety"] << " rational points, "
        << sj["singularCount"] << " singular\n";
  }
  if (report.contains("checks"))
    for (const Json& c : report["checks"])
      out << (c.value("pass", false) ? "PASS  " : "FAIL  ")
          << c.value("name", "") << " -- " << c.value("detail", "") << "\n";
  out << "verdict: " << report.value("verdict", "") << "\n";
  return out.str();
}

}  // namespace clocus
