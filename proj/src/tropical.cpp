#include "newtonscope/tropical.hpp"

#include <algorithm>
#include <json.hpp>

namespace newtonscope {

MonomialMapChoice MonomialMapChoice::random() {
  MonomialMapChoice c;
  c.kind = Kind::Random;
  return c;
}

MonomialMapChoice MonomialMapChoice::given(std::vector<std::vector<long long>> A) {
  MonomialMapChoice c;
  c.kind = Kind::Given;
  c.matrix = std::move(A);
  return c;
}

std::vector<std::vector<long long>> randomUnimodularMap(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("randomUnimodularMap needs n >= 1");
  std::vector<std::vector<long long>> A(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) A[i][i] = 1;
  if (n == 1) return A;

  auto applyElementary = [&](bool upper) {
    int i = static_cast<int>(rng.below(n));
    int j = static_cast<int>(rng.below(n));
    if (i == j) return;
    if (upper && i > j) std::swap(i, j);
    if (!upper && i < j) std::swap(i, j);
    long long c = static_cast<long long>(rng.below(3));
    if (c == 0) return;
    // A <- (I + c e_{ij}) A : add c * row j to row i
    for (int k = 0; k < n; ++k) A[i][k] += c * A[j][k];
  };
  for (int t = 0; t < 2 * n; ++t) applyElementary(t % 2 == 0);
  return A;
}

RationalVector transformDirection(const std::vector<std::vector<long long>>& A,
                                  const RationalVector& omega) {
  const int n = static_cast<int>(A.size());
  if (static_cast<int>(omega.size()) != n) throw std::invalid_argument("direction length mismatch");
  __int128 det = integerDeterminant(A);
  if (det != 1 && det != -1) throw std::invalid_argument("transformDirection requires a unimodular matrix");

  // exact Gaussian elimination on [A | omega]
  std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) M[i][j] = Rational(A[i][j]);
    M[i][n] = omega[i];
  }
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    while (pivot < n && M[pivot][col].isZero()) ++pivot;
    if (pivot == n) throw std::logic_error("unimodular matrix with singular elimination");
    std::swap(M[col], M[pivot]);
    Rational inv = Rational(1) / M[col][col];
    for (int j = col; j <= n; ++j) M[col][j] = M[col][j] * inv;
    for (int i = 0; i < n; ++i) {
      if (i == col || M[i][col].isZero()) continue;
      Rational f = M[i][col];
      for (int j = col; j <= n; ++j) M[i][j] = M[i][j] - f * M[col][j];
    }
  }
  RationalVector x(n);
  for (int i = 0; i < n; ++i) x[i] = M[i][n];
  return x;
}

MembershipReport tropicalMembership(const PolySystem& I, const RationalVector& omega,
                                    const OracleSettings& settings, Rng& rng,
                                    const MonomialMapChoice& mapChoice) {
  const int n = I.n;
  if (static_cast<int>(omega.size()) != n) throw std::invalid_argument("omega length mismatch");

  MembershipReport report;
  report.originalOmega = omega;
  report.omega = omega;

  PolySystem working = I;
  if (mapChoice.kind != MonomialMapChoice::Kind::None) {
    std::vector<std::vector<long long>> A =
        mapChoice.kind == MonomialMapChoice::Kind::Random ? randomUnimodularMap(n, rng) : mapChoice.matrix;
    std::vector<Polynomial> mapped;
    mapped.reserve(I.polys.size());
    for (const auto& f : I.polys) mapped.push_back(applyMonomialMap(f, A));
    working = PolySystem(I.variableNames, std::move(mapped));
    report.omega = transformDirection(A, omega);
    report.transformed = true;
    report.map = std::move(A);
  }

  const int m = sampleVariety(working, rng, settings.tracking).dimension;
  if (m >= n) throw DimensionError("variety is not lower-dimensional; no hypersurface projections");

  // all coordinate subsets of size m+1 (hypersurface image candidates)
  std::vector<std::vector<int>> subsets;
  std::vector<int> current;
  std::function<void(int)> choose = [&](int from) {
    if (static_cast<int>(current.size()) == m + 1) {
      subsets.push_back(current);
      return;
    }
    for (int i = from; i < n; ++i) {
      current.push_back(i);
      choose(i + 1);
      current.pop_back();
    }
  };
  choose(0);

  bool sawInconclusive = false;
  bool sawDecisiveFalse = false;
  int usable = 0;
  for (const auto& kept : subsets) {
    ProjectionReport pr;
    pr.kept = kept;
    for (int j : kept) pr.projectedDirection.push_back(report.omega[j]);

    std::vector<int> drop;
    for (int i = 0; i < n; ++i)
      if (std::find(kept.begin(), kept.end(), i) == kept.end()) drop.push_back(i);

    try {
      WitnessSet W = witnessForProjection(working, drop, rng, settings.tracking);
      OracleContext ctx = buildOracle(W, PointChoice::defaults(), rng, settings.tracking);
      pr.answer = queryOracle(ctx, pr.projectedDirection, settings);
      for (int retry = 0; retry < 2 && pr.answer.tag == OracleTag::Inconclusive; ++retry) {
        // a numerical fizzle, not an answer: fresh line constants and a
        // larger track budget before conceding
        OracleSettings boosted = settings;
        boosted.maxTracks = std::min(settings.maxTracks * 4, 3000);
        OracleContext fresh = buildOracle(W, PointChoice::defaults(), rng, boosted.tracking);
        pr.answer = queryOracle(fresh, pr.projectedDirection, boosted);
      }
      ++usable;
      if (pr.answer.tag == OracleTag::Inconclusive) {
        sawInconclusive = true;
        report.inconclusiveReason = "projection onto {" + std::to_string(kept[0]) + ",...}: " + pr.answer.reason;
      } else {
        // a positive-dimensional exposed face: some path converged off
        // target, or nothing moved at all
        const bool positiveDim =
            pr.answer.tag == OracleTag::EEP ||
            (pr.answer.tag == OracleTag::Counts && pr.answer.otherCount > 0);
        if (!positiveDim) sawDecisiveFalse = true;
      }
    } catch (const DimensionError& err) {
      pr.skipped = true;
      pr.skipReason = err.what();
    }
    report.perProjection.push_back(std::move(pr));
  }

  if (usable == 0) throw DimensionError("no coordinate projection has a hypersurface image");

  // never report a certified-looking boolean from a failed numeric run
  if (sawInconclusive)
    report.verdict = MembershipReport::Verdict::Inconclusive;
  else if (sawDecisiveFalse)
    report.verdict = MembershipReport::Verdict::False;
  else
    report.verdict = MembershipReport::Verdict::True;
  return report;
}

std::string membershipToJson(const MembershipReport& report) {
  nlohmann::json j;
  auto rationals = [](const RationalVector& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& q : v) arr.push_back(q.str());
    return arr;
  };
  j["omega"] = rationals(report.originalOmega);
  j["transformed"] = report.transformed;
  if (report.transformed) {
    j["map"] = report.map;
    j["transformedOmega"] = rationals(report.omega);
  }
  switch (report.verdict) {
    case MembershipReport::Verdict::True: j["verdict"] = true; break;
    case MembershipReport::Verdict::False: j["verdict"] = false; break;
    case MembershipReport::Verdict::Inconclusive:
      j["verdict"] = "inconclusive";
      j["reason"] = report.inconclusiveReason;
      break;
  }
  nlohmann::json projections = nlohmann::json::array();
  for (const auto& pr : report.perProjection) {
    nlohmann::json p;
    p["kept"] = pr.kept;
    p["direction"] = rationals(pr.projectedDirection);
    if (pr.skipped) {
      p["skipped"] = true;
      p["reason"] = pr.skipReason;
    } else {
      nlohmann::json a;
      switch (pr.answer.tag) {
        case OracleTag::EEP: a["tag"] = "eep"; break;
        case OracleTag::Inconclusive:
          a["tag"] = "inconclusive";
          a["reason"] = pr.answer.reason;
          break;
        case OracleTag::Counts:
          a["tag"] = "counts";
          a["beta"] = pr.answer.beta;
          a["betaInf"] = pr.answer.betaInf;
          a["other"] = pr.answer.otherCount;
          a["vertex"] = pr.answer.isVertex();
          break;
      }
      a["steps"] = pr.answer.stepsUsed;
      p["answer"] = std::move(a);
    }
    projections.push_back(std::move(p));
  }
  j["projections"] = projections;
  j["seed"] = report.seed;
  return j.dump(2);
}

}  // namespace newtonscope
