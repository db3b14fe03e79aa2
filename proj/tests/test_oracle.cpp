#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "newtonscope/oracle.hpp"
#include "newtonscope/tropical.hpp"
#include "support/elimination.hpp"

using namespace newtonscope;

namespace {

RationalVector dir(std::initializer_list<long long> vals) {
  RationalVector v;
  for (long long x : vals) v.push_back(Rational(x));
  return v;
}

OracleContext explicitContext(const Polynomial& f, const std::vector<std::string>& names, uint64_t seed,
                              const PointChoice& choice = PointChoice::defaults()) {
  Rng rng(seed);
  TrackSettings tracking;
  WitnessSet W = witnessForHypersurface(f, names, rng, tracking);
  return buildOracle(W, choice, rng, tracking);
}

Polynomial randomSparse(Rng& rng, int n, int maxDeg, int maxTerms) {
  Polynomial f(n);
  int terms = 1 + static_cast<int>(rng.below(maxTerms));
  for (int t = 0; t < terms; ++t) {
    ExponentVector e(n);
    int left = maxDeg;
    for (int i = 0; i < n; ++i) {
      e[i] = static_cast<int>(rng.below(left + 1));
      left -= e[i];
    }
    f.addTerm(e, rng.unitComplex());
  }
  return f;
}

bool matchesSymbolic(const OracleAnswer& numeric, const SymbolicOracleAnswer& symbolic, int d) {
  switch (symbolic.tag) {
    case SymbolicOracleAnswer::Tag::EEP:
      return numeric.tag == OracleTag::EEP;
    case SymbolicOracleAnswer::Tag::Vertex: {
      if (numeric.tag != OracleTag::Counts || numeric.otherCount != 0) return false;
      for (size_t i = 0; i < numeric.beta.size(); ++i)
        if (numeric.beta[i] != symbolic.vertex[i]) return false;
      return numeric.betaInf == symbolic.vertex.back();
    }
    case SymbolicOracleAnswer::Tag::FaceMin: {
      if (numeric.tag != OracleTag::Counts || numeric.otherCount == 0) return false;
      long long total = symbolic.faceMinInf;
      for (size_t i = 0; i < numeric.beta.size(); ++i) {
        if (numeric.beta[i] != symbolic.faceMin[i]) return false;
        total += symbolic.faceMin[i];
      }
      return numeric.betaInf == symbolic.faceMinInf &&
             numeric.otherCount == d - static_cast<int>(total);
    }
  }
  return false;
}

}  // namespace

TEST_CASE("buildOracle default targets are roots of unity") {
  std::vector<std::string> xy{"x", "y"};
  Polynomial f = parsePolynomial("x^2+y+1", xy);
  OracleContext ctx = explicitContext(f, xy, 1);
  REQUIRE(ctx.imageDim() == 2);
  auto g = ctx.targets();
  CHECK(std::abs(g[0] - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(g[1] - Complex(-1, 0)) < 1e-12);
  CHECK(ctx.degree == 2);
  CHECK(ctx.startS.size() == 2);

  // start points satisfy the restriction of f to the t=1 line
  for (size_t i = 0; i < ctx.startS.size(); ++i) {
    ComplexVector x(2);
    for (int c = 0; c < 2; ++c) x[c] = ctx.a[c] * ctx.startS[i] - ctx.b[c];
    CHECK(std::abs(f.evaluate(x)) < 1e-7);
  }
}

TEST_CASE("buildOracle with explicit targets is exact") {
  std::vector<std::string> xy{"x", "y"};
  Polynomial f = parsePolynomial("x^2+y+1", xy);
  OracleContext ctx = explicitContext(f, xy, 2,
                                      PointChoice::explicitTargets({Complex(2, 0), Complex(-3, 0)}));
  auto g = ctx.targets();
  CHECK(g[0] == Complex(2, 0));
  CHECK(g[1] == Complex(-3, 0));
}

TEST_CASE("buildOracle with explicit a and b") {
  std::vector<std::string> xy{"x", "y"};
  Polynomial f = parsePolynomial("x^2+y+1", xy);
  ComplexVector a{Complex(0.6, 0.8), Complex(1, 0)};
  ComplexVector b{Complex(0.6, 0.8), Complex(-2, 0)};
  OracleContext ctx = explicitContext(f, xy, 5, PointChoice::explicitAB(a, b));
  CHECK(ctx.a == a);
  CHECK(ctx.b == b);
  OracleSettings settings;
  OracleAnswer ans = queryOracle(ctx, {Rational(1), Rational(0)}, settings);
  REQUIRE(ans.tag == OracleTag::Counts);
  CHECK(ans.beta == std::vector<int>{2, 0});

  // targets too close must be rejected
  CHECK_THROWS(explicitContext(f, xy, 5,
                               PointChoice::explicitAB({Complex(1, 0), Complex(1, 0)},
                                                       {Complex(1, 0), Complex(1.2, 0)})));
}

TEST_CASE("queryOracle: spec examples on x^2+y+1") {
  std::vector<std::string> xy{"x", "y"};
  Polynomial f = parsePolynomial("x^2+y+1", xy);
  OracleContext ctx = explicitContext(f, xy, 3);
  OracleSettings settings;

  SUBCASE("omega=(1,0) exposes the vertex (2,0)") {
    OracleAnswer a = queryOracle(ctx, dir({1, 0}), settings);
    REQUIRE(a.tag == OracleTag::Counts);
    CHECK(a.beta == std::vector<int>{2, 0});
    CHECK(a.betaInf == 0);
    CHECK(a.otherCount == 0);
    CHECK(a.isVertex());
  }

  SUBCASE("omega=(-1,0) exposes a positive-dimensional face") {
    OracleAnswer a = queryOracle(ctx, dir({-1, 0}), settings);
    REQUIRE(a.tag == OracleTag::Counts);
    CHECK(a.beta == std::vector<int>{0, 0});
    CHECK(a.betaInf == 1);
    CHECK(a.otherCount == 1);
    CHECK_FALSE(a.isVertex());
  }

  SUBCASE("omega=0 freezes every path") {
    OracleAnswer a = queryOracle(ctx, dir({0, 0}), settings);
    CHECK(a.tag == OracleTag::EEP);
  }
}

TEST_CASE("homogeneous polynomial: omega=(1,1) is EEP") {
  std::vector<std::string> xy{"x", "y"};
  Polynomial f = parsePolynomial("x^2+y^2", xy);
  OracleContext ctx = explicitContext(f, xy, 4);
  OracleSettings settings;
  CHECK(queryOracle(ctx, dir({1, 1}), settings).tag == OracleTag::EEP);
  // and the same direction on an inhomogeneous polynomial is not EEP
  Polynomial g = parsePolynomial("x^2+y+1", xy);
  OracleContext ctx2 = explicitContext(g, xy, 4);
  CHECK(queryOracle(ctx2, dir({1, 1}), settings).tag != OracleTag::EEP);
}

TEST_CASE("conservation: counts always sum to the degree") {
  Rng rng(5);
  OracleSettings settings;
  std::vector<std::string> xy{"x", "y"};
  int checked = 0;
  for (int trial = 0; trial < 12; ++trial) {
    Polynomial f = randomSparse(rng, 2, 5, 6);
    if (f.degree() < 1 || f.termCount() < 2) continue;
    OracleContext ctx;
    try {
      ctx = explicitContext(f, xy, 100 + trial);
    } catch (const WitnessError&) {
      continue;
    }
    for (int q = 0; q < 5; ++q) {
      RationalVector w = dir({static_cast<long long>(rng.below(9)) - 4,
                              static_cast<long long>(rng.below(9)) - 4});
      OracleAnswer a = queryOracle(ctx, w, settings);
      if (a.tag != OracleTag::Counts) continue;
      CHECK(a.degree() == ctx.degree);
      ++checked;
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("oracle matches the symbolic oracle on random vertex directions") {
  Rng rng(6);
  OracleSettings settings;
  std::vector<std::string> names{"x", "y", "z"};
  int agreements = 0, queries = 0;
  for (int trial = 0; trial < 20 && queries < 60; ++trial) {
    int n = 2 + static_cast<int>(rng.below(2));
    std::vector<std::string> vars(names.begin(), names.begin() + n);
    Polynomial f = randomSparse(rng, n, 6, 8);
    if (f.degree() < 1 || f.termCount() < 2) continue;
    OracleContext ctx;
    try {
      ctx = explicitContext(f, vars, 200 + trial);
    } catch (const WitnessError&) {
      continue;
    }
    for (int q = 0; q < 6; ++q) {
      RationalVector w(n);
      for (int i = 0; i < n; ++i) w[i] = Rational(static_cast<long long>(rng.below(11)) - 5);
      auto symbolic = symbolicOracle(f, w);
      OracleAnswer numeric = queryOracle(ctx, w, settings);
      if (numeric.tag == OracleTag::Inconclusive) continue;
      ++queries;
      if (matchesSymbolic(numeric, symbolic, ctx.degree)) ++agreements;
    }
  }
  CHECK(queries >= 40);
  CHECK(agreements == queries);
}

TEST_CASE("implicit witness oracle: Example 1 direction (3,2) gives o6") {
  std::vector<std::string> xyt{"x", "y", "t"};
  PolySystem I(xyt, {parsePolynomial("x*y*t-(x-y-t)^2+3*x+t", xyt), parsePolynomial("x+y^2+t^2", xyt)});
  Rng rng(7);
  TrackSettings tracking;
  WitnessSet W = witnessForProjection(I, {2}, rng, tracking);
  OracleContext ctx = buildOracle(W, PointChoice::defaults(), rng, tracking);
  CHECK(ctx.degree == 6);

  OracleSettings settings;
  OracleAnswer a = queryOracle(ctx, dir({3, 2}), settings);
  REQUIRE(a.tag == OracleTag::Counts);
  CHECK(a.beta == std::vector<int>{2, 4});
  CHECK(a.betaInf == 0);
  CHECK(a.otherCount == 0);
  CHECK(a.isVertex());
}

TEST_CASE("trace export") {
  std::vector<std::string> xy{"x", "y"};
  Polynomial f = parsePolynomial("x^2+y+1", xy);
  OracleContext ctx = explicitContext(f, xy, 8);
  OracleSettings settings;
  OracleAnswer a = queryOracle(ctx, dir({1, 0}), settings);
  REQUIRE(a.tag == OracleTag::Counts);

  SUBCASE("json carries every sample") {
    std::string json = tracesToJson(a, ctx.targets(), settings.epsilon);
    CHECK(json.find("\"paths\"") != std::string::npos);
    CHECK(json.find("\"samples\"") != std::string::npos);
    for (const auto& trace : a.traces) CHECK(trace.samples.size() >= 2);
  }

  SUBCASE("svg frames render polylines and epsilon circles") {
    auto frames = renderSvgFrames(a, ctx.targets(), settings.epsilon);
    REQUIRE_FALSE(frames.empty());
    const std::string& last = frames.back();
    CHECK(last.find("<polyline") != std::string::npos);
    CHECK(last.find("<circle") != std::string::npos);
    CHECK(last.find("stroke-dasharray") != std::string::npos);  // target circles
  }

  SUBCASE("empty traces render an empty document") {
    OracleAnswer empty;
    empty.tag = OracleTag::Counts;
    auto frames = renderSvgFrames(empty, ctx.targets(), settings.epsilon);
    REQUIRE(frames.size() == 1);
    CHECK(frames[0].find("<polyline") == std::string::npos);
    std::string json = tracesToJson(empty, ctx.targets(), settings.epsilon);
    CHECK(json.find("\"paths\"") != std::string::npos);
  }

  SUBCASE("diverging paths get a clipped marker") {
    OracleAnswer div = queryOracle(ctx, dir({-1, 0}), settings);
    REQUIRE(div.tag == OracleTag::Counts);
    REQUIRE(div.betaInf == 1);
    auto frames = renderSvgFrames(div, ctx.targets(), settings.epsilon);
    bool marker = false;
    for (const auto& fr : frames) marker |= fr.find("<path d=\"M") != std::string::npos;
    CHECK(marker);
  }
}

TEST_CASE("numeric oracle adapter feeds reconstruction") {
  std::vector<std::string> xy{"x", "y"};
  Polynomial f = parsePolynomial("x^2+y+1", xy);
  Rng rng(9);
  TrackSettings tracking;
  WitnessSet W = witnessForHypersurface(f, xy, rng, tracking);
  OracleSettings settings;
  OracleFn oracle = makeNumericOracleFn(W, 9, settings);

  OracleReply r = oracle(dir({1, 0}));
  REQUIRE(r.tag == OracleReply::Tag::Vertex);
  CHECK(r.vertex == LatticePoint{2, 0, 0});

  OracleReply face = oracle(dir({-1, 0}));
  CHECK(face.tag == OracleReply::Tag::NonVertex);

  auto rec = reconstructPolytope(oracle, 2, W.degree);
  std::set<LatticePoint> got(rec.homogenizedVertices.points.begin(), rec.homogenizedVertices.points.end());
  CHECK(got == std::set<LatticePoint>{{2, 0, 0}, {0, 1, 1}, {0, 0, 2}});
}

TEST_CASE("theorem 2: decay slope and envelope on a face direction") {
  std::vector<std::string> xy{"x", "y"};
  Polynomial f = parsePolynomial("x^2+y+1", xy);
  OracleContext ctx = explicitContext(f, xy, 10);
  OracleSettings settings;
  settings.maxTracks = 600;
  RationalVector w = dir({-1, 0});

  OracleAnswer a = queryOracle(ctx, w, settings);
  REQUIRE(a.tag == OracleTag::Counts);
  REQUIRE(a.otherCount == 1);

  // the facial form y+1 has the single root tau on the line
  Complex tau = (ctx.b[1] - Complex(1, 0)) / ctx.a[1];
  LineFamily L(w, ctx.a, ctx.b);
  const double dw = dOmega(f, w).toDouble();  // = 2
  const int beta = 1;

  for (const auto& trace : a.traces) {
    if (trace.verdict != PathVerdict::ToOther) continue;
    // locate the capture step (entry into the gamma_tau ball) and check the
    // envelope afterwards
    double gammaTau = 1.0;
    for (const auto& g : ctx.targets()) gammaTau = std::min(gammaTau, 0.5 * std::abs(tau - g));
    size_t capture = trace.samples.size();
    for (size_t k = 0; k < trace.samples.size(); ++k) {
      if (std::abs(trace.samples[k].s - tau) <= gammaTau) {
        capture = k;
        break;
      }
    }
    REQUIRE(capture < trace.samples.size());

    std::vector<double> logT, logErr;
    for (size_t k = capture; k < trace.samples.size(); ++k) {
      double err = std::abs(trace.samples[k].s - tau);
      if (err <= 0) continue;
      CHECK(std::pow(err, beta) <= theoremTwoBound(f, w, L, tau, beta, trace.samples[k].t) * (1 + 1e-9));
      logT.push_back(std::log(trace.samples[k].t));
      logErr.push_back(std::log(err));
    }
    REQUIRE(logT.size() >= 3);
    // least-squares slope of log err against log t
    double n = logT.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t k = 0; k < logT.size(); ++k) {
      sx += logT[k];
      sy += logErr[k];
      sxx += logT[k] * logT[k];
      sxy += logT[k] * logErr[k];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope <= -dw / beta * 0.75);
  }
}

TEST_CASE("oracle settings validation") {
  OracleSettings s;
  CHECK_NOTHROW(s.validate());
  s.epsilon = 0.3;
  CHECK_THROWS(s.validate());
  s = OracleSettings{};
  s.stepResolution = 1.0;
  CHECK_THROWS(s.validate());
  s = OracleSettings{};
  s.minTracks = 0;
  CHECK_THROWS(s.validate());
  s = OracleSettings{};
  s.maxTracks = 1000000;
  CHECK_THROWS(s.validate());
}
