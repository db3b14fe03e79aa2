#include "newtonscope/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <json.hpp>

namespace newtonscope {

bool WitnessSet::identityProjection() const {
  if (static_cast<int>(projection.size()) != system.n) return false;
  for (size_t i = 0; i < projection.size(); ++i)
    if (projection[i] != static_cast<int>(i)) return false;
  return true;
}

bool WitnessSet::isExplicitHypersurface() const {
  return identityProjection() && system.equationCount() == 1;
}

ComplexVector WitnessSet::projectPoint(const ComplexVector& x) const {
  ComplexVector y(projection.size());
  for (size_t i = 0; i < projection.size(); ++i) y[i] = x[projection[i]];
  return y;
}

std::vector<std::string> WitnessSet::imageVariableNames() const {
  std::vector<std::string> names(projection.size());
  for (size_t i = 0; i < projection.size(); ++i) names[i] = system.variableNames[projection[i]];
  return names;
}

void WitnessSet::validate(double tol, double separation) const {
  if (degree != static_cast<int>(points.size())) throw WitnessError("witness degree does not match point count");
  for (const auto& p : points) {
    for (const auto& value : system.evaluate(p))
      if (std::abs(value) > tol) throw WitnessError("witness point violates the system");
    for (const auto& r : slice.residual(projectPoint(p)))
      if (std::abs(r) > tol) throw WitnessError("projected witness point is off the slice");
  }
  for (size_t i = 0; i < points.size(); ++i) {
    ComplexVector yi = projectPoint(points[i]);
    for (size_t j = i + 1; j < points.size(); ++j) {
      ComplexVector yj = projectPoint(points[j]);
      double dist = 0.0;
      for (size_t c = 0; c < yi.size(); ++c) dist = std::max(dist, std::abs(yi[c] - yj[c]));
      if (dist < separation) throw WitnessError("witness points collide in the image space");
    }
  }
}

std::vector<Polynomial> slicePullback(const LinearSlice& S, const std::vector<int>& kept, int ambientDim) {
  if (S.n() != static_cast<int>(kept.size())) throw std::invalid_argument("slice/kept size mismatch");
  std::vector<Polynomial> rows;
  rows.reserve(S.k());
  for (int r = 0; r < S.k(); ++r) {
    Polynomial p(ambientDim);
    p.addTerm(ExponentVector(ambientDim, 0), S.coefficients.at(r, S.n()));
    for (int c = 0; c < S.n(); ++c) {
      ExponentVector e(ambientDim, 0);
      e[kept[c]] = 1;
      p.addTerm(e, S.coefficients.at(r, c));
    }
    rows.push_back(std::move(p));
  }
  return rows;
}

PolySystem augmentedSystem(const PolySystem& base, const LinearSlice& S, const std::vector<int>& kept) {
  std::vector<Polynomial> polys = base.polys;
  for (auto& row : slicePullback(S, kept, base.n)) polys.push_back(std::move(row));
  return PolySystem(base.variableNames, std::move(polys));
}

namespace {

Polynomial randomHyperplane(int n, Rng& rng) {
  Polynomial p(n);
  p.addTerm(ExponentVector(n, 0), rng.genericComplex());
  for (int j = 0; j < n; ++j) {
    ExponentVector e(n, 0);
    e[j] = 1;
    p.addTerm(e, rng.genericComplex());
  }
  return p;
}

std::vector<int> keptCoordinates(int N, const std::vector<int>& dropCoords) {
  std::vector<bool> dropped(N, false);
  for (int d : dropCoords) {
    if (d < 0 || d >= N) throw std::invalid_argument("projection coordinate out of range");
    if (dropped[d]) throw std::invalid_argument("duplicate projection coordinate");
    dropped[d] = true;
  }
  std::vector<int> kept;
  for (int i = 0; i < N; ++i)
    if (!dropped[i]) kept.push_back(i);
  return kept;
}

/// Polish a witness point on the square system {system, slice pullback};
/// a singular polish step keeps the tracked point as is.
ComplexVector polishPoint(const SystemEvaluator& squareEval, ComplexVector x, double tol) {
  try {
    auto [point, residual] = newtonCorrect(squareEval, x, tol, 6);
    (void)residual;
    return point;
  } catch (const SingularMatrixError&) {
    return x;
  }
}

/// Distinct projected points (first preimage kept per group).
std::vector<ComplexVector> dedupeByProjection(const std::vector<ComplexVector>& candidates,
                                              const std::vector<int>& kept, double tol) {
  std::vector<ComplexVector> reps;
  for (const auto& x : candidates) {
    bool fresh = true;
    for (const auto& r : reps) {
      double dist = 0.0;
      for (size_t i = 0; i < kept.size(); ++i) dist = std::max(dist, std::abs(x[kept[i]] - r[kept[i]]));
      if (dist <= tol) {
        fresh = false;
        break;
      }
    }
    if (fresh) reps.push_back(x);
  }
  return reps;
}

}  // namespace

WitnessSet witnessForHypersurface(const Polynomial& f, const std::vector<std::string>& variableNames,
                                  Rng& rng, const TrackSettings& settings) {
  const int n = f.variableCount();
  if (static_cast<int>(variableNames.size()) != n) throw std::invalid_argument("variable name count mismatch");
  const int d = f.degree();
  if (d < 1) throw WitnessError("hypersurface witness needs a nonconstant polynomial");

  PolySystem system(variableNames, {f});

  for (int attempt = 0; attempt < 3; ++attempt) {
    LinearSlice slice = randomSlice(n, n - 1, rng);
    ComplexVector base;
    std::vector<ComplexVector> directions;
    slice.parametrize(base, directions, rng);

    Polynomial restricted = restrictToAffineLine(f, directions[0], base);
    if (restricted.degree() < d) continue;  // non-generic line

    PolySystem lineSystem({"s"}, {restricted});
    auto results = solveTotalDegree(lineSystem, settings, rng);
    auto clusters = clusterEndpoints(results, 1e-6);
    if (static_cast<int>(clusters.size()) < d) continue;

    // multiple roots stall Newton at ~sqrt(tol) and can masquerade as
    // distinct points; a vanishing derivative on the line betrays them
    Polynomial derivative = restricted.derivative(0);
    double scale = 0.0;
    for (const auto& [e, c] : derivative.terms()) scale += std::abs(c);
    bool multipleRoot = false;
    for (const auto& [sval, count] : clusters) {
      double local = scale * std::pow(std::max(1.0, std::abs(sval[0])), std::max(0, d - 1));
      if (count > 1 || std::abs(derivative.evaluate(sval)) < 1e-4 * local) multipleRoot = true;
    }
    if (multipleRoot) continue;

    SystemEvaluator squareEval(augmentedSystem(system, slice, keptCoordinates(n, {})));
    std::vector<ComplexVector> points;
    points.reserve(clusters.size());
    for (const auto& [sval, count] : clusters) {
      ComplexVector x(n);
      for (int i = 0; i < n; ++i) x[i] = base[i] + sval[0] * directions[0][i];
      points.push_back(polishPoint(squareEval, std::move(x), 1e-11));
    }

    WitnessSet W;
    W.system = system;
    W.projection = keptCoordinates(n, {});
    W.slice = slice;
    W.points = std::move(points);
    W.degree = static_cast<int>(W.points.size());
    W.validate();
    return W;
  }
  throw WitnessError("undercount: found fewer witness points than deg(f) after 3 reslices (non-reduced input?)");
}

std::vector<VarietySample> sampleVarietyPoints(const PolySystem& I, Rng& rng,
                                               const TrackSettings& settings, int maxSamples) {
  const int N = I.n;
  const int m0 = I.equationCount();
  if (m0 > N) throw DimensionError("more equations than variables");

  std::vector<Polynomial> samplePolys = I.polys;
  for (int i = 0; i < N - m0; ++i) samplePolys.push_back(randomHyperplane(N, rng));
  PolySystem sampleSystem(I.variableNames, std::move(samplePolys));
  auto sampleResults = solveTotalDegree(sampleSystem, settings, rng);

  SystemEvaluator idealEval(I);
  std::vector<VarietySample> samples;
  for (const auto& r : sampleResults) {
    if (static_cast<int>(samples.size()) >= maxSamples) break;
    if (r.status != PathStatus::Success) continue;
    ComplexMatrix J;
    idealEval.evalJacobian(r.endpoint, J);
    if (numericalRank(J) == m0) samples.push_back({r.endpoint, N - m0});
  }
  if (samples.empty())
    throw DimensionError(
        "could not sample a smooth point with full Jacobian rank; the system is not a numerical complete intersection");
  return samples;
}

VarietySample sampleVariety(const PolySystem& I, Rng& rng, const TrackSettings& settings) {
  return sampleVarietyPoints(I, rng, settings, 1).front();
}

WitnessSet witnessForProjection(const PolySystem& I, const std::vector<int>& dropCoords, Rng& rng,
                                const TrackSettings& settings) {
  const int N = I.n;
  const int m0 = I.equationCount();
  std::vector<int> kept = keptCoordinates(N, dropCoords);
  const int n = static_cast<int>(kept.size());
  if (n < 1) throw std::invalid_argument("projection keeps no coordinates");

  if (m0 >= N) throw DimensionError("system cuts out a zero-dimensional set; no hypersurface image");

  // The variety may be a union; look for a component whose image is a
  // hypersurface by reading fiber ranks at several sample points.
  std::vector<VarietySample> samples = sampleVarietyPoints(I, rng, settings);
  const int dimX = samples.front().dimension;
  SystemEvaluator idealEval(I);
  int bestDimY = std::numeric_limits<int>::min();
  for (const auto& sample : samples) {
    ComplexMatrix stacked(m0 + n, N);
    ComplexMatrix J;
    idealEval.evalJacobian(sample.point, J);
    for (int i = 0; i < m0; ++i)
      for (int j = 0; j < N; ++j) stacked.at(i, j) = J.at(i, j);
    for (int i = 0; i < n; ++i) stacked.at(m0 + i, kept[i]) = Complex(1, 0);
    bestDimY = std::max(bestDimY, dimX - (N - numericalRank(stacked)));
  }
  if (bestDimY != n - 1)
    throw DimensionError("projection image has dimension " + std::to_string(bestDimY) +
                         ", expected a hypersurface of dimension " + std::to_string(n - 1));
  const int dimFiber = dimX - (n - 1);

  // One slicing round: fresh fiber hyperplanes and image slice, solve the
  // square system, keep one preimage per distinct image point.
  auto attemptWitness = [&](WitnessSet& W) {
    std::vector<Polynomial> polys = I.polys;
    for (int i = 0; i < dimFiber; ++i) polys.push_back(randomHyperplane(N, rng));
    PolySystem sliced(I.variableNames, std::move(polys));

    LinearSlice slice = randomSlice(n, n - 1, rng);
    PolySystem square = augmentedSystem(sliced, slice, kept);
    auto results = solveTotalDegree(square, settings, rng);

    std::vector<ComplexVector> finite;
    SystemEvaluator squareEval(square);
    for (const auto& r : results) {
      if (r.status != PathStatus::Success) continue;
      ComplexVector p = polishPoint(squareEval, r.endpoint, 1e-11);
      ComplexVector values;
      squareEval.eval(p, values);
      if (infNorm(values) > 1e-9) continue;  // endpoint did not polish onto the variety
      finite.push_back(std::move(p));
    }
    auto reps = dedupeByProjection(finite, kept, 1e-6);
    if (reps.empty()) return false;

    W.system = std::move(sliced);
    W.projection = kept;
    W.slice = std::move(slice);
    W.points = std::move(reps);
    W.degree = static_cast<int>(W.points.size());
    return true;
  };

  // Success endpoints are residual-verified points of the sliced variety,
  // so distinct image points are genuine and a round can only undercount.
  // Run independent slicing rounds and keep the richest one; agreeing
  // rounds end the search early.
  WitnessSet best;
  int bestDegree = 0;
  for (int round = 0; round < 3; ++round) {
    WitnessSet candidate;
    if (!attemptWitness(candidate)) continue;
    if (candidate.degree > bestDegree) {
      best = std::move(candidate);
      bestDegree = best.degree;
    } else if (candidate.degree == bestDegree && round > 0) {
      break;  // two independent rounds agree on the maximum
    }
  }
  if (bestDegree < 1) throw WitnessError("no witness points found in 3 reslice rounds");
  best.validate();
  return best;
}

namespace {

WitnessSet moveSliceOnce(const WitnessSet& W, const LinearSlice& newSlice, const TrackSettings& settings,
                         Rng& rng) {
  SliceMoveHomotopy H(W.system, W.slice, newSlice, W.projection, rng.gamma());
  auto results = trackBatch(H, W.points, settings);

  int lost = 0;
  for (const auto& r : results)
    if (r.status != PathStatus::Success) ++lost;
  if (lost > 0) throw WitnessError("moveSlice lost " + std::to_string(lost) + " of " +
                                   std::to_string(results.size()) + " paths");

  SystemEvaluator squareEval(augmentedSystem(W.system, newSlice, W.projection));
  WitnessSet out = W;
  out.slice = newSlice;
  out.points.clear();
  out.points.reserve(results.size());
  for (const auto& r : results) out.points.push_back(polishPoint(squareEval, r.endpoint, 1e-11));
  out.validate();
  return out;
}

}  // namespace

WitnessSet moveSlice(const WitnessSet& W, const LinearSlice& newSlice, const TrackSettings& settings,
                     Rng& rng) {
  if (newSlice.k() != W.slice.k() || newSlice.n() != W.slice.n())
    throw std::invalid_argument("moveSlice: slice shape mismatch");

  try {
    return moveSliceOnce(W, newSlice, settings, rng);
  } catch (const WitnessError&) {
  }
  try {
    // a fresh mixing constant changes the whole interpolation arc
    return moveSliceOnce(W, newSlice, settings, rng);
  } catch (const WitnessError&) {
  }
  // two hops through a random intermediate slice change the path geometry
  WitnessSet waypoint = moveSliceOnce(W, randomSlice(newSlice.n(), newSlice.k(), rng), settings, rng);
  return moveSliceOnce(waypoint, newSlice, settings, rng);
}

// ---------------------------------------------------------------------------
// JSON serialization

namespace {

nlohmann::json complexToJson(const Complex& z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex complexFromJson(const nlohmann::json& j) { return Complex(j.at(0).get<double>(), j.at(1).get<double>()); }

}  // namespace

std::string witnessToJson(const WitnessSet& W) {
  nlohmann::json j;
  j["variables"] = W.system.variableNames;
  nlohmann::json eqs = nlohmann::json::array();
  for (const auto& p : W.system.polys) eqs.push_back(p.print(W.system.variableNames));
  j["equations"] = eqs;
  j["projection"] = W.projection;
  nlohmann::json slice = nlohmann::json::array();
  for (int r = 0; r < W.slice.k(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c <= W.slice.n(); ++c) row.push_back(complexToJson(W.slice.coefficients.at(r, c)));
    slice.push_back(row);
  }
  j["slice"] = slice;
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : W.points) {
    nlohmann::json pt = nlohmann::json::array();
    for (const auto& z : p) pt.push_back(complexToJson(z));
    pts.push_back(pt);
  }
  j["points"] = pts;
  j["degree"] = W.degree;
  j["seed"] = W.seed;
  return j.dump(2);
}

WitnessSet witnessFromJson(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  WitnessSet W;
  std::vector<std::string> names = j.at("variables").get<std::vector<std::string>>();
  std::vector<Polynomial> polys;
  for (const auto& eq : j.at("equations")) polys.push_back(parsePolynomial(eq.get<std::string>(), names));
  W.system = PolySystem(names, std::move(polys));
  W.projection = j.at("projection").get<std::vector<int>>();

  const auto& sliceJson = j.at("slice");
  int k = static_cast<int>(sliceJson.size());
  int cols = k > 0 ? static_cast<int>(sliceJson.at(0).size()) : static_cast<int>(W.projection.size()) + 1;
  ComplexMatrix rows(k, cols);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < cols; ++c) rows.at(r, c) = complexFromJson(sliceJson.at(r).at(c));
  W.slice = LinearSlice(std::move(rows));

  for (const auto& pt : j.at("points")) {
    ComplexVector p;
    for (const auto& z : pt) p.push_back(complexFromJson(z));
    W.points.push_back(std::move(p));
  }
  W.degree = j.at("degree").get<int>();
  W.seed = j.value("seed", 0ULL);
  return W;
}

}  // namespace newtonscope
