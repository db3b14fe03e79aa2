#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "newtonscope/tracker.hpp"

using namespace newtonscope;

namespace {

PolySystem univariate(const std::string& eq) { return PolySystem({"x"}, {parsePolynomial(eq, {"x"})}); }

std::vector<Complex> successEndpoints1d(const std::vector<PathResult>& results) {
  std::vector<Complex> out;
  for (const auto& r : results)
    if (r.status == PathStatus::Success) out.push_back(r.endpoint[0]);
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

}  // namespace

TEST_CASE("identity homotopy finishes in one step") {
  PolySystem S = univariate("x^2-1");
  LinearMixHomotopy H(S, S, Complex(1, 0));  // gamma = 1 so H is constant in lambda at roots
  TrackSettings settings;
  PathResult r = trackSegment(H, {Complex(1, 0)}, settings);
  CHECK(r.status == PathStatus::Success);
  CHECK(r.steps == 1);
  CHECK(std::abs(r.endpoint[0] - Complex(1, 0)) < 1e-9);
}

TEST_CASE("gamma-mixed univariate homotopy hits the target roots") {
  PolySystem start = univariate("x^2-1");
  PolySystem target = univariate("x^2-4");
  Rng rng(3);
  LinearMixHomotopy H(start, target, rng.gamma());
  TrackSettings settings;
  auto r1 = trackSegment(H, {Complex(1, 0)}, settings);
  auto r2 = trackSegment(H, {Complex(-1, 0)}, settings);
  REQUIRE(r1.status == PathStatus::Success);
  REQUIRE(r2.status == PathStatus::Success);
  std::vector<Complex> ends{r1.endpoint[0], r2.endpoint[0]};
  std::sort(ends.begin(), ends.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  CHECK(std::abs(ends[0] - Complex(-2, 0)) < 1e-8);
  CHECK(std::abs(ends[1] - Complex(2, 0)) < 1e-8);
}

TEST_CASE("tracking a linear 2x2 system reproduces the direct solve") {
  std::vector<std::string> xy{"x", "y"};
  PolySystem target(xy, {parsePolynomial("2*x+y-3", xy), parsePolynomial("x-y+1", xy)});
  Rng rng(5);
  TrackSettings settings;
  auto results = solveTotalDegree(target, settings, rng);
  REQUIRE(results.size() == 1);
  REQUIRE(results[0].status == PathStatus::Success);

  ComplexMatrix A(2, 2);
  A.at(0, 0) = 2;
  A.at(0, 1) = 1;
  A.at(1, 0) = 1;
  A.at(1, 1) = -1;
  auto x = luSolve(A, {Complex(3, 0), Complex(-1, 0)});
  CHECK(std::abs(results[0].endpoint[0] - x[0]) < 1e-8);
  CHECK(std::abs(results[0].endpoint[1] - x[1]) < 1e-8);
}

TEST_CASE("newton corrector") {
  SystemEvaluator S(univariate("x^2-4"));
  auto [root, resid] = newtonCorrect(S, {Complex(2.1, 0)}, 1e-12, 4);
  CHECK(std::abs(root[0] - Complex(2, 0)) < 1e-12);
  CHECK(resid <= 1e-12);

  auto [same, r2] = newtonCorrect(S, {Complex(2, 0)}, 1e-9, 0);
  CHECK(same[0] == Complex(2, 0));
  CHECK(r2 <= 1e-9);
}

TEST_CASE("predictor with zero step is the identity") {
  PolySystem start = univariate("x^2-1");
  PolySystem target = univariate("x^2-4");
  LinearMixHomotopy H(start, target, Complex(0.6, 0.8));
  ComplexVector z{Complex(1, 0)};
  auto p = predictorStep(H, z, 0.0, 0.0);
  CHECK(p == z);
}

TEST_CASE("total degree: simple systems") {
  Rng rng(7);
  TrackSettings settings;

  auto roots = solveTotalDegree(univariate("x^2-1"), settings, rng);
  auto ends = successEndpoints1d(roots);
  REQUIRE(ends.size() == 2);
  CHECK(std::abs(ends[0] - Complex(-1, 0)) < 1e-8);
  CHECK(std::abs(ends[1] - Complex(1, 0)) < 1e-8);

  std::vector<std::string> xy{"x", "y"};
  PolySystem circleLine(xy, {parsePolynomial("x^2+y^2-1", xy), parsePolynomial("x-y", xy)});
  auto res = solveTotalDegree(circleLine, settings, rng);
  int successes = 0;
  const double inv = 1.0 / std::sqrt(2.0);
  for (const auto& r : res) {
    if (r.status != PathStatus::Success) continue;
    ++successes;
    CHECK(std::abs(r.endpoint[0] - r.endpoint[1]) < 1e-8);
    CHECK(std::min(std::abs(r.endpoint[0] - Complex(inv, 0)), std::abs(r.endpoint[0] + Complex(inv, 0))) <
          1e-8);
  }
  CHECK(successes == 2);
}

TEST_CASE("generic circle-line intersection has two points") {
  Rng rng(9);
  TrackSettings settings;
  std::vector<std::string> xy{"x", "y"};
  Polynomial line(2);
  line.addTerm({1, 0}, rng.genericComplex());
  line.addTerm({0, 1}, rng.genericComplex());
  line.addTerm({0, 0}, rng.genericComplex());
  PolySystem S(xy, {parsePolynomial("x^2+y^2-1", xy), line});
  auto res = solveTotalDegree(S, settings, rng);
  CHECK(clusterEndpoints(res).size() == 2);
}

TEST_CASE("endpoint residual contract") {
  Rng rng(11);
  TrackSettings settings;
  std::vector<std::string> xy{"x", "y"};
  for (int trial = 0; trial < 10; ++trial) {
    Polynomial f(2), g(2);
    for (int t = 0; t < 4; ++t) {
      f.addTerm({static_cast<int>(rng.below(3)), static_cast<int>(rng.below(2))}, rng.genericComplex());
      g.addTerm({static_cast<int>(rng.below(2)), static_cast<int>(rng.below(3))}, rng.genericComplex());
    }
    if (f.degree() < 1 || g.degree() < 1) continue;
    PolySystem S(xy, {f, g});
    SystemEvaluator eval(S);
    for (const auto& r : solveTotalDegree(S, settings, rng)) {
      if (r.status != PathStatus::Success) continue;
      ComplexVector v;
      eval.eval(r.endpoint, v);
      CHECK(infNorm(v) <= settings.newtonTol);
    }
  }
}

TEST_CASE("bezout completeness on random dense systems") {
  Rng rng(13);
  TrackSettings settings;
  int done = 0;
  for (int trial = 0; trial < 60 && done < 50; ++trial) {
    int n = 1 + static_cast<int>(rng.below(2));
    std::vector<std::string> names(n == 1 ? std::vector<std::string>{"x"}
                                          : std::vector<std::string>{"x", "y"});
    std::vector<Polynomial> polys;
    long long bezout = 1;
    for (int i = 0; i < n; ++i) {
      int d = 1 + static_cast<int>(rng.below(3));
      bezout *= d;
      Polynomial f(n);
      // dense polynomial of degree d
      std::function<void(ExponentVector&, int, int)> fill = [&](ExponentVector& e, int var, int left) {
        if (var == n) {
          f.addTerm(e, rng.genericComplex());
          return;
        }
        for (int k = 0; k <= left; ++k) {
          e[var] = k;
          fill(e, var + 1, left - k);
        }
        e[var] = 0;
      };
      ExponentVector e(n, 0);
      fill(e, 0, d);
      polys.push_back(std::move(f));
    }
    PolySystem S(names, polys);
    auto res = solveTotalDegree(S, settings, rng);
    auto clusters = clusterEndpoints(res);
    CHECK(static_cast<long long>(clusters.size()) == bezout);
    ++done;
  }
  CHECK(done == 50);
}

TEST_CASE("solutions at infinity diverge instead of getting lost") {
  // the twisted cubic sliced by a generic plane in (x, z): Bezout 6, three
  // finite intersection points, three paths to infinity
  std::vector<std::string> xyz{"x", "y", "z"};
  Rng rng(15);
  Polynomial plane(3);
  plane.addTerm({1, 0, 0}, rng.genericComplex());
  plane.addTerm({0, 0, 1}, rng.genericComplex());
  plane.addTerm({0, 0, 0}, rng.genericComplex());
  PolySystem T(xyz, {parsePolynomial("y-x^2", xyz), parsePolynomial("z-x^3", xyz), plane});

  TrackSettings settings;
  auto res = solveTotalDegree(T, settings, rng);
  REQUIRE(res.size() == 6);
  int infinite = 0, lost = 0;
  for (const auto& r : res) {
    if (r.status == PathStatus::Success) continue;
    if (probablyAtInfinity(r)) {
      ++infinite;
      CHECK(infNorm(r.endpoint) >= 1e3);
    } else {
      ++lost;
    }
  }
  CHECK(clusterEndpoints(res).size() == 3);
  CHECK(infinite == 3);
  CHECK(lost == 0);
}

TEST_CASE("single solution at infinity is classified, finite roots survive") {
  std::vector<std::string> xy{"x", "y"};
  PolySystem T(xy, {parsePolynomial("x-1", xy), parsePolynomial("x*y^2-1", xy)});
  Rng rng(16);
  TrackSettings settings;
  auto res = solveTotalDegree(T, settings, rng);
  REQUIRE(res.size() == 3);
  int infinite = 0, success = 0;
  for (const auto& r : res) {
    if (r.status == PathStatus::Success) {
      ++success;
      CHECK(std::abs(r.endpoint[0] - Complex(1, 0)) < 1e-8);
    } else {
      CHECK(probablyAtInfinity(r));
      ++infinite;
    }
  }
  CHECK(success == 2);
  CHECK(infinite == 1);
}

TEST_CASE("serial and parallel batches agree bit for bit") {
  std::vector<std::string> xy{"x", "y"};
  PolySystem S(xy, {parsePolynomial("x^3+y-2", xy), parsePolynomial("x*y+y^2-3", xy)});
  TrackSettings serial;
  serial.parallelPaths = false;
  TrackSettings parallel;
  parallel.parallelPaths = true;

  Rng r1(21), r2(21);
  auto a = solveTotalDegree(S, serial, r1);
  auto b = solveTotalDegree(S, parallel, r2);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].status == b[i].status);
    CHECK(a[i].steps == b[i].steps);
    REQUIRE(a[i].endpoint.size() == b[i].endpoint.size());
    for (size_t j = 0; j < a[i].endpoint.size(); ++j) CHECK(a[i].endpoint[j] == b[i].endpoint[j]);
  }
}
