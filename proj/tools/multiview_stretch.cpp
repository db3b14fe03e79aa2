// Multiview tensor stretch target: the variety of 3x2x2 tensors swept out by
// the twelve 4x4 minors of a 4x7 matrix [A B C] (A: 3 columns, B: 2, C: 2),
// where f_{i,j,k} drops column i of A, column j of B and column k of C.
//
// The graph system has 40 unknowns (28 matrix entries + 12 tensor
// coordinates) and the projection keeps the tensor block, so the witness
// computation slices the 17-dimensional fibers automatically. The honest
// cost of the total-degree solve is 4^12 = 16,777,216 paths; this driver
// streams them in chunks with a budget so partial runs stay useful, reports
// the distinct image points found, and (when the expected degree 6 is
// reached) reconstructs the Newton polytope and counts vertices and lattice
// points.
//
// Run `multiview_stretch --paths 100000` for a sample, `--full` for the
// whole sweep (hours to days on a laptop; embarrassingly parallel).

#include <chrono>
#include <cstdio>
#include <cstring>
#include <map>

#include "newtonscope/oracle.hpp"

using namespace newtonscope;

namespace {

struct MultiviewSystem {
  PolySystem graph;          // 12 equations y_{ijk} - f_{ijk}(p) over 40 vars
  std::vector<int> keptY;    // indices of the 12 tensor coordinates
};

MultiviewSystem buildMultiview() {
  // variables: p_0..p_27 (row-major 4x7 matrix), then y_0..y_11
  std::vector<std::string> names;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 7; ++c) names.push_back("p" + std::to_string(r) + std::to_string(c));
  for (int i = 0; i < 12; ++i) names.push_back("y" + std::to_string(i));
  const int N = 40;

  auto entryVar = [&](int r, int c) { return Polynomial::variable(N, 7 * r + c); };

  auto minor4 = [&](const std::vector<int>& cols) {
    // Leibniz over 4 rows
    Polynomial det(N);
    int perm[4] = {0, 1, 2, 3};
    std::vector<int> p(perm, perm + 4);
    std::sort(p.begin(), p.end());
    do {
      int sign = 1;
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
          if (p[i] > p[j]) sign = -sign;
      Polynomial term = Polynomial::constant(N, Complex(sign, 0));
      for (int r = 0; r < 4; ++r) term = term * entryVar(r, cols[p[r]]);
      det = det + term;
    } while (std::next_permutation(p.begin(), p.end()));
    return det;
  };

  MultiviewSystem sys;
  std::vector<Polynomial> eqs;
  int yIndex = 28;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        std::vector<int> cols;
        for (int c = 0; c < 3; ++c)
          if (c != i) cols.push_back(c);
        cols.push_back(3 + (1 - j));
        cols.push_back(5 + (1 - k));
        Polynomial f = minor4(cols);
        Polynomial eq = Polynomial::variable(N, yIndex) - f;
        eqs.push_back(std::move(eq));
        sys.keptY.push_back(yIndex);
        ++yIndex;
      }
    }
  }
  sys.graph = PolySystem(names, std::move(eqs));
  return sys;
}

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

}  // namespace

int main(int argc, char** argv) {
  long long budget = 100000;
  uint64_t seed = 2018;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--paths") && i + 1 < argc) budget = std::strtoll(argv[++i], nullptr, 10);
    if (!std::strcmp(argv[i], "--full")) budget = -1;
    if (!std::strcmp(argv[i], "--seed") && i + 1 < argc) seed = std::strtoull(argv[++i], nullptr, 10);
  }

  MultiviewSystem mv = buildMultiview();
  Rng rng(seed);
  TrackSettings settings;

  // assemble the square witness system by hand so the path sweep can stream:
  // 12 graph equations + 17 fiber-slicing hyperplanes + 11 image slice rows
  const int N = 40;
  std::vector<Polynomial> polys = mv.graph.polys;
  for (int i = 0; i < 17; ++i) polys.push_back(randomHyperplane(N, rng));
  LinearSlice slice = randomSlice(12, 11, rng);
  for (auto& row : slicePullback(slice, mv.keptY, N)) polys.push_back(std::move(row));
  PolySystem square(mv.graph.variableNames, std::move(polys));

  const long long totalPaths = 1LL << 24;  // 4^12
  std::printf("multiview graph system: %d equations, %d unknowns\n", square.equationCount(), square.n);
  std::printf("total-degree paths: %lld (budget %lld)\n", totalPaths,
              budget < 0 ? totalPaths : std::min(budget, totalPaths));

  // Bezout start system x_i^{d_i} - r_i; only the 12 graph equations have
  // degree 4, the rest are linear.
  std::vector<int> degrees(N);
  for (int i = 0; i < N; ++i) degrees[i] = square.polys[i].degree();
  std::vector<Complex> anchors(N);
  std::vector<Polynomial> startPolys;
  for (int i = 0; i < N; ++i) {
    anchors[i] = rng.genericComplex();
    Polynomial g(N);
    ExponentVector e(N, 0);
    e[i] = degrees[i];
    g.addTerm(e, Complex(1, 0));
    g.addTerm(ExponentVector(N, 0), -anchors[i]);
    startPolys.push_back(std::move(g));
  }
  PolySystem start(square.variableNames, std::move(startPolys));
  LinearMixHomotopy H(start, square, rng.gamma());

  std::vector<std::vector<Complex>> roots(N);
  for (int i = 0; i < N; ++i) {
    Complex principal = std::pow(anchors[i], 1.0 / degrees[i]);
    for (int k = 0; k < degrees[i]; ++k) {
      double theta = 2.0 * M_PI * k / degrees[i];
      roots[i].push_back(principal * Complex(std::cos(theta), std::sin(theta)));
    }
  }

  const long long limit = budget < 0 ? totalPaths : std::min(budget, totalPaths);
  std::vector<ComplexVector> found;  // representatives of distinct image points
  long long successes = 0, diverged = 0, failed = 0;
  auto t0 = std::chrono::steady_clock::now();

  const long long chunk = 512;
  for (long long base = 0; base < limit; base += chunk) {
    const long long end = std::min(base + chunk, limit);
    std::vector<PathResult> results(end - base);
#pragma omp parallel for schedule(dynamic)
    for (long long idx = base; idx < end; ++idx) {
      ComplexVector z(N);
      long long code = idx;
      for (int i = 0; i < 12; ++i) {  // graph equations occupy the first block
        z[i] = roots[i][code & 3];
        code >>= 2;
      }
      for (int i = 12; i < N; ++i) z[i] = roots[i][0];
      results[idx - base] = trackSegment(H, z, settings);
    }
    for (const auto& r : results) {
      switch (r.status) {
        case PathStatus::Success: {
          ++successes;
          bool fresh = true;
          for (const auto& rep : found) {
            double dist = 0;
            for (int c = 0; c < 12; ++c) dist = std::max(dist, std::abs(rep[mv.keptY[c]] - r.endpoint[mv.keptY[c]]));
            if (dist < 1e-6) {
              fresh = false;
              break;
            }
          }
          if (fresh) found.push_back(r.endpoint);
          break;
        }
        case PathStatus::Diverged: ++diverged; break;
        case PathStatus::Failed: ++failed; break;
      }
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("\r%lld/%lld paths | finite %lld | distinct images %zu | diverged %lld | failed %lld | %.0fs (%.2f ms/path)",
                end, limit, successes, found.size(), diverged, failed, elapsed, 1000.0 * elapsed / end);
    std::fflush(stdout);
    if (found.size() >= 6 && base > 4096) break;  // degree reached
  }
  std::printf("\n");

  if (found.size() < 6) {
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double perPath = elapsed / std::max(1LL, std::min(limit, totalPaths));
    std::printf("degree so far: %zu (expected 6). Full sweep estimate: %.1f hours on this machine.\n",
                found.size(), perPath * totalPaths / 3600.0);
    std::printf("rerun with --full (or a bigger --paths) to continue.\n");
    return 1;
  }

  std::printf("degree(X) = %zu\n", found.size());
  WitnessSet W;
  W.system = PolySystem(square.variableNames,
                        std::vector<Polynomial>(square.polys.begin(), square.polys.begin() + 29));
  W.projection = mv.keptY;
  W.slice = slice;
  W.points = found;
  W.degree = static_cast<int>(found.size());
  W.seed = seed;
  W.validate();

  std::printf("reconstructing the Newton polytope from oracle queries...\n");
  OracleSettings oracleSettings;
  ReconstructOptions recOpts;
  recOpts.gentlePerturbation = true;
  recOpts.maxQueries = 20000;
  OracleFn oracle = makeNumericOracleFn(W, seed, oracleSettings);
  ReconstructionResult rec = reconstructPolytope(oracle, 12, W.degree, recOpts);

  const auto& verts = rec.homogenizedVertices.points;
  std::vector<LatticePoint> unhom;
  for (const auto& v : verts) unhom.emplace_back(v.begin(), v.end() - 1);
  HullResult hull = exactConvexHull(unhom);
  long long lattice = countLatticePoints(unhom);
  std::printf("vertices: %zu | affine dim: %d | lattice points: %lld | oracle queries: %d\n",
              verts.size(), hull.affineDim, lattice, rec.queriesUsed);
  std::printf("expected: 60 vertices, affine dim 7, 66 lattice points\n");
  return (verts.size() == 60 && hull.affineDim == 7 && lattice == 66) ? 0 : 1;
}
