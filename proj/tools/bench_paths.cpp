// Compares the serial reference path tracking against the OpenMP batch on
// the two hot loops: a total-degree solve and a block of oracle queries.
// The results must agree bit for bit; only the wall time differs.

#include <chrono>
#include <cstdio>
#include <string>

#include "newtonscope/oracle.hpp"

using namespace newtonscope;

namespace {

double seconds(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

Polynomial densePolynomial(int n, int degree, Rng& rng) {
  Polynomial f(n);
  ExponentVector e(n, 0);
  std::function<void(int, int)> fill = [&](int var, int left) {
    if (var == n) {
      f.addTerm(e, rng.genericComplex());
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[var] = k;
      fill(var + 1, left - k);
    }
    e[var] = 0;
  };
  fill(0, degree);
  return f;
}

bool sameResults(const std::vector<PathResult>& a, const std::vector<PathResult>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].status != b[i].status || a[i].steps != b[i].steps) return false;
    if (a[i].endpoint != b[i].endpoint) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 7;

  std::printf("== total-degree solve: 3 dense cubics in 3 variables (27 paths) ==\n");
  {
    Rng gen(seed);
    std::vector<Polynomial> polys;
    for (int i = 0; i < 3; ++i) polys.push_back(densePolynomial(3, 3, gen));
    PolySystem S({"x", "y", "z"}, polys);

    TrackSettings serial;
    serial.parallelPaths = false;
    TrackSettings parallel;
    parallel.parallelPaths = true;

    Rng r1(seed, 5), r2(seed, 5);
    auto t0 = std::chrono::steady_clock::now();
    auto serialResults = solveTotalDegree(S, serial, r1);
    auto t1 = std::chrono::steady_clock::now();
    auto parallelResults = solveTotalDegree(S, parallel, r2);
    auto t2 = std::chrono::steady_clock::now();

    std::printf("serial   %.3fs\nparallel %.3fs\n", seconds(t0, t1), seconds(t1, t2));
    std::printf("identical results: %s\n", sameResults(serialResults, parallelResults) ? "yes" : "NO");
  }

  std::printf("\n== oracle queries: random sextic curve, 40 directions ==\n");
  {
    Rng gen(seed, 9);
    Polynomial f = densePolynomial(2, 6, gen);

    std::vector<RationalVector> dirs;
    for (int k = 0; k < 40; ++k)
      dirs.push_back({Rational(static_cast<long long>(gen.below(11)) - 5),
                      Rational(static_cast<long long>(gen.below(11)) - 5)});

    auto run = [&](bool par) {
      OracleSettings settings;
      settings.tracking.parallelPaths = par;
      Rng rng(seed, 2);
      WitnessSet W = witnessForHypersurface(f, {"x", "y"}, rng, settings.tracking);
      OracleContext ctx = buildOracle(W, PointChoice::defaults(), rng, settings.tracking);
      std::string digest;
      auto t0 = std::chrono::steady_clock::now();
      for (const auto& w : dirs) {
        OracleAnswer a = queryOracle(ctx, w, settings);
        digest += std::to_string(static_cast<int>(a.tag)) + ":" + std::to_string(a.betaInf) + ";";
      }
      auto t1 = std::chrono::steady_clock::now();
      return std::make_pair(seconds(t0, t1), digest);
    };

    auto [ts, ds] = run(false);
    auto [tp, dp] = run(true);
    std::printf("serial   %.3fs\nparallel %.3fs\n", ts, tp);
    std::printf("identical answers: %s\n", ds == dp ? "yes" : "NO");
  }
  return 0;
}
