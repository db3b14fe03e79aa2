#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "newtonscope/tropical.hpp"

using namespace newtonscope;

namespace {

RationalVector dir(std::initializer_list<long long> vals) {
  RationalVector v;
  for (long long x : vals) v.push_back(Rational(x));
  return v;
}

std::vector<std::vector<long long>> shearMap() { return {{1, 1, 1}, {0, 1, 0}, {0, 0, 1}}; }

}  // namespace

TEST_CASE("randomUnimodularMap") {
  Rng rng(1);
  CHECK(randomUnimodularMap(1, rng) == std::vector<std::vector<long long>>{{1}});

  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng.below(3));
    auto A = randomUnimodularMap(n, rng);
    CHECK(integerDeterminant(A) == 1);
    for (const auto& row : A)
      for (long long v : row) CHECK(v >= 0);
    // A * A^{-1} = I, checked through the exact inverse action on unit vectors
    for (int c = 0; c < n; ++c) {
      RationalVector e(n, Rational(0));
      e[c] = Rational(1);
      RationalVector x = transformDirection(A, e);  // A x = e
      for (int i = 0; i < n; ++i) {
        Rational acc(0);
        for (int j = 0; j < n; ++j) acc = acc + Rational(A[i][j]) * x[j];
        CHECK(acc == e[i]);
      }
    }
  }
}

TEST_CASE("transformDirection on the shear map x -> xyz") {
  auto A = shearMap();
  CHECK(transformDirection(A, dir({1, 1, 1})) == RationalVector{Rational(-1), Rational(1), Rational(1)});
  CHECK(transformDirection(A, dir({1, -1, -1})) == RationalVector{Rational(3), Rational(-1), Rational(-1)});

  std::vector<std::vector<long long>> I3{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  RationalVector w = dir({5, -2, 7});
  CHECK(transformDirection(I3, w) == w);

  // transformDirection(A, A omega) = omega
  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    auto B = randomUnimodularMap(3, rng);
    RationalVector omega = dir({static_cast<long long>(rng.below(9)) - 4,
                                static_cast<long long>(rng.below(9)) - 4,
                                static_cast<long long>(rng.below(9)) - 4});
    RationalVector Aw(3, Rational(0));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) Aw[i] = Aw[i] + Rational(B[i][j]) * omega[j];
    CHECK(transformDirection(B, Aw) == omega);
  }

  std::vector<std::vector<long long>> bad{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK_THROWS(transformDirection(bad, dir({1, 1, 1})));
}

TEST_CASE("the shear map x -> xyz is producible by elementary products") {
  // (I + e_{01}) (I + e_{02}) has rows (1,1,1),(0,1,0),(0,0,1)
  std::vector<std::vector<long long>> A{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  auto addRow = [&](int i, int j, long long c) {
    for (int k = 0; k < 3; ++k) A[i][k] += c * A[j][k];
  };
  addRow(0, 1, 1);
  addRow(0, 2, 1);
  CHECK(A == shearMap());
}

TEST_CASE("hypersurface membership equals the exact tropical test") {
  std::vector<std::string> xy{"x", "y"};
  Polynomial f = parsePolynomial("x+y+1", xy);
  PolySystem I(xy, {f});
  OracleSettings settings;

  Rng rng(3);
  MembershipReport r1 = tropicalMembership(I, dir({1, 1}), settings, rng);
  CHECK(r1.verdict == MembershipReport::Verdict::True);
  MembershipReport r2 = tropicalMembership(I, dir({1, 2}), settings, rng);
  CHECK(r2.verdict == MembershipReport::Verdict::False);
}

TEST_CASE("hypersurface soundness on random polynomials") {
  Rng rng(4);
  OracleSettings settings;
  std::vector<std::string> xy{"x", "y"};
  int done = 0;
  for (int trial = 0; trial < 300 && done < 200; ++trial) {
    Polynomial f(2);
    int terms = 2 + static_cast<int>(rng.below(5));
    for (int t = 0; t < terms; ++t)
      f.addTerm({static_cast<int>(rng.below(4)), static_cast<int>(rng.below(4))}, rng.unitComplex());
    if (f.degree() < 1 || f.termCount() < 2) continue;

    RationalVector w = dir({static_cast<long long>(rng.below(9)) - 4,
                            static_cast<long long>(rng.below(9)) - 4});
    PolySystem I(xy, {f});
    MembershipReport report;
    try {
      report = tropicalMembership(I, w, settings, rng);
    } catch (const WitnessError&) {
      continue;
    }
    if (!report.decisive()) continue;
    bool expected = tropicalOfHypersurface(f, w);
    CHECK((report.verdict == MembershipReport::Verdict::True) == expected);
    ++done;
  }
  CHECK(done == 200);
}

TEST_CASE("space curve membership: sample curve I, direction (1,1,1)") {
  std::vector<std::string> xyz{"x", "y", "z"};
  PolySystem I(xyz, {parsePolynomial("x*z+4*y*z-z^2+3*x-12*y+5*z", xyz),
                     parsePolynomial("x*y-4*y^2+y*z+x+2*y-z", xyz)});
  OracleSettings settings;
  Rng rng(5);
  MembershipReport report = tropicalMembership(I, dir({1, 1, 1}), settings, rng);
  REQUIRE(report.decisive());
  CHECK(report.verdict == MembershipReport::Verdict::True);
  CHECK(report.perProjection.size() == 3);
  for (const auto& pr : report.perProjection) {
    CHECK_FALSE(pr.skipped);
    CHECK(pr.kept.size() == 2);
  }
}

TEST_CASE("collapsing projections are skipped") {
  // V(I) is the x-axis line {y=1, z=2}; the (y,z) projection collapses to a point
  std::vector<std::string> xyz{"x", "y", "z"};
  PolySystem I(xyz, {parsePolynomial("y-1", xyz), parsePolynomial("z-2", xyz)});
  OracleSettings settings;
  Rng rng(6);
  MembershipReport report = tropicalMembership(I, dir({1, 1, 1}), settings, rng);
  int skipped = 0;
  for (const auto& pr : report.perProjection) skipped += pr.skipped ? 1 : 0;
  CHECK(skipped >= 1);
  CHECK(report.perProjection.size() == 3);
}

TEST_CASE("membership report serializes with per-projection answers") {
  std::vector<std::string> xy{"x", "y"};
  PolySystem I(xy, {parsePolynomial("x+y+1", xy)});
  OracleSettings settings;
  Rng rng(7);
  MembershipReport report = tropicalMembership(I, dir({1, 1}), settings, rng);
  report.seed = 7;
  std::string json = membershipToJson(report);
  CHECK(json.find("\"verdict\": true") != std::string::npos);
  CHECK(json.find("\"projections\"") != std::string::npos);
  CHECK(json.find("\"seed\": 7") != std::string::npos);

  MembershipReport withMap = tropicalMembership(I, dir({1, 1}), settings, rng,
                                                MonomialMapChoice::given({{1, 1}, {0, 1}}));
  std::string json2 = membershipToJson(withMap);
  CHECK(json2.find("\"transformed\": true") != std::string::npos);
  CHECK(json2.find("\"map\"") != std::string::npos);
}

TEST_CASE("monomial map transforms the ideal and the direction together") {
  // trop membership is invariant under the change of coordinates
  std::vector<std::string> xy{"x", "y"};
  Polynomial f = parsePolynomial("x+y+1", xy);
  PolySystem I(xy, {f});
  OracleSettings settings;
  Rng rng(8);
  for (auto w : {dir({1, 1}), dir({1, 2}), dir({-1, 0}), dir({0, -3})}) {
    MembershipReport plain = tropicalMembership(I, w, settings, rng);
    MembershipReport mapped =
        tropicalMembership(I, w, settings, rng, MonomialMapChoice::given({{1, 2}, {0, 1}}));
    REQUIRE(plain.decisive());
    REQUIRE(mapped.decisive());
    CHECK(plain.verdict == mapped.verdict);
  }
}
