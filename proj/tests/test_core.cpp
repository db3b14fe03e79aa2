#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "newtonscope/numerics.hpp"
#include "newtonscope/polynomial.hpp"

using namespace newtonscope;

TEST_CASE("rational arithmetic and parsing") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(-6, -4) == Rational(3, 2));
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK((Rational(3, 2) * Rational(2, 3)) == Rational(1));
  CHECK(Rational(1, 2) < Rational(2, 3));
  CHECK(Rational::parse("3/2") == Rational(3, 2));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK(Rational(0, 5).den == 1);
  CHECK_THROWS(Rational(1, 0));
  CHECK(Rational(3, 2).toDouble() == doctest::Approx(1.5));
}

TEST_CASE("rng determinism and ranges") {
  Rng a(42), b(42), c(42, 1);
  for (int i = 0; i < 100; ++i) CHECK(a.nextU64() == b.nextU64());
  bool differs = false;
  Rng a2(42);
  for (int i = 0; i < 10; ++i) differs |= (a2.nextU64() != c.nextU64());
  CHECK(differs);

  Rng r(7);
  for (int i = 0; i < 1000; ++i) {
    double u = r.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  for (int i = 0; i < 100; ++i) {
    CHECK(std::abs(r.unitComplex()) == doctest::Approx(1.0).epsilon(1e-14));
    Complex g = r.gamma();
    CHECK(std::abs(g) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::min(std::abs(std::arg(g)), M_PI - std::abs(std::arg(g))) >= 0.1);
  }
}

TEST_CASE("lu solve basics") {
  ComplexMatrix I(2, 2);
  I.at(0, 0) = I.at(1, 1) = 1.0;
  auto x = luSolve(I, {Complex(3, 1), Complex(-2, 0)});
  CHECK(x[0] == Complex(3, 1));
  CHECK(x[1] == Complex(-2, 0));

  ComplexMatrix D(2, 2);
  D.at(0, 0) = 2.0;
  D.at(1, 1) = 4.0;
  auto y = luSolve(D, {Complex(2, 0), Complex(8, 0)});
  CHECK(y[0] == Complex(1, 0));
  CHECK(y[1] == Complex(2, 0));

  ComplexMatrix S(2, 2);
  S.at(0, 0) = 1.0;
  S.at(0, 1) = 1.0;
  S.at(1, 0) = 1.0;
  S.at(1, 1) = 1.0;
  CHECK_THROWS_AS(luSolve(S, {Complex(1, 0), Complex(1, 0)}), SingularMatrixError);
}

TEST_CASE("residual bound on random well-conditioned systems") {
  Rng rng(11);
  int tested = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 1 + static_cast<int>(rng.below(8));
    ComplexMatrix A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A.at(i, j) = rng.genericComplex();
    if (conditionEstimate(A) >= 1e6) continue;
    ++tested;
    ComplexVector rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = rng.genericComplex();
    ComplexVector x = luSolve(A, rhs);
    ComplexVector Ax = A.multiply(x);
    double resid = 0;
    for (int i = 0; i < n; ++i) resid = std::max(resid, std::abs(Ax[i] - rhs[i]));
    CHECK(resid <= 1e-10 * (1.0 + infNorm(rhs)));
  }
  CHECK(tested > 900);
}

TEST_CASE("qr fallback solves what lu solves") {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + static_cast<int>(rng.below(5));
    ComplexMatrix A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A.at(i, j) = rng.genericComplex();
    ComplexVector rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = rng.genericComplex();
    auto x1 = luSolve(A, rhs);
    auto x2 = qrSolve(A, rhs);
    for (int i = 0; i < n; ++i) CHECK(std::abs(x1[i] - x2[i]) < 1e-9);
  }
}

TEST_CASE("singular values and rank") {
  // rank-1 matrix
  ComplexMatrix A(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) A.at(i, j) = Complex(i + 1, 0) * Complex(j - 1, 0.5);
  CHECK(numericalRank(A) == 1);

  ComplexMatrix I3(3, 3);
  for (int i = 0; i < 3; ++i) I3.at(i, i) = 1.0;
  auto sv = singularValues(I3);
  for (double s : sv) CHECK(s == doctest::Approx(1.0));
  CHECK(numericalRank(I3) == 3);
}

TEST_CASE("random slice shapes and determinism") {
  Rng r1(5), r2(5);
  LinearSlice s1 = randomSlice(3, 1, r1);
  LinearSlice s2 = randomSlice(3, 1, r2);
  CHECK(s1.k() == 1);
  CHECK(s1.coefficients.cols() == 4);
  for (int j = 0; j < 4; ++j) CHECK(s1.coefficients.at(0, j) == s2.coefficients.at(0, j));
  CHECK_THROWS(randomSlice(2, 3, r1));
}

TEST_CASE("parser: expansion, like terms, errors") {
  std::vector<std::string> xyt{"x", "y", "t"};

  Polynomial f = parsePolynomial("x*y*t-(x-y-t)^2+3*x+t", xyt);
  auto sup = f.support();
  std::set<ExponentVector> expect{{1, 1, 1}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 0},
                                  {1, 0, 1}, {0, 1, 1}, {1, 0, 0}, {0, 0, 1}};
  CHECK(std::set<ExponentVector>(sup.begin(), sup.end()) == expect);
  CHECK(f.degree() == 3);

  Polynomial one = parsePolynomial("0*x + 1", xyt);
  CHECK(one.termCount() == 1);
  CHECK(one.coefficient({0, 0, 0}) == Complex(1, 0));

  std::vector<std::string> xy{"x", "y"};
  Polynomial g = parsePolynomial("x^2+y+1", xy);
  CHECK(g.degree() == 2);
  CHECK(g.termCount() == 3);

  CHECK_THROWS_AS(parsePolynomial("x^-2", xy), ParseError);
  CHECK_THROWS_AS(parsePolynomial("z+1", xy), ParseError);
  CHECK_THROWS_AS(parsePolynomial("x*(y", xy), ParseError);
  CHECK_THROWS_AS(parsePolynomial("2x", xy), ParseError);
  try {
    parsePolynomial("x +* y", xy);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseErrorKind::Syntax);
    CHECK(e.position() > 0);
  }
  try {
    parsePolynomial("x^-2", xy);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseErrorKind::NegativeExponent);
  }

  // complex literals
  Polynomial c = parsePolynomial("(2+3i)*x + i*y - 1.5i", xy);
  CHECK(c.coefficient({1, 0}) == Complex(2, 3));
  CHECK(c.coefficient({0, 1}) == Complex(0, 1));
  CHECK(c.coefficient({0, 0}) == Complex(0, -1.5));

  int dropped = 0;
  parsePolynomial("1e-20*x + y", xy, &dropped);
  CHECK(dropped == 1);
}

TEST_CASE("evaluate") {
  std::vector<std::string> xy{"x", "y"};
  Polynomial g = parsePolynomial("x^2+y+1", xy);
  CHECK(g.evaluate({Complex(1, 0), Complex(2, 0)}) == Complex(4, 0));
  CHECK(g.evaluate({Complex(0, 0), Complex(0, 0)}) == Complex(1, 0));

  std::vector<std::string> xyt{"x", "y", "t"};
  Polynomial f = parsePolynomial("x*y*t-(x-y-t)^2+3*x+t", xyt);
  Complex one(1, 0);
  CHECK(f.evaluate({one, one, one}) == Complex(4, 0));
  CHECK_THROWS(f.evaluate({one, one}));
}

TEST_CASE("parse/print round trip is exact") {
  Rng rng(17);
  std::vector<std::string> names{"x", "y", "z"};
  for (int trial = 0; trial < 50; ++trial) {
    Polynomial f(3);
    int terms = 1 + static_cast<int>(rng.below(8));
    for (int t = 0; t < terms; ++t) {
      ExponentVector e{static_cast<int>(rng.below(5)), static_cast<int>(rng.below(5)),
                       static_cast<int>(rng.below(5))};
      f.addTerm(e, Complex(rng.uniform(-2, 2) * std::exp(rng.uniform(-8, 8)),
                           rng.uniform(-2, 2) * std::exp(rng.uniform(-8, 8))));
    }
    Polynomial g = parsePolynomial(f.print(names), names);
    CHECK(g.sameTerms(f));
  }
  CHECK(parsePolynomial(Polynomial(3).print(names), names).isZero());
}

TEST_CASE("restrictToLine") {
  std::vector<std::string> x{"x"};
  Polynomial f = parsePolynomial("x", x);
  LineFamily L({Rational(1)}, {Complex(1, 0)}, {Complex(1, 0)});
  Polynomial r = restrictToLine(f, L, 2.0);
  CHECK(r.coefficient({1}) == Complex(2, 0));
  CHECK(r.coefficient({0}) == Complex(-2, 0));

  std::vector<std::string> xy{"x", "y"};
  Polynomial g = parsePolynomial("x^2+y+1", xy);
  LineFamily L2({Rational(1), Rational(0)}, {Complex(1, 0), Complex(1, 0)},
                {Complex(1, 0), Complex(-1, 0)});
  Polynomial r2 = restrictToLine(g, L2, 1.0);
  CHECK(r2.coefficient({2}) == Complex(1, 0));
  CHECK(std::abs(r2.coefficient({1}) - Complex(-1, 0)) < 1e-14);
  CHECK(std::abs(r2.coefficient({0}) - Complex(3, 0)) < 1e-14);
}

TEST_CASE("restrictToLine commutes with evaluation") {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng.below(2));
    Polynomial f(n);
    int terms = 1 + static_cast<int>(rng.below(6));
    for (int t = 0; t < terms; ++t) {
      ExponentVector e(n);
      for (int i = 0; i < n; ++i) e[i] = static_cast<int>(rng.below(4));
      f.addTerm(e, rng.genericComplex());
    }
    if (f.isZero()) continue;

    RationalVector omega(n);
    for (int i = 0; i < n; ++i)
      omega[i] = Rational(static_cast<long long>(rng.below(7)) - 3, 1 + static_cast<long long>(rng.below(2)));
    ComplexVector a(n), b(n);
    ComplexVector g(n);
    for (int i = 0; i < n; ++i) {
      a[i] = rng.unitComplex();
      g[i] = Complex(3.0 * i + 1.0, 0.7);  // well separated targets
      b[i] = g[i] * a[i];
    }
    LineFamily L(omega, a, b);
    double t = std::exp(rng.uniform(-1.0, 2.0));
    Complex s0 = rng.genericComplex();

    ComplexVector point(n);
    for (int i = 0; i < n; ++i) point[i] = L.tPower(i, t) * (a[i] * s0 - b[i]);
    Complex direct = f.evaluate(point);
    Complex restricted = restrictToLine(f, L, t).evaluate({s0});
    CHECK(std::abs(direct - restricted) <= 1e-10 * (1.0 + std::abs(direct)));
  }
}

TEST_CASE("homogeneous restriction scales as t^d") {
  std::vector<std::string> xy{"x", "y"};
  Polynomial f = parsePolynomial("x^2+(0+1i)*x*y-3*y^2", xy);
  LineFamily L({Rational(1), Rational(1)}, {Complex(1, 0), Complex(0.8, 0.6)},
               {Complex(1, 0), Complex(-0.8, -0.6)});
  Polynomial r1 = restrictToLine(f, L, 1.5);
  Polynomial r2 = restrictToLine(f, L, 3.0);
  double ratio = std::pow(1.5 / 3.0, f.degree());
  for (const auto& [e, c] : r2.terms()) {
    Complex expected = c * ratio;
    CHECK(std::abs(r1.coefficient(e) - expected) <= 1e-10 * std::abs(expected));
  }
}

TEST_CASE("monomial map") {
  std::vector<std::string> xyz{"x", "y", "z"};
  std::vector<std::vector<long long>> A{{1, 1, 1}, {0, 1, 0}, {0, 0, 1}};

  Polynomial x = parsePolynomial("x", xyz);
  Polynomial fx = applyMonomialMap(x, A);
  CHECK(fx.coefficient({1, 1, 1}) == Complex(1, 0));
  CHECK(fx.termCount() == 1);

  Polynomial f = parsePolynomial("x^2+y", xyz);
  Polynomial g = applyMonomialMap(f, A);
  CHECK(g.coefficient({2, 2, 2}) == Complex(1, 0));
  CHECK(g.coefficient({0, 1, 0}) == Complex(1, 0));
  CHECK(g.termCount() == 2);

  std::vector<std::vector<long long>> I{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(applyMonomialMap(f, I).sameTerms(f));

  std::vector<std::vector<long long>> bad{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK_THROWS(applyMonomialMap(f, bad));
  std::vector<std::vector<long long>> neg{{1, 0, 0}, {0, 1, -1}, {0, 0, 1}};
  CHECK_THROWS(applyMonomialMap(f, neg));

  // coefficients survive as a multiset, term count preserved
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    Polynomial h(3);
    for (int t = 0; t < 6; ++t) {
      ExponentVector e{static_cast<int>(rng.below(4)), static_cast<int>(rng.below(4)),
                       static_cast<int>(rng.below(4))};
      h.addTerm(e, rng.genericComplex());
    }
    Polynomial hm = applyMonomialMap(h, A);
    CHECK(hm.termCount() == h.termCount());
    std::multiset<std::pair<double, double>> before, after;
    for (const auto& [e, c] : h.terms()) before.insert({c.real(), c.imag()});
    for (const auto& [e, c] : hm.terms()) after.insert({c.real(), c.imag()});
    CHECK(before == after);
  }
}

TEST_CASE("homogenize") {
  std::vector<std::string> xy{"x", "y"};
  Polynomial f = parsePolynomial("x^2+y+1", xy);
  Polynomial h = homogenize(f);
  CHECK(h.variableCount() == 3);
  CHECK(h.coefficient({2, 0, 0}) == Complex(1, 0));
  CHECK(h.coefficient({0, 1, 1}) == Complex(1, 0));
  CHECK(h.coefficient({0, 0, 2}) == Complex(1, 0));
  for (const auto& [e, c] : h.terms()) CHECK(e[0] + e[1] + e[2] == 2);

  Polynomial g = parsePolynomial("x^2+x*y", xy);
  Polynomial hg = homogenize(g);
  for (const auto& [e, c] : hg.terms()) CHECK(e[2] == 0);

  std::vector<std::string> xyt{"x", "y", "t"};
  Polynomial ex1 = parsePolynomial("x*y*t-(x-y-t)^2+3*x+t", xyt);
  Polynomial hex = homogenize(ex1);
  for (const auto& [e, c] : hex.terms()) CHECK(e[0] + e[1] + e[2] + e[3] == 3);
}

TEST_CASE("support and jacobian") {
  std::vector<std::string> xy{"x", "y"};
  Polynomial g = parsePolynomial("x^2+y+1", xy);
  auto sup = g.support();
  CHECK(sup.size() == 3);

  PolySystem S({"x"}, {parsePolynomial("x^2-1", {"x"})});
  auto J = jacobian(S);
  CHECK(J[0][0].coefficient({1}) == Complex(2, 0));

  std::vector<std::string> xyt{"x", "y", "t"};
  PolySystem ex1(xyt, {parsePolynomial("x*y*t-(x-y-t)^2+3*x+t", xyt),
                       parsePolynomial("x+y^2+t^2", xyt)});
  auto J2 = jacobian(ex1);
  CHECK(J2.size() == 2);
  CHECK(J2[0].size() == 3);
  // d(x+y^2+t^2)/dx = 1
  CHECK(J2[1][0].coefficient({0, 0, 0}) == Complex(1, 0));
  CHECK(J2[1][0].termCount() == 1);
}

TEST_CASE("line family validation") {
  CHECK_THROWS(LineFamily({Rational(0), Rational(0)}, {Complex(1, 0), Complex(1, 0)},
                          {Complex(1, 0), Complex(1.2, 0)}));  // targets too close
  CHECK_THROWS(LineFamily({Rational(0)}, {Complex(0, 0)}, {Complex(1, 0)}));
  CHECK_NOTHROW(LineFamily({Rational(0), Rational(0)}, {Complex(1, 0), Complex(1, 0)},
                           {Complex(1, 0), Complex(-1, 0)}));
}
