#include "newtonscope/polytope.hpp"

#include <algorithm>
#include <cmath>

namespace newtonscope {

LatticePolytope::LatticePolytope(std::vector<LatticePoint> pts) : points(std::move(pts)) {
  if (points.empty()) throw std::invalid_argument("lattice polytope needs at least one point");
  for (const auto& p : points)
    if (p.size() != points[0].size()) throw std::invalid_argument("lattice points of mixed dimension");
}

LatticePolytope LatticePolytope::fromSupport(const Polynomial& f) {
  std::vector<LatticePoint> pts;
  for (const auto& alpha : f.support()) pts.emplace_back(alpha.begin(), alpha.end());
  return LatticePolytope(std::move(pts));
}

LatticePolytope LatticePolytope::fromHomogenizedSupport(const Polynomial& f) {
  return fromSupport(homogenize(f));
}

Rational supportFunction(const LatticePolytope& P, const RationalVector& omega) {
  if (static_cast<int>(omega.size()) != P.ambientDim())
    throw std::invalid_argument("support function dimension mismatch");
  Rational best = dot(omega, P.points[0]);
  for (size_t i = 1; i < P.points.size(); ++i) {
    Rational v = dot(omega, P.points[i]);
    if (best < v) best = v;
  }
  return best;
}

LatticePolytope exposedFace(const LatticePolytope& P, const RationalVector& omega) {
  Rational h = supportFunction(P, omega);
  std::vector<LatticePoint> face;
  for (const auto& p : P.points)
    if (dot(omega, p) == h) face.push_back(p);
  return LatticePolytope(std::move(face));
}

int affineDimension(const std::vector<LatticePoint>& points) {
  if (points.empty()) return -1;
  const size_t n = points[0].size();
  std::vector<std::vector<__int128>> rows;
  for (size_t i = 1; i < points.size(); ++i) {
    std::vector<__int128> row(n);
    for (size_t j = 0; j < n; ++j) row[j] = points[i][j] - points[0][j];
    rows.push_back(std::move(row));
  }
  // Bareiss-style elimination for the exact rank.
  int rank = 0;
  size_t col = 0;
  __int128 prev = 1;
  while (rank < static_cast<int>(rows.size()) && col < n) {
    int pivot = -1;
    for (size_t i = rank; i < rows.size(); ++i)
      if (rows[i][col] != 0) {
        pivot = static_cast<int>(i);
        break;
      }
    if (pivot < 0) {
      ++col;
      continue;
    }
    std::swap(rows[rank], rows[pivot]);
    for (size_t i = rank + 1; i < rows.size(); ++i) {
      for (size_t j = col + 1; j < n; ++j)
        rows[i][j] = (rows[i][j] * rows[rank][col] - rows[i][col] * rows[rank][j]) / prev;
      rows[i][col] = 0;
    }
    prev = rows[rank][col];
    ++rank;
    ++col;
  }
  return rank;
}

SymbolicOracleAnswer symbolicOracle(const Polynomial& f, const RationalVector& omega) {
  if (static_cast<int>(omega.size()) != f.variableCount())
    throw std::invalid_argument("symbolic oracle dimension mismatch");
  if (f.isZero()) throw std::invalid_argument("symbolic oracle of the zero polynomial");
  const int d = f.degree();

  LatticePolytope support = LatticePolytope::fromSupport(f);
  LatticePolytope face = exposedFace(support, omega);

  SymbolicOracleAnswer out;
  if (face.pointCount() == support.pointCount()) {
    out.tag = SymbolicOracleAnswer::Tag::EEP;
    return out;
  }
  auto homogTail = [d](const LatticePoint& p) {
    long long total = 0;
    for (long long v : p) total += v;
    return d - total;
  };
  if (face.pointCount() == 1) {
    out.tag = SymbolicOracleAnswer::Tag::Vertex;
    out.vertex = face.points[0];
    out.vertex.push_back(homogTail(face.points[0]));
    return out;
  }
  out.tag = SymbolicOracleAnswer::Tag::FaceMin;
  out.faceMin = face.points[0];
  out.faceMinInf = homogTail(face.points[0]);
  for (const auto& p : face.points) {
    for (size_t i = 0; i < p.size(); ++i) out.faceMin[i] = std::min(out.faceMin[i], p[i]);
    out.faceMinInf = std::min(out.faceMinInf, homogTail(p));
  }
  out.faceDim = affineDimension(face.points);
  return out;
}

bool tropicalOfHypersurface(const Polynomial& f, const RationalVector& omega) {
  if (f.isZero()) return false;
  LatticePolytope face = exposedFace(LatticePolytope::fromSupport(f), omega);
  return face.pointCount() >= 2;
}

Rational dOmega(const Polynomial& f, const RationalVector& omega) {
  LatticePolytope support = LatticePolytope::fromSupport(f);
  Rational h = supportFunction(support, omega);
  bool found = false;
  Rational best(0);
  for (const auto& p : support.points) {
    Rational gap = h - dot(omega, p);
    if (gap.isZero()) continue;
    if (!found || gap < best) best = gap;
    found = true;
  }
  if (!found) throw std::invalid_argument("dOmega: omega exposes the entire support");
  return best;
}

ComplexVector univariateRoots(const ComplexVector& coeffs) {
  int deg = static_cast<int>(coeffs.size()) - 1;
  while (deg > 0 && std::abs(coeffs[deg]) == 0.0) --deg;
  if (deg <= 0) return {};

  ComplexVector c(coeffs.begin(), coeffs.begin() + deg + 1);
  const Complex lead = c[deg];
  for (auto& v : c) v /= lead;

  double radius = 1.0;
  for (int k = 0; k < deg; ++k) radius = std::max(radius, std::pow(std::abs(c[k]), 1.0 / (deg - k)));
  radius *= 2.0;

  ComplexVector roots(deg);
  const Complex seed(0.4, 0.9);
  Complex acc(1, 0);
  for (int k = 0; k < deg; ++k) {
    acc *= seed;
    roots[k] = radius * acc / std::abs(acc) * (0.3 + 0.7 * (k + 1.0) / deg);
  }

  for (int iter = 0; iter < 500; ++iter) {
    double worst = 0.0;
    for (int k = 0; k < deg; ++k) {
      Complex value(0, 0);
      for (int j = deg; j >= 0; --j) value = value * roots[k] + c[j];
      Complex denom(1, 0);
      for (int j = 0; j < deg; ++j)
        if (j != k) denom *= roots[k] - roots[j];
      if (std::abs(denom) == 0.0) {
        roots[k] += Complex(1e-8, 1e-8);
        worst = 1.0;
        continue;
      }
      Complex delta = value / denom;
      roots[k] -= delta;
      worst = std::max(worst, std::abs(delta));
    }
    if (worst < 1e-13) break;
  }
  return roots;
}

double theoremTwoBound(const Polynomial& f, const RationalVector& omega, const LineFamily& L,
                       Complex tau, int beta, double t) {
  if (beta < 1) throw std::invalid_argument("theoremTwoBound needs beta >= 1");
  const int n = f.variableCount();
  if (L.dimension() != n) throw std::invalid_argument("line family dimension mismatch");

  LatticePolytope support = LatticePolytope::fromSupport(f);
  Rational h = supportFunction(support, omega);

  // split support into the face and its complement
  std::vector<ExponentVector> faceAlphas, complementAlphas;
  for (const auto& [alpha, c] : f.terms()) {
    if (dot(omega, alpha) == h)
      faceAlphas.push_back(alpha);
    else
      complementAlphas.push_back(alpha);
  }
  if (complementAlphas.empty())
    throw std::invalid_argument("theoremTwoBound: omega exposes the entire support");

  // g_omega = facial form with the common monomial factor x^m removed
  ExponentVector m = faceAlphas[0];
  for (const auto& alpha : faceAlphas)
    for (int i = 0; i < n; ++i) m[i] = std::min(m[i], alpha[i]);
  Polynomial g(n);
  for (const auto& alpha : faceAlphas) {
    ExponentVector reduced(n);
    for (int i = 0; i < n; ++i) reduced[i] = alpha[i] - m[i];
    g.addTerm(reduced, f.coefficient(alpha));
  }

  // facial restriction at t = 1: substitute x_i = a_i s - b_i
  ComplexVector negB(n);
  for (int i = 0; i < n; ++i) negB[i] = -L.b[i];
  Polynomial G = restrictToAffineLine(g, L.a, negB);
  const int degG = G.degree();
  ComplexVector dense(degG + 1, Complex(0, 0));
  for (const auto& [alpha, c] : G.terms()) dense[alpha[0]] = c;
  const Complex k = dense[degG];
  if (std::abs(k) == 0.0) throw std::runtime_error("theoremTwoBound: degenerate facial restriction");

  ComplexVector roots = univariateRoots(dense);
  double scale = 1.0;
  for (const auto& r : roots) scale = std::max(scale, std::abs(r));
  double nearest = 1e300;
  for (const auto& r : roots) nearest = std::min(nearest, std::abs(r - tau));
  if (nearest > 1e-5 * scale)
    throw std::invalid_argument("theoremTwoBound: tau is not a root of the facial restriction");

  double maxCoeff = 0.0;
  for (const auto& [alpha, c] : f.terms()) maxCoeff = std::max(maxCoeff, std::abs(c));
  const double C = maxCoeff / std::abs(k);

  double aMin = 1.0, aMax = 1.0;
  for (const auto& ai : L.a) {
    aMin = std::min(aMin, std::abs(ai));
    aMax = std::max(aMax, std::abs(ai));
  }

  const ComplexVector targets = L.targets();
  double gammaTau = aMin;
  for (const auto& g0 : targets) gammaTau = std::min(gammaTau, 0.5 * std::abs(tau - g0));
  for (const auto& r : roots)
    if (std::abs(r - tau) > 1e-6 * std::max(1.0, scale))
      gammaTau = std::min(gammaTau, 0.5 * std::abs(tau - r));

  double GammaTau = 2.0 / aMax;
  for (const auto& g0 : targets) GammaTau = std::max(GammaTau, std::abs(tau - g0));

  const double dw = dOmega(f, omega).toDouble();
  const double fc = static_cast<double>(complementAlphas.size());
  const int d = f.degree();
  return std::pow(t, -dw) * C * fc * std::pow(aMax / aMin * (1.0 + GammaTau / gammaTau), d);
}

}  // namespace newtonscope
