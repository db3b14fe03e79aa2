#ifndef NEWTONSCOPE_POLYTOPE_HPP
#define NEWTONSCOPE_POLYTOPE_HPP

#include <functional>
#include <optional>
#include <string>

#include "newtonscope/polynomial.hpp"

namespace newtonscope {

using LatticePoint = std::vector<long long>;

/// Finite generating set of integer points; the polytope is their hull.
struct LatticePolytope {
  std::vector<LatticePoint> points;

  LatticePolytope() = default;
  explicit LatticePolytope(std::vector<LatticePoint> pts);

  int ambientDim() const { return points.empty() ? 0 : static_cast<int>(points[0].size()); }
  int pointCount() const { return static_cast<int>(points.size()); }

  static LatticePolytope fromSupport(const Polynomial& f);
  static LatticePolytope fromHomogenizedSupport(const Polynomial& f);
};

/// h_P(omega) = max <x, omega>, exact.
Rational supportFunction(const LatticePolytope& P, const RationalVector& omega);

/// Generating points attaining the support value.
LatticePolytope exposedFace(const LatticePolytope& P, const RationalVector& omega);

/// Exact affine dimension of a point set.
int affineDimension(const std::vector<LatticePoint>& points);

/// Exact oracle value for the homogenized Newton polytope of f in
/// direction (omega, 0).
struct SymbolicOracleAnswer {
  enum class Tag { EEP, Vertex, FaceMin };
  Tag tag = Tag::EEP;
  LatticePoint vertex;    // homogenized, length n+1, for Vertex
  LatticePoint faceMin;   // coordinate-wise minimum m, length n, for FaceMin
  long long faceMinInf = 0;  // m_infinity
  int faceDim = 0;           // >= 1 for FaceMin
};

SymbolicOracleAnswer symbolicOracle(const Polynomial& f, const RationalVector& omega);

/// omega lies in trop(V(f)): the maximum of <omega, alpha> over the support
/// is attained at least twice.
bool tropicalOfHypersurface(const Polynomial& f, const RationalVector& omega);

/// d_omega = min { h(omega) - <omega, alpha> : alpha off the exposed face }.
/// Throws when omega exposes every support point.
Rational dOmega(const Polynomial& f, const RationalVector& omega);

/// The Theorem-2 style convergence envelope
///   t^{-d_omega} * C * |F^c| * (a_max/a_min * (1 + Gamma/gamma))^d
/// for a path of the line-family homotopy converging to the facial root tau
/// of multiplicity beta.
double theoremTwoBound(const Polynomial& f, const RationalVector& omega, const LineFamily& L,
                       Complex tau, int beta, double t);

/// Monic-agnostic Durand-Kerner roots of a dense univariate polynomial
/// (lowest coefficient first). Multiple roots come back as clusters.
ComplexVector univariateRoots(const ComplexVector& coeffs);

// ---------------------------------------------------------------------------
// Exact convex hull

struct Halfspace {
  LatticePoint normal;  // primitive integer
  long long offset = 0; // <normal, x> <= offset on the polytope
};

struct HullResult {
  std::vector<LatticePoint> vertices;
  /// Facets within the affine span, normals lifted to the ambient space.
  std::vector<Halfspace> facets;
  /// Affine span cut out by <normal, x> = offset equations.
  std::vector<Halfspace> spanEquations;
  int affineDim = 0;

  bool contains(const LatticePoint& x) const;
};

HullResult exactConvexHull(const std::vector<LatticePoint>& points);

/// Number of integer points inside the hull (stretch-scale inputs only).
long long countLatticePoints(const std::vector<LatticePoint>& points);

// ---------------------------------------------------------------------------
// V-representation reconstruction from a numerical oracle

struct OracleReply {
  enum class Tag { Vertex, NonVertex, Failure };
  Tag tag = Tag::Failure;
  LatticePoint vertex;  // homogenized (beta, beta_inf), length n+1
  std::string note;
};

using OracleFn = std::function<OracleReply(const RationalVector& omega)>;

struct ReconstructOptions {
  int maxQueries = 2000;
  int perturbRetries = 5;
  /// Sound mode scales facet normals by a prime large enough that a
  /// perturbed vertex answer certifies the support value exactly. Gentle
  /// mode perturbs by delta/2 instead and double-checks; it is what
  /// witness-backed oracles can absorb numerically.
  bool gentlePerturbation = false;
};

class ReconstructionError : public std::runtime_error {
 public:
  explicit ReconstructionError(const std::string& what) : std::runtime_error(what) {}
};

struct ReconstructionLogEntry {
  RationalVector omega;
  std::string answer;
};

struct ReconstructionResult {
  LatticePolytope homogenizedVertices;  // vertex set in Z^{n+1}
  int degree = 0;
  int queriesUsed = 0;
  std::vector<ReconstructionLogEntry> log;
};

/// Incremental beneath-beyond driven by oracle queries: query outward facet
/// normals, insert strictly-outside vertices, stop when every facet (and
/// every affine-span constraint) is certified by a vertex answer attaining
/// it. degreeHint may be 0 when unknown.
ReconstructionResult reconstructPolytope(const OracleFn& oracle, int n, int degreeHint,
                                         const ReconstructOptions& options = {});

/// Oracle adapter over the exact polytope machinery, for cross-checks.
OracleFn symbolicOracleFn(const Polynomial& f);

}  // namespace newtonscope

#endif
