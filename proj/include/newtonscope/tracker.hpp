#ifndef NEWTONSCOPE_TRACKER_HPP
#define NEWTONSCOPE_TRACKER_HPP

#include <utility>

#include "newtonscope/numerics.hpp"
#include "newtonscope/polynomial.hpp"

namespace newtonscope {

struct TrackSettings {
  double initialStep = 0.05;
  double minStep = 1e-7;
  int maxNewtonIters = 5;
  double newtonTol = 1e-9;
  double stepExpansion = 1.5;
  double stepContraction = 0.5;
  int maxSteps = 20000;
  double divergenceThreshold = 1e6;
  /// Batch operations run paths with OpenMP when true; results are ordered
  /// by start index either way.
  bool parallelPaths = true;
};

enum class PathStatus { Success, Diverged, Failed };

struct PathResult {
  PathStatus status = PathStatus::Failed;
  ComplexVector endpoint;
  int steps = 0;
  double finalResidual = 0.0;
  double lambdaReached = 0.0;
};

/// Paths to solutions at infinity either cross the divergence threshold or
/// stall out with a collapsed step, far from the origin, next to lambda = 1.
/// There are no endgames here, so this truncation test is how batch solvers
/// separate "at infinity" from genuinely lost paths.
bool probablyAtInfinity(const PathResult& r);

/// A polynomial system compiled to flat term arrays, with its Jacobian, for
/// fast repeated evaluation. The split entry points return mantissa/exponent
/// pairs so that systems evaluated at points of huge magnitude (the oracle's
/// t -> infinity lines) neither overflow nor lose the dominant balance.
class SystemEvaluator {
 public:
  struct Split {
    Complex m{0, 0};
    long e = 0;  // value = m * 2^e
  };

  SystemEvaluator() = default;
  explicit SystemEvaluator(const PolySystem& S);

  int vars() const { return vars_; }
  int eqs() const { return eqs_; }
  const PolySystem& system() const { return system_; }

  void eval(const ComplexVector& x, ComplexVector& out) const;
  void evalJacobian(const ComplexVector& x, ComplexMatrix& J) const;

  Split evalSplit(int eq, const ComplexVector& mant, const std::vector<long>& exp) const;
  Split evalJacobianSplit(int eq, int var, const ComplexVector& mant, const std::vector<long>& exp) const;

  /// Splits every coordinate as x_v = mant_v * 2^{exp_v}, |mant_v| in [1,2)
  /// (or exactly 0).
  static void splitPoint(const ComplexVector& x, ComplexVector& mant, std::vector<long>& exp);

  // mantissa/exponent arithmetic shared by the scale-aware homotopies
  static Split splitOf(Complex z);
  static Split addSplits(Split x, Split y);
  static Split scaleSplit(Split x, Complex c);
  static Complex assembleSplit(const Split& s, long rowExp);

 private:
  struct CompiledPoly {
    std::vector<Complex> coeffs;
    std::vector<int> termStart;           // size terms+1, indexes factors
    std::vector<std::pair<int, int>> factors;  // (variable, exponent)
  };
  static CompiledPoly compile(const Polynomial& p);
  static Complex evalCompiled(const CompiledPoly& cp, const ComplexVector& x);
  static Split evalCompiledSplit(const CompiledPoly& cp, const ComplexVector& mant, const std::vector<long>& exp);

  int vars_ = 0;
  int eqs_ = 0;
  PolySystem system_;
  std::vector<CompiledPoly> rows_;
  std::vector<std::vector<CompiledPoly>> jac_;
};

struct HomotopyEval {
  ComplexVector H;
  ComplexMatrix J;
  ComplexVector dLambda;
  /// Optional column equilibration: J is reported with respect to the
  /// rescaled unknowns u_v = z_v / 2^{columnScaleLog2[v]}. Solvers multiply
  /// the solved update back by the scale. Empty means unscaled.
  std::vector<long> columnScaleLog2;
};

/// Square parametrized system H(z, lambda) with lambda tracked from 0 to 1.
/// Implementations may scale rows by arbitrary positive factors as long as
/// H, J and dLambda share the scaling row by row.
class Homotopy {
 public:
  virtual ~Homotopy() = default;
  virtual int dim() const = 0;
  virtual void eval(const ComplexVector& z, double lambda, bool withDLambda, HomotopyEval& out) const = 0;
};

/// gamma-trick segment homotopy (1-lambda) gamma G + lambda F.
class LinearMixHomotopy : public Homotopy {
 public:
  LinearMixHomotopy(const PolySystem& start, const PolySystem& target, Complex gamma);
  int dim() const override { return start_.vars(); }
  void eval(const ComplexVector& z, double lambda, bool withDLambda, HomotopyEval& out) const override;

 private:
  SystemEvaluator start_, target_;
  Complex gamma_;
};

/// Fixed equations plus slice rows interpolated from one slice to another.
/// Slice rows live in the coordinates keptIndices picks out of the ambient
/// space; the old rows carry a random phase so the segment stays generic.
class SliceMoveHomotopy : public Homotopy {
 public:
  SliceMoveHomotopy(const PolySystem& equations, const LinearSlice& from, const LinearSlice& to,
                    std::vector<int> keptIndices, Complex gamma);
  int dim() const override;
  void eval(const ComplexVector& z, double lambda, bool withDLambda, HomotopyEval& out) const override;

 private:
  SystemEvaluator equations_;
  ComplexMatrix from_, to_;
  std::vector<int> kept_;
  Complex gamma_;
};

/// RK4 predictor on the Davidenko ODE J dz = -dH/dlambda.
ComplexVector predictorStep(const Homotopy& H, const ComplexVector& z, double lambda, double h);

/// Plain Newton iteration on a square system; returns the last iterate and
/// its residual (max norm).
std::pair<ComplexVector, double> newtonCorrect(const SystemEvaluator& S, ComplexVector point,
                                               double tol, int maxIters);

PathResult trackSegment(const Homotopy& H, const ComplexVector& start, const TrackSettings& settings);

std::vector<PathResult> trackBatch(const Homotopy& H, const std::vector<ComplexVector>& starts,
                                   const TrackSettings& settings);

/// Tracks all Bezout-many paths of a total-degree start system to the
/// target. Per-path outcomes are reported individually.
std::vector<PathResult> solveTotalDegree(const PolySystem& S, const TrackSettings& settings, Rng& rng);

/// Success endpoints grouped at the given distance; the int is the cluster
/// size (> 1 flags a multiplicity cluster).
std::vector<std::pair<ComplexVector, int>> clusterEndpoints(const std::vector<PathResult>& results,
                                                            double tol = 1e-6);

}  // namespace newtonscope

#endif
