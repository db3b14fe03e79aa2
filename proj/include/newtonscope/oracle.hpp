#ifndef NEWTONSCOPE_ORACLE_HPP
#define NEWTONSCOPE_ORACLE_HPP

#include "newtonscope/polytope.hpp"
#include "newtonscope/witness.hpp"

namespace newtonscope {

struct OracleSettings {
  double certainty = 3.0;    // decision threshold exponent: 10^c / 10^-c
  double epsilon = 0.05;     // capture radius around each target
  int minTracks = 5;         // step at which convergence monitoring starts
  int maxTracks = 400;
  double stepResolution = 1.2;  // multiplicative t growth per step
  TrackSettings tracking;

  void validate(double targetSeparation = 0.5) const;
};

enum class PathVerdict { Undecided, ToTarget, ToOther, Diverged, Frozen };

struct TraceSample {
  double t;
  Complex s;
  double derivative;  // |delta s| / delta log t
};

struct PathTrace {
  int pathIndex = 0;
  std::vector<TraceSample> samples;
  PathVerdict verdict = PathVerdict::Undecided;
  int targetIndex = -1;   // for ToTarget
  Complex limitValue;     // last s value (the limit for converged paths)
  int decidedAtStep = -1;
  bool failed = false;    // tracking broke down on this path
};

enum class OracleTag { EEP, Counts, Inconclusive };

/// Value of the numerical oracle for the homogenized Newton polytope:
/// either nothing moved (EEP), or path counts (beta to each target,
/// beta_inf to infinity, the rest elsewhere), or no decision.
struct OracleAnswer {
  OracleTag tag = OracleTag::Inconclusive;
  std::vector<int> beta;
  int betaInf = 0;
  int otherCount = 0;
  std::vector<PathTrace> traces;
  std::string reason;  // for Inconclusive
  int stepsUsed = 0;

  bool isVertex() const { return tag == OracleTag::Counts && otherCount == 0; }
  int degree() const;
};

/// How to pick the line family constants.
struct PointChoice {
  enum class Kind { Default, ExplicitAB, ExplicitTargets };
  Kind kind = Kind::Default;
  ComplexVector a, b;     // ExplicitAB
  ComplexVector targets;  // ExplicitTargets

  static PointChoice defaults() { return PointChoice{}; }
  static PointChoice explicitAB(ComplexVector a, ComplexVector b);
  static PointChoice explicitTargets(ComplexVector targets);
};

/// Reusable query state: the witness moved onto the t = 1 line, the line
/// constants, and the start values of the line parameter. omega enters only
/// through the per-query reparametrization, so one context serves all
/// directions.
struct OracleContext {
  WitnessSet witness;  // points on the t = 1 line
  ComplexVector a, b;
  ComplexVector startS;
  int degree = 0;
  uint64_t seed = 0;

  int imageDim() const { return static_cast<int>(a.size()); }
  ComplexVector targets() const;
};

OracleContext buildOracle(const WitnessSet& W, const PointChoice& choice, Rng& rng,
                          const TrackSettings& settings);

OracleAnswer queryOracle(const OracleContext& ctx, const RationalVector& omega,
                         const OracleSettings& settings);

/// Reconstruction adapter: vertex answers pass through as (beta, beta_inf);
/// EEP and positive-dimensional faces are non-vertex replies. Inconclusive
/// queries are retried once with fresh line constants and a larger track
/// budget before giving up. Holds its own context built from the witness.
OracleFn makeNumericOracleFn(const WitnessSet& W, uint64_t seed, const OracleSettings& settings);

/// Trace export: full sample data as JSON, or SVG snapshots of the complex
/// s-plane with the epsilon-circles around each target.
std::string tracesToJson(const OracleAnswer& answer, const ComplexVector& targets, double epsilon);

struct SvgFrameOptions {
  double viewMin = -4.0;
  double viewMax = 4.0;
  int sizePx = 480;
};

std::vector<std::string> renderSvgFrames(const OracleAnswer& answer, const ComplexVector& targets,
                                         double epsilon, const SvgFrameOptions& options = {});

}  // namespace newtonscope

#endif
