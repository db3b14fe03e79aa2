#ifndef NEWTONSCOPE_WITNESS_HPP
#define NEWTONSCOPE_WITNESS_HPP

#include <cstdint>
#include <string>

#include "newtonscope/tracker.hpp"

namespace newtonscope {

class WitnessError : public std::runtime_error {
 public:
  explicit WitnessError(const std::string& what) : std::runtime_error(what) {}
};

class DimensionError : public std::runtime_error {
 public:
  explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical representation of a hypersurface Y in the kept coordinates:
/// the defining system of the upstairs variety (with any slicing hyperplanes
/// already appended), the coordinate projection, a generic line in the image
/// space, and one preimage per intersection point of Y with that line.
struct WitnessSet {
  PolySystem system;
  std::vector<int> projection;  // kept coordinate indices, identity if trivial
  LinearSlice slice;            // (n-1) x (n+1) rows in the image space C^n
  std::vector<ComplexVector> points;
  int degree = 0;
  uint64_t seed = 0;

  int ambientDim() const { return system.n; }
  int imageDim() const { return static_cast<int>(projection.size()); }
  bool identityProjection() const;
  /// Explicit hypersurface: one equation, identity projection.
  bool isExplicitHypersurface() const;

  ComplexVector projectPoint(const ComplexVector& x) const;
  std::vector<std::string> imageVariableNames() const;

  /// Checks the witness invariants: points satisfy the system, projected
  /// points sit on the slice, projections are pairwise separated.
  void validate(double tol = 1e-8, double separation = 1e-6) const;
};

/// A generic smooth point of V(I) together with the dimension read off the
/// Jacobian rank there.
struct VarietySample {
  ComplexVector point;
  int dimension = 0;
};

/// Cuts V(I) to points with generic hyperplanes and returns a sample with
/// full Jacobian rank. Requires I to be a numerical complete intersection.
VarietySample sampleVariety(const PolySystem& I, Rng& rng, const TrackSettings& settings);

/// All smooth samples from one generic cut (one per component met), capped.
std::vector<VarietySample> sampleVarietyPoints(const PolySystem& I, Rng& rng,
                                               const TrackSettings& settings, int maxSamples = 8);

/// Affine slice rows as polynomials over the ambient variables (through the
/// kept coordinates).
std::vector<Polynomial> slicePullback(const LinearSlice& S, const std::vector<int>& kept, int ambientDim);

/// The square system {system, pullback of slice}.
PolySystem augmentedSystem(const PolySystem& base, const LinearSlice& S, const std::vector<int>& kept);

/// Witness set for an explicitly given hypersurface V(f).
WitnessSet witnessForHypersurface(const Polynomial& f, const std::vector<std::string>& variableNames,
                                  Rng& rng, const TrackSettings& settings);

/// Witness set for the closure of the coordinate projection of V(I) that
/// forgets dropCoords. Slices away positive-dimensional fibers
/// automatically; the returned system contains the added hyperplanes.
WitnessSet witnessForProjection(const PolySystem& I, const std::vector<int>& dropCoords, Rng& rng,
                                const TrackSettings& settings);

/// Moves the witness points onto a new generic slice by a segment homotopy.
WitnessSet moveSlice(const WitnessSet& W, const LinearSlice& newSlice, const TrackSettings& settings,
                     Rng& rng);

std::string witnessToJson(const WitnessSet& W);
WitnessSet witnessFromJson(const std::string& text);

}  // namespace newtonscope

#endif
