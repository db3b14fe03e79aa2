#ifndef NEWTONSCOPE_NUMERICS_HPP
#define NEWTONSCOPE_NUMERICS_HPP

#include "newtonscope/linalg.hpp"
#include "newtonscope/rng.hpp"

namespace newtonscope {

/// k generic affine hyperplanes in C^n: rows are (c_1..c_n | c_0) and cut
/// out { x : sum c_j x_j + c_0 = 0 }.
struct LinearSlice {
  ComplexMatrix coefficients;  // k x (n+1)

  LinearSlice() = default;
  explicit LinearSlice(ComplexMatrix coeffs);

  int k() const { return coefficients.rows(); }
  int n() const { return coefficients.cols() - 1; }

  /// Residuals of the k affine equations at a point in C^n.
  ComplexVector residual(const ComplexVector& x) const;

  /// Any point on the slice plus a basis of its direction space
  /// (n - k columns); both obtained from generic square solves.
  void parametrize(ComplexVector& base, std::vector<ComplexVector>& directions, Rng& rng) const;
};

LinearSlice randomSlice(int n, int k, Rng& rng);
Complex randomUnitComplex(Rng& rng);
Complex randomGamma(Rng& rng);

}  // namespace newtonscope

#endif
