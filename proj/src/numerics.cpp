#include "newtonscope/numerics.hpp"

#include <stdexcept>

namespace newtonscope {

LinearSlice::LinearSlice(ComplexMatrix coeffs) : coefficients(std::move(coeffs)) {
  if (coefficients.rows() > coefficients.cols() - 1)
    throw std::invalid_argument("slice has more rows than the ambient dimension");
  if (coefficients.rows() > 0 && numericalRank(coefficients) < coefficients.rows())
    throw std::invalid_argument("slice rows are linearly dependent");
}

ComplexVector LinearSlice::residual(const ComplexVector& x) const {
  if (static_cast<int>(x.size()) != n()) throw std::invalid_argument("slice residual dimension mismatch");
  ComplexVector r(k());
  for (int i = 0; i < k(); ++i) {
    Complex acc = coefficients.at(i, n());
    for (int j = 0; j < n(); ++j) acc += coefficients.at(i, j) * x[j];
    r[i] = acc;
  }
  return r;
}

void LinearSlice::parametrize(ComplexVector& base, std::vector<ComplexVector>& directions, Rng& rng) const {
  const int dim = n();
  const int rows = k();
  const int free = dim - rows;

  // Square up with generic rows; the slice cuts an affine subspace, so the
  // extra rows pick one particular point / normalize each direction.
  ComplexMatrix A(dim, dim);
  ComplexVector rhs(dim);
  for (int attempt = 0; attempt < 4; ++attempt) {
    try {
      for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < dim; ++j) A.at(i, j) = coefficients.at(i, j);
        rhs[i] = -coefficients.at(i, dim);
      }
      for (int i = rows; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) A.at(i, j) = rng.genericComplex();
        rhs[i] = rng.genericComplex();
      }
      base = luSolve(A, rhs);

      directions.assign(free, ComplexVector());
      for (int d = 0; d < free; ++d) {
        ComplexVector nullRhs(dim, Complex(0, 0));
        for (int i = rows; i < dim; ++i) {
          for (int j = 0; j < dim; ++j) A.at(i, j) = rng.genericComplex();
          nullRhs[i] = rng.genericComplex();
        }
        for (int i = 0; i < rows; ++i) nullRhs[i] = Complex(0, 0);
        directions[d] = luSolve(A, nullRhs);
      }
      return;
    } catch (const SingularMatrixError&) {
      // fresh random rows and retry
    }
  }
  throw std::runtime_error("failed to parametrize slice");
}

LinearSlice randomSlice(int n, int k, Rng& rng) {
  if (k <= 0 || k > n) throw std::invalid_argument("randomSlice requires 0 < k <= n");
  ComplexMatrix coeffs(k, n + 1);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j <= n; ++j) coeffs.at(i, j) = rng.genericComplex();
  return LinearSlice(std::move(coeffs));
}

Complex randomUnitComplex(Rng& rng) { return rng.unitComplex(); }

Complex randomGamma(Rng& rng) { return rng.gamma(); }

}  // namespace newtonscope
