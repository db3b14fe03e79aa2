#ifndef NEWTONSCOPE_LINALG_HPP
#define NEWTONSCOPE_LINALG_HPP

#include <complex>
#include <stdexcept>
#include <vector>

namespace newtonscope {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

/// Dense row-major complex matrix. Sizes in this toolkit are small (the
/// biggest square solves are ~40x40 graph systems), so everything is plain
/// O(n^3) with no blocking.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Complex& at(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const Complex& at(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }
  Complex* rowPtr(int i) { return data_.data() + static_cast<size_t>(i) * cols_; }
  const Complex* rowPtr(int i) const { return data_.data() + static_cast<size_t>(i) * cols_; }

  void resize(int rows, int cols) {
    rows_ = rows;
    cols_ = cols;
    data_.assign(static_cast<size_t>(rows) * cols, Complex(0, 0));
  }
  void setZero() { std::fill(data_.begin(), data_.end(), Complex(0, 0)); }

  double infNorm() const;
  bool allFinite() const;

  ComplexVector multiply(const ComplexVector& x) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Complex> data_;
};

double infNorm(const ComplexVector& v);
bool allFinite(const ComplexVector& v);

/// Partial-pivoting LU solve of a square system. Throws SingularMatrixError
/// when a pivot falls below 1e-13 * ||A||_inf; tracking code treats that as
/// a path failure point.
ComplexVector luSolve(ComplexMatrix A, ComplexVector rhs);

/// Householder QR solve of a square system; fallback for borderline pivots.
ComplexVector qrSolve(ComplexMatrix A, ComplexVector rhs);

/// LU first, QR on pivot failure.
ComplexVector solveSquare(const ComplexMatrix& A, const ComplexVector& rhs);

/// Column-equilibrated solve: each column is normalized by its largest
/// entry before factoring, so uniformly tiny columns (vanishing
/// sensitivities) do not poison the pivoting.
ComplexVector solveEquilibrated(const ComplexMatrix& A, const ComplexVector& rhs);

/// Singular values by one-sided Jacobi, descending. Exact enough for rank
/// decisions on the small Jacobians we meet.
std::vector<double> singularValues(const ComplexMatrix& A);

/// Count of singular values above relTol * sigma_max.
int numericalRank(const ComplexMatrix& A, double relTol = 1e-8);

/// Condition estimate sigma_max / sigma_min (infinity when rank-deficient).
double conditionEstimate(const ComplexMatrix& A);

}  // namespace newtonscope

#endif
