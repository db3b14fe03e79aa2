#include "newtonscope/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace newtonscope {

double ComplexMatrix::infNorm() const {
  double best = 0.0;
  for (int i = 0; i < rows_; ++i) {
    double rowSum = 0.0;
    for (int j = 0; j < cols_; ++j) rowSum += std::abs(at(i, j));
    best = std::max(best, rowSum);
  }
  return best;
}

bool ComplexMatrix::allFinite() const {
  for (const auto& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

ComplexVector ComplexMatrix::multiply(const ComplexVector& x) const {
  if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("matrix-vector size mismatch");
  ComplexVector y(rows_, Complex(0, 0));
  for (int i = 0; i < rows_; ++i) {
    Complex acc(0, 0);
    const Complex* row = rowPtr(i);
    for (int j = 0; j < cols_; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
  return y;
}

double infNorm(const ComplexVector& v) {
  double best = 0.0;
  for (const auto& z : v) best = std::max(best, std::abs(z));
  return best;
}

bool allFinite(const ComplexVector& v) {
  for (const auto& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

ComplexVector luSolve(ComplexMatrix A, ComplexVector rhs) {
  const int n = A.rows();
  if (A.cols() != n || static_cast<int>(rhs.size()) != n)
    throw std::invalid_argument("luSolve expects a square system");
  if (!A.allFinite() || !allFinite(rhs))
    throw SingularMatrixError("non-finite entries entering LU solve");

  const double pivotFloor = 1e-13 * std::max(A.infNorm(), std::numeric_limits<double>::min());

  for (int k = 0; k < n; ++k) {
    int pivot = k;
    double best = std::abs(A.at(k, k));
    for (int i = k + 1; i < n; ++i) {
      double m = std::abs(A.at(i, k));
      if (m > best) {
        best = m;
        pivot = i;
      }
    }
    if (best < pivotFloor) throw SingularMatrixError("singular matrix: pivot below threshold");
    if (pivot != k) {
      for (int j = 0; j < n; ++j) std::swap(A.at(k, j), A.at(pivot, j));
      std::swap(rhs[k], rhs[pivot]);
    }
    const Complex inv = 1.0 / A.at(k, k);
    for (int i = k + 1; i < n; ++i) {
      const Complex f = A.at(i, k) * inv;
      if (f == Complex(0, 0)) continue;
      A.at(i, k) = f;
      for (int j = k + 1; j < n; ++j) A.at(i, j) -= f * A.at(k, j);
      rhs[i] -= f * rhs[k];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    Complex acc = rhs[i];
    for (int j = i + 1; j < n; ++j) acc -= A.at(i, j) * rhs[j];
    rhs[i] = acc / A.at(i, i);
  }
  if (!allFinite(rhs)) throw SingularMatrixError("non-finite LU solution");
  return rhs;
}

ComplexVector qrSolve(ComplexMatrix A, ComplexVector rhs) {
  const int n = A.rows();
  if (A.cols() != n || static_cast<int>(rhs.size()) != n)
    throw std::invalid_argument("qrSolve expects a square system");

  // Householder triangularization, reflectors applied to rhs on the fly.
  for (int k = 0; k < n; ++k) {
    double norm = 0.0;
    for (int i = k; i < n; ++i) norm += std::norm(A.at(i, k));
    norm = std::sqrt(norm);
    if (norm == 0.0) throw SingularMatrixError("qr: zero column");

    Complex akk = A.at(k, k);
    double akkAbs = std::abs(akk);
    Complex phase = akkAbs > 0 ? akk / akkAbs : Complex(1, 0);
    Complex alpha = -phase * norm;

    ComplexVector v(n - k);
    v[0] = akk - alpha;
    for (int i = k + 1; i < n; ++i) v[i - k] = A.at(i, k);
    double vnorm2 = 0.0;
    for (const auto& z : v) vnorm2 += std::norm(z);
    if (vnorm2 == 0.0) continue;

    for (int j = k; j < n; ++j) {
      Complex dotv(0, 0);
      for (int i = k; i < n; ++i) dotv += std::conj(v[i - k]) * A.at(i, j);
      Complex f = 2.0 * dotv / vnorm2;
      for (int i = k; i < n; ++i) A.at(i, j) -= f * v[i - k];
    }
    Complex dotr(0, 0);
    for (int i = k; i < n; ++i) dotr += std::conj(v[i - k]) * rhs[i];
    Complex f = 2.0 * dotr / vnorm2;
    for (int i = k; i < n; ++i) rhs[i] -= f * v[i - k];
  }

  const double diagFloor = 1e-13 * std::max(A.infNorm(), std::numeric_limits<double>::min());
  for (int i = n - 1; i >= 0; --i) {
    if (std::abs(A.at(i, i)) < diagFloor) throw SingularMatrixError("qr: rank-deficient system");
    Complex acc = rhs[i];
    for (int j = i + 1; j < n; ++j) acc -= A.at(i, j) * rhs[j];
    rhs[i] = acc / A.at(i, i);
  }
  if (!allFinite(rhs)) throw SingularMatrixError("non-finite QR solution");
  return rhs;
}

ComplexVector solveSquare(const ComplexMatrix& A, const ComplexVector& rhs) {
  try {
    return luSolve(A, rhs);
  } catch (const SingularMatrixError&) {
    return qrSolve(A, rhs);
  }
}

ComplexVector solveEquilibrated(const ComplexMatrix& A, const ComplexVector& rhs) {
  const int n = A.rows();
  ComplexMatrix W = A;
  std::vector<int> shift(n, 0);
  for (int j = 0; j < n; ++j) {
    double mx = 0.0;
    for (int i = 0; i < n; ++i) mx = std::max(mx, std::abs(W.at(i, j)));
    if (mx == 0.0 || !std::isfinite(mx)) continue;
    int e;
    std::frexp(mx, &e);
    shift[j] = e;
    for (int i = 0; i < n; ++i)
      W.at(i, j) = Complex(std::ldexp(W.at(i, j).real(), -e), std::ldexp(W.at(i, j).imag(), -e));
  }
  ComplexVector x = solveSquare(W, rhs);
  for (int j = 0; j < n; ++j)
    x[j] = Complex(std::ldexp(x[j].real(), -shift[j]), std::ldexp(x[j].imag(), -shift[j]));
  return x;
}

std::vector<double> singularValues(const ComplexMatrix& A) {
  // One-sided Jacobi on the tall orientation: orthogonalize column pairs
  // until all inner products are negligible; singular values are the final
  // column norms.
  int m = A.rows(), n = A.cols();
  ComplexMatrix W;
  if (m >= n) {
    W = A;
  } else {
    W.resize(n, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) W.at(j, i) = std::conj(A.at(i, j));
    std::swap(m, n);
  }

  const double eps = 1e-14;
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool converged = true;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0;
        Complex apq(0, 0);
        for (int i = 0; i < m; ++i) {
          app += std::norm(W.at(i, p));
          aqq += std::norm(W.at(i, q));
          apq += std::conj(W.at(i, p)) * W.at(i, q);
        }
        double off = std::abs(apq);
        if (off <= eps * std::sqrt(app * aqq) || off == 0.0) continue;
        converged = false;

        Complex phase = apq / off;
        double tau = (aqq - app) / (2.0 * off);
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
        double cs = 1.0 / std::sqrt(1.0 + t * t);
        double sn = t * cs;
        for (int i = 0; i < m; ++i) {
          Complex u = W.at(i, p), v = W.at(i, q);
          W.at(i, p) = cs * u - sn * std::conj(phase) * v;
          W.at(i, q) = sn * phase * u + cs * v;
        }
      }
    }
    if (converged) break;
  }

  std::vector<double> sv(n);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += std::norm(W.at(i, j));
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<double>());
  return sv;
}

int numericalRank(const ComplexMatrix& A, double relTol) {
  auto sv = singularValues(A);
  if (sv.empty() || sv[0] == 0.0) return 0;
  int r = 0;
  for (double s : sv)
    if (s > relTol * sv[0]) ++r;
  return r;
}

double conditionEstimate(const ComplexMatrix& A) {
  auto sv = singularValues(A);
  if (sv.empty() || sv.back() == 0.0) return std::numeric_limits<double>::infinity();
  return sv.front() / sv.back();
}

}  // namespace newtonscope
