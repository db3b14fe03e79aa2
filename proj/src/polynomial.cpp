#include "newtonscope/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace newtonscope {

Polynomial Polynomial::constant(int n, Complex c) {
  Polynomial p(n);
  p.addTerm(ExponentVector(n, 0), c);
  return p;
}

Polynomial Polynomial::variable(int n, int index) {
  if (index < 0 || index >= n) throw std::out_of_range("variable index");
  Polynomial p(n);
  ExponentVector e(n, 0);
  e[index] = 1;
  p.addTerm(e, Complex(1, 0));
  return p;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [alpha, c] : terms_) {
    int total = 0;
    for (int e : alpha) total += e;
    d = std::max(d, total);
  }
  return d;
}

void Polynomial::addTerm(const ExponentVector& alpha, Complex c) {
  if (static_cast<int>(alpha.size()) != n_) throw std::invalid_argument("exponent length mismatch");
  for (int e : alpha)
    if (e < 0) throw std::invalid_argument("negative exponent");
  if (c == Complex(0, 0)) return;
  auto it = terms_.find(alpha);
  if (it == terms_.end()) {
    terms_.emplace(alpha, c);
    return;
  }
  it->second += c;
  if (it->second == Complex(0, 0)) terms_.erase(it);
}

Complex Polynomial::coefficient(const ExponentVector& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Complex(0, 0) : it->second;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  if (n_ != rhs.n_) throw std::invalid_argument("variable count mismatch");
  Polynomial out = *this;
  for (const auto& [alpha, c] : rhs.terms_) out.addTerm(alpha, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
  if (n_ != rhs.n_) throw std::invalid_argument("variable count mismatch");
  Polynomial out = *this;
  for (const auto& [alpha, c] : rhs.terms_) out.addTerm(alpha, -c);
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  if (n_ != rhs.n_) throw std::invalid_argument("variable count mismatch");
  Polynomial out(n_);
  ExponentVector sum(n_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : rhs.terms_) {
      for (int i = 0; i < n_; ++i) sum[i] = a[i] + b[i];
      out.addTerm(sum, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::scaled(Complex c) const {
  Polynomial out(n_);
  if (c == Complex(0, 0)) return out;
  for (const auto& [alpha, coeff] : terms_) out.addTerm(alpha, coeff * c);
  return out;
}

Polynomial Polynomial::pow(int k) const {
  if (k < 0) throw std::invalid_argument("negative power");
  Polynomial acc = Polynomial::constant(n_, Complex(1, 0));
  for (int i = 0; i < k; ++i) acc = acc * (*this);
  return acc;
}

Polynomial Polynomial::derivative(int var) const {
  if (var < 0 || var >= n_) throw std::out_of_range("derivative variable");
  Polynomial out(n_);
  for (const auto& [alpha, c] : terms_) {
    if (alpha[var] == 0) continue;
    ExponentVector e = alpha;
    double k = e[var];
    e[var] -= 1;
    out.addTerm(e, c * k);
  }
  return out;
}

Complex Polynomial::evaluate(const ComplexVector& point) const {
  if (static_cast<int>(point.size()) != n_) throw std::invalid_argument("evaluation point dimension mismatch");
  // Neumaier-compensated sums per component, terms in map order.
  double sumRe = 0, compRe = 0, sumIm = 0, compIm = 0;
  auto accumulate = [](double& sum, double& comp, double x) {
    double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  };
  for (const auto& [alpha, c] : terms_) {
    Complex term = c;
    for (int i = 0; i < n_; ++i) {
      Complex base = point[i];
      int e = alpha[i];
      while (e > 0) {
        if (e & 1) term *= base;
        base *= base;
        e >>= 1;
      }
    }
    accumulate(sumRe, compRe, term.real());
    accumulate(sumIm, compIm, term.imag());
  }
  return {sumRe + compRe, sumIm + compIm};
}

std::vector<ExponentVector> Polynomial::support() const {
  std::vector<ExponentVector> out;
  out.reserve(terms_.size());
  for (const auto& [alpha, c] : terms_) out.push_back(alpha);
  return out;
}

int Polynomial::prune(double eps) {
  int dropped = 0;
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) < eps) {
      it = terms_.erase(it);
      ++dropped;
    } else {
      ++it;
    }
  }
  return dropped;
}

static std::string formatDouble(double x) {
  if (x == 0.0) return "0";  // avoid the unparseable "-0"
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string Polynomial::print(const std::vector<std::string>& names) const {
  if (static_cast<int>(names.size()) != n_) throw std::invalid_argument("name list length mismatch");
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [alpha, c] : terms_) {
    if (!first) out += "+";
    first = false;
    out += "(" + formatDouble(c.real());
    if (c.imag() >= 0 || std::isnan(c.imag())) out += "+";
    out += formatDouble(c.imag()) + "i)";
    for (int i = 0; i < n_; ++i) {
      if (alpha[i] == 0) continue;
      out += "*" + names[i];
      if (alpha[i] > 1) out += "^" + std::to_string(alpha[i]);
    }
  }
  return out;
}

PolySystem::PolySystem(std::vector<std::string> names, std::vector<Polynomial> ps)
    : n(static_cast<int>(names.size())), variableNames(std::move(names)), polys(std::move(ps)) {
  std::set<std::string> seen;
  for (const auto& name : variableNames) {
    if (name.empty()) throw std::invalid_argument("empty variable name");
    if (!seen.insert(name).second) throw std::invalid_argument("duplicate variable name: " + name);
  }
  for (const auto& p : polys)
    if (p.variableCount() != n) throw std::invalid_argument("system polynomial dimension mismatch");
}

ComplexVector PolySystem::evaluate(const ComplexVector& point) const {
  ComplexVector out(polys.size());
  for (size_t i = 0; i < polys.size(); ++i) out[i] = polys[i].evaluate(point);
  return out;
}

std::vector<std::vector<Polynomial>> jacobian(const PolySystem& S) {
  std::vector<std::vector<Polynomial>> J(S.polys.size());
  for (size_t i = 0; i < S.polys.size(); ++i) {
    J[i].reserve(S.n);
    for (int j = 0; j < S.n; ++j) J[i].push_back(S.polys[i].derivative(j));
  }
  return J;
}

LineFamily::LineFamily(RationalVector omega_, ComplexVector a_, ComplexVector b_, double minSeparation)
    : omega(std::move(omega_)), a(std::move(a_)), b(std::move(b_)) {
  const size_t n = a.size();
  if (omega.size() != n || b.size() != n) throw std::invalid_argument("line family length mismatch");
  for (size_t i = 0; i < n; ++i) {
    if (a[i] == Complex(0, 0) || b[i] == Complex(0, 0))
      throw std::invalid_argument("line family requires nonzero a_i and b_i");
  }
  ComplexVector g = targets();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (std::abs(g[i] - g[j]) < minSeparation)
        throw std::invalid_argument("line family targets closer than the required separation");
}

ComplexVector LineFamily::targets() const {
  ComplexVector g(a.size());
  for (size_t i = 0; i < a.size(); ++i) g[i] = b[i] / a[i];
  return g;
}

double LineFamily::tPower(int i, double t) const {
  if (t <= 0) throw std::domain_error("line family requires t > 0");
  return std::exp(omega[i].toDouble() * std::log(t));
}

ComplexVector expandLinearProduct(const ComplexVector& A, const ComplexVector& B,
                                  const ExponentVector& e) {
  ComplexVector poly{Complex(1, 0)};
  for (size_t i = 0; i < e.size(); ++i) {
    for (int k = 0; k < e[i]; ++k) {
      ComplexVector next(poly.size() + 1, Complex(0, 0));
      for (size_t j = 0; j < poly.size(); ++j) {
        next[j] += poly[j] * B[i];
        next[j + 1] += poly[j] * A[i];
      }
      poly.swap(next);
    }
  }
  return poly;
}

Polynomial restrictToAffineLine(const Polynomial& f, const ComplexVector& A, const ComplexVector& B) {
  if (static_cast<int>(A.size()) != f.variableCount() || A.size() != B.size())
    throw std::invalid_argument("affine line dimension mismatch");
  ComplexVector dense(static_cast<size_t>(f.degree()) + 1, Complex(0, 0));
  for (const auto& [alpha, c] : f.terms()) {
    ComplexVector factor = expandLinearProduct(A, B, alpha);
    for (size_t j = 0; j < factor.size(); ++j) dense[j] += c * factor[j];
  }
  Polynomial out(1);
  for (size_t j = 0; j < dense.size(); ++j) out.addTerm({static_cast<int>(j)}, dense[j]);
  return out;
}

Polynomial restrictToLine(const Polynomial& f, const LineFamily& L, double t) {
  if (L.dimension() != f.variableCount()) throw std::invalid_argument("line family dimension mismatch");
  const int n = f.variableCount();
  ComplexVector A(n), B(n);
  for (int i = 0; i < n; ++i) {
    double scale = L.tPower(i, t);
    A[i] = scale * L.a[i];
    B[i] = -scale * L.b[i];
  }
  return restrictToAffineLine(f, A, B);
}

__int128 integerDeterminant(std::vector<std::vector<long long>> M) {
  const size_t n = M.size();
  for (const auto& row : M)
    if (row.size() != n) throw std::invalid_argument("determinant of non-square matrix");
  // Bareiss fraction-free elimination in 128-bit.
  std::vector<std::vector<__int128>> W(n, std::vector<__int128>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) W[i][j] = M[i][j];
  __int128 prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (W[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && W[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(W[k], W[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j)
        W[i][j] = (W[i][j] * W[k][k] - W[i][k] * W[k][j]) / prev;
    prev = W[k][k];
  }
  return sign * W[n - 1][n - 1];
}

Polynomial applyMonomialMap(const Polynomial& f, const std::vector<std::vector<long long>>& A) {
  const int n = f.variableCount();
  if (static_cast<int>(A.size()) != n) throw std::invalid_argument("monomial map must be n x n");
  for (const auto& row : A) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("monomial map must be n x n");
    for (long long v : row)
      if (v < 0) throw std::invalid_argument("monomial map entries must be nonnegative");
  }
  __int128 det = integerDeterminant(A);
  if (det != 1 && det != -1) throw std::invalid_argument("monomial map must be unimodular");

  Polynomial out(n);
  ExponentVector image(n);
  for (const auto& [alpha, c] : f.terms()) {
    for (int j = 0; j < n; ++j) {
      long long acc = 0;
      for (int i = 0; i < n; ++i) acc += A[i][j] * alpha[i];
      image[j] = static_cast<int>(acc);
    }
    out.addTerm(image, c);
  }
  return out;
}

Polynomial homogenize(const Polynomial& f) {
  const int n = f.variableCount();
  const int d = f.degree();
  Polynomial out(n + 1);
  for (const auto& [alpha, c] : f.terms()) {
    ExponentVector e = alpha;
    int total = 0;
    for (int v : alpha) total += v;
    e.push_back(d - total);
    out.addTerm(e, c);
  }
  return out;
}

}  // namespace newtonscope
