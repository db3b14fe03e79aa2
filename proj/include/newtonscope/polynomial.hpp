#ifndef NEWTONSCOPE_POLYNOMIAL_HPP
#define NEWTONSCOPE_POLYNOMIAL_HPP

#include <map>
#include <string>
#include <vector>

#include "newtonscope/linalg.hpp"
#include "newtonscope/rational.hpp"

namespace newtonscope {

/// Exponent vector of one monomial; entry i is the power of variable i.
using ExponentVector = std::vector<int>;

/// Sparse multivariate polynomial over complex doubles. Terms are keyed by
/// exact integer exponent vectors and kept in lexicographic order so that
/// printing, evaluation and iteration are deterministic. A stored
/// coefficient is never zero.
class Polynomial {
 public:
  using TermMap = std::map<ExponentVector, Complex>;

  explicit Polynomial(int variableCount = 0) : n_(variableCount) {}

  static Polynomial constant(int n, Complex c);
  static Polynomial variable(int n, int index);

  int variableCount() const { return n_; }
  int termCount() const { return static_cast<int>(terms_.size()); }
  bool isZero() const { return terms_.empty(); }
  /// max |alpha| over the support; 0 for the zero polynomial.
  int degree() const;
  const TermMap& terms() const { return terms_; }

  /// Adds c * x^alpha, combining with an existing term; exact-zero results
  /// are removed so the support stays honest.
  void addTerm(const ExponentVector& alpha, Complex c);
  Complex coefficient(const ExponentVector& alpha) const;

  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator-(const Polynomial& rhs) const;
  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial scaled(Complex c) const;
  Polynomial pow(int k) const;
  Polynomial derivative(int var) const;

  /// Value at a point, accumulated in term order with Neumaier compensation
  /// so results are reproducible run to run.
  Complex evaluate(const ComplexVector& point) const;

  std::vector<ExponentVector> support() const;

  /// Drops coefficients with |c| < eps; returns how many were dropped.
  int prune(double eps);

  /// Canonical text form that reparses to the same polynomial bit for bit.
  std::string print(const std::vector<std::string>& names) const;

  bool sameTerms(const Polynomial& rhs) const { return n_ == rhs.n_ && terms_ == rhs.terms_; }

 private:
  int n_;
  TermMap terms_;
};

/// Ordered system of polynomials in shared variables.
struct PolySystem {
  int n = 0;
  std::vector<std::string> variableNames;
  std::vector<Polynomial> polys;

  PolySystem() = default;
  PolySystem(std::vector<std::string> names, std::vector<Polynomial> ps);

  int equationCount() const { return static_cast<int>(polys.size()); }
  ComplexVector evaluate(const ComplexVector& point) const;
};

/// Entry (i,j) = d polys_i / d x_j.
std::vector<std::vector<Polynomial>> jacobian(const PolySystem& S);

/// The HS line family ell_{t,i}(s) = t^{omega_i} * (a_i s - b_i). Targets
/// gamma_i = b_i / a_i must be pairwise separated so that convergence to
/// distinct targets is distinguishable.
struct LineFamily {
  RationalVector omega;
  ComplexVector a;
  ComplexVector b;

  LineFamily() = default;
  LineFamily(RationalVector omega_, ComplexVector a_, ComplexVector b_, double minSeparation = 0.5);

  int dimension() const { return static_cast<int>(a.size()); }
  ComplexVector targets() const;
  /// t^{omega_i} as exp(omega_i ln t); t must be positive.
  double tPower(int i, double t) const;
};

enum class ParseErrorKind { Syntax, UnknownVariable, NegativeExponent };

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, size_t position, const std::string& what)
      : std::runtime_error(what), kind_(kind), position_(position) {}
  ParseErrorKind kind() const { return kind_; }
  size_t position() const { return position_; }

 private:
  ParseErrorKind kind_;
  size_t position_;
};

/// Parses the expression grammar (+ - * ^, complex literals, parentheses,
/// 'i' as the imaginary unit) over the given variables into a fully
/// expanded polynomial. Near-zero coefficients left after combining like
/// terms are dropped; *droppedTerms reports how many.
Polynomial parsePolynomial(const std::string& text, const std::vector<std::string>& variableNames,
                           int* droppedTerms = nullptr);

/// Dense coefficients of prod_i (A_i s + B_i)^{e_i}, lowest degree first.
ComplexVector expandLinearProduct(const ComplexVector& A, const ComplexVector& B,
                                  const ExponentVector& e);

/// Substitutes x_i = A_i s + B_i; the result is univariate in s.
Polynomial restrictToAffineLine(const Polynomial& f, const ComplexVector& A, const ComplexVector& B);

/// Substitutes x_i = t^{omega_i} (a_i s - b_i) for fixed t > 0.
Polynomial restrictToLine(const Polynomial& f, const LineFamily& L, double t);

/// Substitutes x_i -> prod_j x_j^{A_{ij}} for a unimodular nonnegative
/// integer matrix; exponents map by alpha -> A^T alpha.
Polynomial applyMonomialMap(const Polynomial& f, const std::vector<std::vector<long long>>& A);

/// Adds a homogenizing variable so every term reaches total degree deg(f).
Polynomial homogenize(const Polynomial& f);

/// |det| of a square integer matrix, exact (Bareiss elimination).
__int128 integerDeterminant(std::vector<std::vector<long long>> M);

}  // namespace newtonscope

#endif
