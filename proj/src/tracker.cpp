#include "newtonscope/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace newtonscope {

// ---------------------------------------------------------------------------
// SystemEvaluator

SystemEvaluator::SystemEvaluator(const PolySystem& S) : vars_(S.n), eqs_(S.equationCount()), system_(S) {
  rows_.reserve(eqs_);
  for (const auto& p : S.polys) rows_.push_back(compile(p));
  auto J = jacobian(S);
  jac_.resize(eqs_);
  for (int i = 0; i < eqs_; ++i) {
    jac_[i].reserve(vars_);
    for (int j = 0; j < vars_; ++j) jac_[i].push_back(compile(J[i][j]));
  }
}

SystemEvaluator::CompiledPoly SystemEvaluator::compile(const Polynomial& p) {
  CompiledPoly cp;
  cp.termStart.push_back(0);
  for (const auto& [alpha, c] : p.terms()) {
    cp.coeffs.push_back(c);
    for (size_t v = 0; v < alpha.size(); ++v)
      if (alpha[v] > 0) cp.factors.emplace_back(static_cast<int>(v), alpha[v]);
    cp.termStart.push_back(static_cast<int>(cp.factors.size()));
  }
  return cp;
}

Complex SystemEvaluator::evalCompiled(const CompiledPoly& cp, const ComplexVector& x) {
  Complex sum(0, 0);
  for (size_t t = 0; t < cp.coeffs.size(); ++t) {
    Complex term = cp.coeffs[t];
    for (int f = cp.termStart[t]; f < cp.termStart[t + 1]; ++f) {
      Complex base = x[cp.factors[f].first];
      int e = cp.factors[f].second;
      while (e > 0) {
        if (e & 1) term *= base;
        base *= base;
        e >>= 1;
      }
    }
    sum += term;
  }
  return sum;
}

void SystemEvaluator::splitPoint(const ComplexVector& x, ComplexVector& mant, std::vector<long>& exp) {
  mant.resize(x.size());
  exp.resize(x.size());
  for (size_t v = 0; v < x.size(); ++v) {
    double mag = std::max(std::fabs(x[v].real()), std::fabs(x[v].imag()));
    if (mag == 0.0) {
      mant[v] = Complex(0, 0);
      exp[v] = 0;
      continue;
    }
    int e;
    std::frexp(mag, &e);
    mant[v] = Complex(std::ldexp(x[v].real(), -e), std::ldexp(x[v].imag(), -e));
    exp[v] = e;
  }
}

SystemEvaluator::Split SystemEvaluator::evalCompiledSplit(const CompiledPoly& cp, const ComplexVector& mant,
                                                          const std::vector<long>& exp) {
  Split acc;
  bool first = true;
  for (size_t t = 0; t < cp.coeffs.size(); ++t) {
    Complex m = cp.coeffs[t];
    long e = 0;
    for (int f = cp.termStart[t]; f < cp.termStart[t + 1]; ++f) {
      const int var = cp.factors[f].first;
      Complex base = mant[var];
      int k = cp.factors[f].second;
      e += static_cast<long>(k) * exp[var];
      while (k > 0) {
        if (k & 1) m *= base;
        base *= base;
        k >>= 1;
      }
    }
    if (m == Complex(0, 0)) continue;
    // renormalize the term mantissa so exponents stay comparable
    double mag = std::max(std::fabs(m.real()), std::fabs(m.imag()));
    int me;
    std::frexp(mag, &me);
    m = Complex(std::ldexp(m.real(), -me), std::ldexp(m.imag(), -me));
    e += me;
    if (first) {
      acc.m = m;
      acc.e = e;
      first = false;
    } else if (e > acc.e) {
      acc.m = m + Complex(std::ldexp(acc.m.real(), static_cast<int>(acc.e - e)),
                          std::ldexp(acc.m.imag(), static_cast<int>(acc.e - e)));
      acc.e = e;
    } else {
      long d = e - acc.e;
      if (d > -2000)
        acc.m += Complex(std::ldexp(m.real(), static_cast<int>(d)), std::ldexp(m.imag(), static_cast<int>(d)));
    }
  }
  if (first) {
    acc.m = Complex(0, 0);
    acc.e = 0;
  }
  return acc;
}

void SystemEvaluator::eval(const ComplexVector& x, ComplexVector& out) const {
  out.resize(eqs_);
  for (int i = 0; i < eqs_; ++i) out[i] = evalCompiled(rows_[i], x);
}

void SystemEvaluator::evalJacobian(const ComplexVector& x, ComplexMatrix& J) const {
  J.resize(eqs_, vars_);
  for (int i = 0; i < eqs_; ++i)
    for (int j = 0; j < vars_; ++j) J.at(i, j) = evalCompiled(jac_[i][j], x);
}

SystemEvaluator::Split SystemEvaluator::splitOf(Complex z) {
  double mag = std::max(std::fabs(z.real()), std::fabs(z.imag()));
  if (mag == 0.0) return {Complex(0, 0), 0};
  int e;
  std::frexp(mag, &e);
  return {Complex(std::ldexp(z.real(), -e), std::ldexp(z.imag(), -e)), e};
}

SystemEvaluator::Split SystemEvaluator::addSplits(Split x, Split y) {
  if (x.m == Complex(0, 0)) return y;
  if (y.m == Complex(0, 0)) return x;
  if (y.e > x.e) std::swap(x, y);
  long d = y.e - x.e;
  if (d > -2000)
    x.m += Complex(std::ldexp(y.m.real(), static_cast<int>(d)), std::ldexp(y.m.imag(), static_cast<int>(d)));
  return x;
}

SystemEvaluator::Split SystemEvaluator::scaleSplit(Split x, Complex c) {
  if (c == Complex(0, 0) || x.m == Complex(0, 0)) return {Complex(0, 0), 0};
  Split factor = splitOf(c);
  x.m *= factor.m;
  x.e += factor.e;
  return x;
}

Complex SystemEvaluator::assembleSplit(const Split& s, long rowExp) {
  long d = s.e - rowExp;
  if (s.m == Complex(0, 0) || d < -2000) return Complex(0, 0);
  return Complex(std::ldexp(s.m.real(), static_cast<int>(d)), std::ldexp(s.m.imag(), static_cast<int>(d)));
}

SystemEvaluator::Split SystemEvaluator::evalSplit(int eq, const ComplexVector& mant,
                                                  const std::vector<long>& exp) const {
  return evalCompiledSplit(rows_[eq], mant, exp);
}

SystemEvaluator::Split SystemEvaluator::evalJacobianSplit(int eq, int var, const ComplexVector& mant,
                                                          const std::vector<long>& exp) const {
  return evalCompiledSplit(jac_[eq][var], mant, exp);
}

// ---------------------------------------------------------------------------
// Concrete homotopies

LinearMixHomotopy::LinearMixHomotopy(const PolySystem& start, const PolySystem& target, Complex gamma)
    : start_(start), target_(target), gamma_(gamma) {
  if (start.n != target.n || start.equationCount() != target.equationCount())
    throw std::invalid_argument("homotopy start and target shapes differ");
  if (start.equationCount() != start.n) throw std::invalid_argument("homotopy system must be square");
}

void LinearMixHomotopy::eval(const ComplexVector& z, double lambda, bool withDLambda,
                             HomotopyEval& out) const {
  const int n = dim();
  using Split = SystemEvaluator::Split;

  ComplexVector mant;
  std::vector<long> exp;
  SystemEvaluator::splitPoint(z, mant, exp);
  // columns shrink only: tiny coordinates keep their full sensitivity
  std::vector<long> colScale(exp.size());
  for (size_t v = 0; v < exp.size(); ++v) colScale[v] = std::max(exp[v], 0L);

  const Complex cg = (1.0 - lambda) * gamma_;
  out.columnScaleLog2 = colScale;
  out.H.resize(n);
  out.J.resize(n, n);
  if (withDLambda) out.dLambda.resize(n);

  // mantissa/exponent evaluation keeps rows meaningful at any point scale;
  // each row is normalized by its dominant term and columns by |z_v|
  std::vector<Split> jrow(n);
  for (int i = 0; i < n; ++i) {
    Split g = start_.evalSplit(i, mant, exp);
    Split f = target_.evalSplit(i, mant, exp);
    Split h = SystemEvaluator::addSplits(SystemEvaluator::scaleSplit(g, cg),
                                         SystemEvaluator::scaleSplit(f, lambda));
    long rowExp = h.e;
    bool any = h.m != Complex(0, 0);
    for (int j = 0; j < n; ++j) {
      Split Jg = start_.evalJacobianSplit(i, j, mant, exp);
      Split Jf = target_.evalJacobianSplit(i, j, mant, exp);
      jrow[j] = SystemEvaluator::addSplits(SystemEvaluator::scaleSplit(Jg, cg),
                                           SystemEvaluator::scaleSplit(Jf, lambda));
      jrow[j].e += colScale[j];
      if (jrow[j].m != Complex(0, 0)) {
        rowExp = any ? std::max(rowExp, jrow[j].e) : jrow[j].e;
        any = true;
      }
    }
    out.H[i] = SystemEvaluator::assembleSplit(h, rowExp);
    for (int j = 0; j < n; ++j) out.J.at(i, j) = SystemEvaluator::assembleSplit(jrow[j], rowExp);
    if (withDLambda) {
      Split d = SystemEvaluator::addSplits(f, SystemEvaluator::scaleSplit(g, -gamma_));
      out.dLambda[i] = SystemEvaluator::assembleSplit(d, rowExp);
    }
  }
}

SliceMoveHomotopy::SliceMoveHomotopy(const PolySystem& equations, const LinearSlice& from,
                                     const LinearSlice& to, std::vector<int> keptIndices, Complex gamma)
    : equations_(equations), from_(from.coefficients), to_(to.coefficients), kept_(std::move(keptIndices)), gamma_(gamma) {
  if (from.k() != to.k() || from.n() != to.n()) throw std::invalid_argument("slice shapes differ");
  if (static_cast<int>(kept_.size()) != from.n())
    throw std::invalid_argument("slice dimension does not match kept coordinates");
  if (equations_.eqs() + from.k() != equations_.vars())
    throw std::invalid_argument("slice-move system is not square");
}

int SliceMoveHomotopy::dim() const { return equations_.vars(); }

void SliceMoveHomotopy::eval(const ComplexVector& z, double lambda, bool withDLambda,
                             HomotopyEval& out) const {
  const int n = dim();
  const int m = equations_.eqs();
  const int k = from_.rows();
  const int img = from_.cols() - 1;
  using Split = SystemEvaluator::Split;

  ComplexVector mant;
  std::vector<long> exp;
  SystemEvaluator::splitPoint(z, mant, exp);
  std::vector<long> colScale(exp.size());
  for (size_t v = 0; v < exp.size(); ++v) colScale[v] = std::max(exp[v], 0L);

  out.columnScaleLog2 = colScale;
  out.H.resize(n);
  out.J.resize(n, n);
  out.J.setZero();
  if (withDLambda) out.dLambda.assign(n, Complex(0, 0));

  std::vector<Split> jrow(n);
  for (int i = 0; i < m; ++i) {
    Split h = equations_.evalSplit(i, mant, exp);
    long rowExp = h.e;
    bool any = h.m != Complex(0, 0);
    for (int j = 0; j < n; ++j) {
      jrow[j] = equations_.evalJacobianSplit(i, j, mant, exp);
      jrow[j].e += colScale[j];
      if (jrow[j].m != Complex(0, 0)) {
        rowExp = any ? std::max(rowExp, jrow[j].e) : jrow[j].e;
        any = true;
      }
    }
    out.H[i] = SystemEvaluator::assembleSplit(h, rowExp);
    for (int j = 0; j < n; ++j) out.J.at(i, j) = SystemEvaluator::assembleSplit(jrow[j], rowExp);
  }

  const Complex cFrom = (1.0 - lambda) * gamma_;
  for (int r = 0; r < k; ++r) {
    Split value = SystemEvaluator::splitOf(cFrom * from_.at(r, img) + lambda * to_.at(r, img));
    Split dval = SystemEvaluator::splitOf(to_.at(r, img) - gamma_ * from_.at(r, img));
    std::vector<Split> coeffs(img);
    for (int c = 0; c < img; ++c) {
      const Complex coeff = cFrom * from_.at(r, c) + lambda * to_.at(r, c);
      coeffs[c] = SystemEvaluator::splitOf(coeff);
      coeffs[c].e += colScale[kept_[c]];
      Split part = SystemEvaluator::scaleSplit(SystemEvaluator::splitOf(z[kept_[c]]), coeff);
      value = SystemEvaluator::addSplits(value, part);
      Split dpart = SystemEvaluator::scaleSplit(SystemEvaluator::splitOf(z[kept_[c]]),
                                                to_.at(r, c) - gamma_ * from_.at(r, c));
      dval = SystemEvaluator::addSplits(dval, dpart);
    }
    const long rowExp = value.e;
    out.H[m + r] = SystemEvaluator::assembleSplit(value, rowExp);
    for (int c = 0; c < img; ++c) out.J.at(m + r, kept_[c]) = SystemEvaluator::assembleSplit(coeffs[c], rowExp);
    if (withDLambda) out.dLambda[m + r] = SystemEvaluator::assembleSplit(dval, rowExp);
  }
}

// ---------------------------------------------------------------------------
// Tracking

ComplexVector predictorStep(const Homotopy& H, const ComplexVector& z, double lambda, double h) {
  if (h == 0.0) return z;
  const int n = H.dim();
  HomotopyEval e;
  auto velocity = [&](const ComplexVector& point, double at) -> ComplexVector {
    H.eval(point, at, true, e);
    ComplexVector rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = -e.dLambda[i];
    ComplexVector v = solveEquilibrated(e.J, rhs);
    for (size_t c = 0; c < e.columnScaleLog2.size(); ++c)
      v[c] = Complex(std::ldexp(v[c].real(), static_cast<int>(e.columnScaleLog2[c])),
                     std::ldexp(v[c].imag(), static_cast<int>(e.columnScaleLog2[c])));
    return v;
  };

  ComplexVector k1 = velocity(z, lambda);
  ComplexVector p(n);
  for (int i = 0; i < n; ++i) p[i] = z[i] + 0.5 * h * k1[i];
  ComplexVector k2 = velocity(p, lambda + 0.5 * h);
  for (int i = 0; i < n; ++i) p[i] = z[i] + 0.5 * h * k2[i];
  ComplexVector k3 = velocity(p, lambda + 0.5 * h);
  for (int i = 0; i < n; ++i) p[i] = z[i] + h * k3[i];
  ComplexVector k4 = velocity(p, lambda + h);

  ComplexVector out(n);
  for (int i = 0; i < n; ++i) out[i] = z[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

namespace {

struct CorrectionResult {
  bool ok = false;
  ComplexVector point;
  double residual = 0.0;
};

CorrectionResult correctAt(const Homotopy& H, ComplexVector z, double lambda, double tol, int maxIters,
                           double trustRadius = -1.0) {
  CorrectionResult r;
  HomotopyEval e;
  double residual = 0.0;
  for (int it = 0; it <= maxIters; ++it) {
    try {
      H.eval(z, lambda, false, e);
    } catch (const std::exception&) {
      return r;
    }
    if (!allFinite(e.H)) return r;
    residual = infNorm(e.H);
    if (residual <= tol) {
      r.ok = true;
      r.point = std::move(z);
      r.residual = residual;
      return r;
    }
    if (it == maxIters) break;
    ComplexVector rhs(e.H.size());
    for (size_t i = 0; i < rhs.size(); ++i) rhs[i] = -e.H[i];
    ComplexVector delta;
    try {
      delta = solveEquilibrated(e.J, rhs);
    } catch (const SingularMatrixError&) {
      return r;
    }
    for (size_t c = 0; c < e.columnScaleLog2.size(); ++c)
      delta[c] = Complex(std::ldexp(delta[c].real(), static_cast<int>(e.columnScaleLog2[c])),
                         std::ldexp(delta[c].imag(), static_cast<int>(e.columnScaleLog2[c])));
    // a first correction far beyond the predictor's own move means the
    // corrector is walking to a different path: reject the step
    if (it == 0 && trustRadius >= 0.0 &&
        infNorm(delta) > 4.0 * trustRadius + 1e-4 * (1.0 + infNorm(z))) {
      if (std::getenv("NEWTONSCOPE_TRACE"))
        std::fprintf(stderr, "[trace] trust reject: |delta|=%.3g trust=%.3g resid=%.3g norm=%.3g\n",
                     infNorm(delta), trustRadius, residual, infNorm(z));
      return r;
    }
    for (size_t i = 0; i < z.size(); ++i) z[i] += delta[i];
    if (!allFinite(z)) return r;
    // far from the origin the absolute residual cannot reach tol in double
    // precision; a vanishing correction is the scale-aware convergence signal
    if (it >= 1 && infNorm(delta) <= tol * (1.0 + infNorm(z))) {
      try {
        H.eval(z, lambda, false, e);
      } catch (const std::exception&) {
        return r;
      }
      if (!allFinite(e.H)) return r;
      r.ok = true;
      r.residual = infNorm(e.H);
      r.point = std::move(z);
      return r;
    }
  }
  r.point = std::move(z);
  r.residual = residual;
  return r;
}

}  // namespace

std::pair<ComplexVector, double> newtonCorrect(const SystemEvaluator& S, ComplexVector point,
                                               double tol, int maxIters) {
  if (S.eqs() != S.vars()) throw std::invalid_argument("newtonCorrect expects a square system");
  ComplexVector H;
  ComplexMatrix J;
  double residual = 0.0;
  for (int it = 0; it <= maxIters; ++it) {
    S.eval(point, H);
    residual = infNorm(H);
    if (residual <= tol || it == maxIters) break;
    S.evalJacobian(point, J);
    ComplexVector rhs(H.size());
    for (size_t i = 0; i < H.size(); ++i) rhs[i] = -H[i];
    ComplexVector delta = solveSquare(J, rhs);
    for (size_t i = 0; i < point.size(); ++i) point[i] += delta[i];
  }
  return {std::move(point), residual};
}

bool probablyAtInfinity(const PathResult& r) {
  if (r.status == PathStatus::Diverged) return true;
  return r.status == PathStatus::Failed && r.lambdaReached >= 0.999 && infNorm(r.endpoint) >= 1e3;
}

PathResult trackSegment(const Homotopy& H, const ComplexVector& start, const TrackSettings& settings) {
  PathResult result;
  result.endpoint = start;

  ComplexVector z = start;
  double lambda = 0.0;
  double h = settings.initialStep;
  int steps = 0;
  int consecutive = 0;

  // Stationary start: if the path does not move at all (identity homotopies,
  // EEP directions), a single full-length step settles it.
  {
    HomotopyEval e;
    try {
      H.eval(z, 0.0, true, e);
      double scale = std::max(1.0, e.J.infNorm() * std::max(1.0, infNorm(z)));
      if (allFinite(e.dLambda) && infNorm(e.dLambda) <= 1e-13 * scale) {
        CorrectionResult probe = correctAt(H, z, 1.0, settings.newtonTol, settings.maxNewtonIters);
        if (probe.ok) {
          double moved = 0.0;
          for (size_t i = 0; i < z.size(); ++i) moved = std::max(moved, std::abs(probe.point[i] - z[i]));
          if (moved <= 10.0 * settings.newtonTol * (1.0 + infNorm(z))) {
            result.status = PathStatus::Success;
            result.endpoint = std::move(probe.point);
            result.steps = 1;
            result.finalResidual = probe.residual;
            result.lambdaReached = 1.0;
            return result;
          }
        }
      }
    } catch (const std::exception&) {
      // fall through to regular stepping
    }
  }

  while (1.0 - lambda > 1e-14) {
    result.lambdaReached = lambda;
    if (steps >= settings.maxSteps) {
      if (std::getenv("NEWTONSCOPE_TRACE"))
        std::fprintf(stderr, "[trace] maxSteps: lambda=%.12g h=%.3g norm=%.3g\n", lambda, h, infNorm(z));
      result.status = PathStatus::Failed;
      result.endpoint = z;
      result.steps = steps;
      return result;
    }
    double step = std::min(h, 1.0 - lambda);

    ComplexVector predicted;
    bool predictorOk = true;
    try {
      predicted = predictorStep(H, z, lambda, step);
      if (!allFinite(predicted)) predictorOk = false;
    } catch (const std::exception& ex) {
      if (std::getenv("NEWTONSCOPE_TRACE"))
        std::fprintf(stderr, "[trace] predictor threw: %s (lambda=%.6g h=%.3g)\n", ex.what(), lambda, step);
      predictorOk = false;
    }

    CorrectionResult corrected;
    if (predictorOk) {
      double moved = 0.0;
      for (size_t i = 0; i < z.size(); ++i) moved = std::max(moved, std::abs(predicted[i] - z[i]));
      corrected = correctAt(H, std::move(predicted), lambda + step, settings.newtonTol,
                            settings.maxNewtonIters, moved);
    }

    if (predictorOk && corrected.ok) {
      z = std::move(corrected.point);
      lambda += step;
      ++steps;
      ++consecutive;
      result.finalResidual = corrected.residual;
      if (infNorm(z) > settings.divergenceThreshold) {
        result.status = PathStatus::Diverged;
        result.endpoint = z;
        result.steps = steps;
        return result;
      }
      if (consecutive >= 3) {
        h = std::min(h * settings.stepExpansion, 0.5);
        consecutive = 0;
      }
    } else {
      consecutive = 0;
      h *= settings.stepContraction;
      if (h < settings.minStep) {
        if (std::getenv("NEWTONSCOPE_TRACE"))
          std::fprintf(stderr, "[trace] collapse: lambda=%.12g h=%.3g norm=%.3g pOk=%d resid=%.3g\n",
                       lambda, h, infNorm(z), predictorOk ? 1 : 0, corrected.residual);
        result.status = PathStatus::Failed;
        result.endpoint = z;
        result.steps = steps;
        return result;
      }
    }
  }

  result.lambdaReached = 1.0;
  // polish so finite endpoints meet the absolute residual contract, not
  // just the row-scaled one
  {
    CorrectionResult polish = correctAt(H, z, 1.0, settings.newtonTol * 1e-4, settings.maxNewtonIters);
    if (polish.ok) {
      z = std::move(polish.point);
      result.finalResidual = polish.residual;
    }
  }
  // Success keeps the absolute endpoint contract; a path parked at lambda=1
  // with a large residual is a failure (or a blow-up past the threshold).
  if (result.finalResidual > settings.newtonTol) {
    if (std::getenv("NEWTONSCOPE_TRACE"))
      std::fprintf(stderr, "[trace] endpoint guard: norm=%.3g resid=%.3g steps=%d\n", infNorm(z),
                   result.finalResidual, steps);
    result.status = infNorm(z) > settings.divergenceThreshold ? PathStatus::Diverged : PathStatus::Failed;
    result.endpoint = z;
    result.steps = steps;
    return result;
  }
  result.status = PathStatus::Success;
  result.endpoint = z;
  result.steps = steps;
  return result;
}

std::vector<PathResult> trackBatch(const Homotopy& H, const std::vector<ComplexVector>& starts,
                                   const TrackSettings& settings) {
  std::vector<PathResult> results(starts.size());
  const int count = static_cast<int>(starts.size());
  if (settings.parallelPaths) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) results[i] = trackSegment(H, starts[i], settings);
  } else {
    for (int i = 0; i < count; ++i) results[i] = trackSegment(H, starts[i], settings);
  }
  return results;
}

std::vector<PathResult> solveTotalDegree(const PolySystem& S, const TrackSettings& settings, Rng& rng) {
  const int n = S.n;
  if (S.equationCount() != n) throw std::invalid_argument("solveTotalDegree expects a square system");
  std::vector<int> degrees(n);
  long long paths = 1;
  for (int i = 0; i < n; ++i) {
    degrees[i] = S.polys[i].degree();
    if (degrees[i] < 1) throw std::invalid_argument("solveTotalDegree requires all degrees >= 1");
    paths *= degrees[i];
  }

  // Bezout start system x_i^{d_i} - r_i with random constants.
  std::vector<Complex> anchors(n);
  std::vector<Polynomial> startPolys;
  startPolys.reserve(n);
  for (int i = 0; i < n; ++i) {
    anchors[i] = rng.genericComplex();
    Polynomial p(n);
    ExponentVector e(n, 0);
    e[i] = degrees[i];
    p.addTerm(e, Complex(1, 0));
    p.addTerm(ExponentVector(n, 0), -anchors[i]);
    startPolys.push_back(std::move(p));
  }
  PolySystem start(S.variableNames, std::move(startPolys));
  const Complex gamma = rng.gamma();

  std::vector<ComplexVector> startPoints;
  startPoints.reserve(static_cast<size_t>(paths));
  std::vector<std::vector<Complex>> roots(n);
  for (int i = 0; i < n; ++i) {
    Complex principal = std::pow(anchors[i], 1.0 / degrees[i]);
    for (int k = 0; k < degrees[i]; ++k) {
      double theta = 2.0 * M_PI * k / degrees[i];
      roots[i].push_back(principal * Complex(std::cos(theta), std::sin(theta)));
    }
  }
  std::vector<int> idx(n, 0);
  for (;;) {
    ComplexVector p(n);
    for (int i = 0; i < n; ++i) p[i] = roots[i][idx[i]];
    startPoints.push_back(std::move(p));
    int c = n - 1;
    while (c >= 0 && ++idx[c] == degrees[c]) idx[c--] = 0;
    if (c < 0) break;
  }

  LinearMixHomotopy H(start, S, gamma);
  return trackBatch(H, startPoints, settings);
}

std::vector<std::pair<ComplexVector, int>> clusterEndpoints(const std::vector<PathResult>& results,
                                                            double tol) {
  std::vector<std::pair<ComplexVector, int>> clusters;
  for (const auto& r : results) {
    if (r.status != PathStatus::Success) continue;
    bool merged = false;
    for (auto& [point, count] : clusters) {
      double dist = 0.0;
      for (size_t i = 0; i < point.size(); ++i) dist = std::max(dist, std::abs(point[i] - r.endpoint[i]));
      if (dist <= tol) {
        ++count;
        merged = true;
        break;
      }
    }
    if (!merged) clusters.emplace_back(r.endpoint, 1);
  }
  return clusters;
}

}  // namespace newtonscope
