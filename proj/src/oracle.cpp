#include "newtonscope/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace newtonscope {

void OracleSettings::validate(double targetSeparation) const {
  if (certainty <= 0) throw std::invalid_argument("certainty must be positive");
  if (epsilon <= 0 || epsilon >= 0.5 * targetSeparation)
    throw std::invalid_argument("epsilon must sit below half the target separation");
  if (minTracks < 1 || maxTracks <= minTracks)
    throw std::invalid_argument("need maxTracks > minTracks >= 1");
  if (stepResolution <= 1.0) throw std::invalid_argument("stepResolution must exceed 1");
  if (static_cast<double>(maxTracks) * std::log(stepResolution) > 690.0)
    throw std::invalid_argument("maxTracks * log(stepResolution) overflows the t range");
}

int OracleAnswer::degree() const {
  int d = betaInf + otherCount;
  for (int b : beta) d += b;
  return d;
}

PointChoice PointChoice::explicitAB(ComplexVector a, ComplexVector b) {
  PointChoice c;
  c.kind = Kind::ExplicitAB;
  c.a = std::move(a);
  c.b = std::move(b);
  return c;
}

PointChoice PointChoice::explicitTargets(ComplexVector targets) {
  PointChoice c;
  c.kind = Kind::ExplicitTargets;
  c.targets = std::move(targets);
  return c;
}

ComplexVector OracleContext::targets() const {
  ComplexVector g(a.size());
  for (size_t i = 0; i < a.size(); ++i) g[i] = b[i] / a[i];
  return g;
}

namespace {

/// The t = 1 member of the line family as a slice: the image point
/// (a_1 s - b_1, ..., a_n s - b_n) satisfies a_r (y_0 + b_0) = a_0 (y_r + b_r).
LinearSlice lineSliceAtT1(const ComplexVector& a, const ComplexVector& b) {
  const int n = static_cast<int>(a.size());
  ComplexMatrix rows(std::max(n - 1, 0), n + 1);
  for (int r = 0; r + 1 < n; ++r) {
    rows.at(r, 0) = a[r + 1];
    rows.at(r, r + 1) = -a[0];
    rows.at(r, n) = a[r + 1] * b[0] - a[0] * b[r + 1];
  }
  return LinearSlice(std::move(rows));
}

Complex lineParameterOf(const ComplexVector& y, const ComplexVector& a, const ComplexVector& b) {
  // least squares over the coordinates: y_i = a_i s - b_i
  Complex num(0, 0);
  double den = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    num += std::conj(a[i]) * (y[i] + b[i]);
    den += std::norm(a[i]);
  }
  return num / den;
}

}  // namespace

OracleContext buildOracle(const WitnessSet& W, const PointChoice& choice, Rng& rng,
                          const TrackSettings& settings) {
  const int n = W.imageDim();
  std::string lastError = "no attempt made";
  for (int attempt = 0; attempt < 3; ++attempt) {
    ComplexVector a(n), b(n);
    switch (choice.kind) {
      case PointChoice::Kind::Default:
        for (int i = 0; i < n; ++i) {
          double theta = 2.0 * M_PI * i / n;
          Complex gamma(std::cos(theta), std::sin(theta));
          a[i] = rng.unitComplex();
          b[i] = gamma * a[i];
        }
        break;
      case PointChoice::Kind::ExplicitAB:
        if (static_cast<int>(choice.a.size()) != n || static_cast<int>(choice.b.size()) != n)
          throw std::invalid_argument("explicit a/b have the wrong length");
        a = choice.a;
        b = choice.b;
        break;
      case PointChoice::Kind::ExplicitTargets:
        if (static_cast<int>(choice.targets.size()) != n)
          throw std::invalid_argument("explicit targets have the wrong length");
        // a_i = 1 keeps b_i / a_i bit-exactly equal to the requested target
        for (int i = 0; i < n; ++i) {
          a[i] = Complex(1, 0);
          b[i] = choice.targets[i];
        }
        break;
    }
    // target separation check (and nonzero a, b)
    LineFamily(RationalVector(n, Rational(0)), a, b);

    try {
      WitnessSet moved = moveSlice(W, lineSliceAtT1(a, b), settings, rng);
      OracleContext ctx;
      ctx.witness = std::move(moved);
      ctx.a = std::move(a);
      ctx.b = std::move(b);
      ctx.degree = ctx.witness.degree;
      ctx.seed = W.seed;
      ctx.startS.reserve(ctx.witness.points.size());
      for (const auto& p : ctx.witness.points)
        ctx.startS.push_back(lineParameterOf(ctx.witness.projectPoint(p), ctx.a, ctx.b));
      return ctx;
    } catch (const WitnessError& err) {
      lastError = err.what();
    }
  }
  throw WitnessError(std::string("buildOracle: start points undercounted after retries (") + lastError + ")");
}

// ---------------------------------------------------------------------------
// Per-interval homotopies for the t-stepping

namespace {

using Split = SystemEvaluator::Split;

Split splitOf(Complex z) { return SystemEvaluator::splitOf(z); }
Split addSplit(Split x, Split y) { return SystemEvaluator::addSplits(std::move(x), std::move(y)); }
Complex assemble(const Split& s, long rowExp) { return SystemEvaluator::assembleSplit(s, rowExp); }

/// t^w as a mantissa/exponent pair, valid far beyond the double range.
Split powSplit(double logT, double w) {
  double e2 = w * logT / M_LN2;
  double fl = std::floor(e2);
  Split s;
  s.m = Complex(std::exp2(e2 - fl), 0.0);
  s.e = static_cast<long>(fl);
  return s;
}

/// Restriction of an explicit hypersurface to the line family, normalized by
/// t^{-h(omega)} so every coefficient stays bounded as t grows: the equation
/// sum_alpha c_alpha t^{<w,a>-h} prod(a_i s - b_i)^{alpha_i} = 0 in s alone.
class UnivariateOracleHomotopy : public Homotopy {
 public:
  struct Term {
    ComplexVector coeffs;  // line-factor expansion, c_alpha folded in
    double drop;           // h(omega) - <omega, alpha> >= 0
  };

  UnivariateOracleHomotopy(const std::vector<Term>* terms, double t0, double t1)
      : terms_(terms), logT0_(std::log(t0)), logT1_(std::log(t1)) {}

  int dim() const override { return 1; }

  void eval(const ComplexVector& z, double lambda, bool withDLambda, HomotopyEval& out) const override {
    const double logt = (1.0 - lambda) * logT0_ + lambda * logT1_;
    const double dlog = logT1_ - logT0_;
    const Complex s = z[0];

    // assemble the dense coefficients at this t, then normalize the row by
    // the dominant term so residuals are relative at any |s|
    size_t deg = 0;
    for (const auto& term : *terms_) deg = std::max(deg, term.coeffs.size());
    ComplexVector c(deg, Complex(0, 0)), dc(deg, Complex(0, 0));
    for (const auto& term : *terms_) {
      const double w = std::exp(-term.drop * logt);
      if (w == 0.0) continue;
      for (size_t k = 0; k < term.coeffs.size(); ++k) {
        c[k] += w * term.coeffs[k];
        if (withDLambda) dc[k] += (-term.drop * dlog * w) * term.coeffs[k];
      }
    }

    double scale = 0.0, power = 1.0;
    const double sAbs = std::abs(s);
    for (size_t k = 0; k < deg; ++k) {
      scale = std::max(scale, std::abs(c[k]) * power);
      power *= sAbs;
    }
    if (scale <= 0.0) scale = 1.0;

    Complex H(0, 0), J(0, 0), D(0, 0);
    for (size_t k = deg; k-- > 0;) {
      J = J * s + H;
      H = H * s + c[k];
      if (withDLambda) D = D * s + dc[k];
    }
    out.H.assign(1, H / scale);
    out.J.resize(1, 1);
    out.J.at(0, 0) = J / scale;
    if (withDLambda) out.dLambda.assign(1, D / scale);
    out.columnScaleLog2.clear();
  }

 private:
  const std::vector<Term>* terms_;
  double logT0_, logT1_;
};

/// Graph-space homotopy for implicit hypersurfaces: unknowns (x, s) with the
/// witness system fixed and the kept coordinates pinned to the moving line
/// x_kept_r = t^{omega_r} (a_r s - b_r). Rows are rescaled by their dominant
/// magnitude so the enormous dynamic range along t never overflows.
class LineOracleHomotopy : public Homotopy {
 public:
  LineOracleHomotopy(const SystemEvaluator* equations, const std::vector<int>* kept,
                     const ComplexVector* a, const ComplexVector* b, const std::vector<double>* omega,
                     double t0, double t1)
      : equations_(equations), kept_(kept), a_(a), b_(b), omega_(omega),
        logT0_(std::log(t0)), logT1_(std::log(t1)) {}

  int dim() const override { return equations_->vars() + 1; }

  void eval(const ComplexVector& z, double lambda, bool withDLambda, HomotopyEval& out) const override {
    const int N = equations_->vars();
    const int m = equations_->eqs();
    const int n = static_cast<int>(kept_->size());
    const double logt = (1.0 - lambda) * logT0_ + lambda * logT1_;
    const double dlog = logT1_ - logT0_;
    const Complex s = z[N];

    out.H.assign(N + 1, Complex(0, 0));
    out.J.resize(N + 1, N + 1);
    out.J.setZero();
    if (withDLambda) out.dLambda.assign(N + 1, Complex(0, 0));

    ComplexVector mant;
    std::vector<long> exp;
    SystemEvaluator::splitPoint(z, mant, exp);
    ComplexVector xmant(mant.begin(), mant.begin() + N);
    std::vector<long> xexp(exp.begin(), exp.begin() + N);

    // Rows are rescaled by the equation's dominant term magnitude so the
    // corrector sees relative residuals; columns shrink by each large
    // coordinate's magnitude so the Jacobian stays balanced at any scale.
    std::vector<long> colScale(exp.size());
    for (size_t v = 0; v < exp.size(); ++v) colScale[v] = std::max(exp[v], 0L);
    out.columnScaleLog2 = colScale;

    std::vector<Split> jrow(N);
    for (int i = 0; i < m; ++i) {
      Split h = equations_->evalSplit(i, xmant, xexp);
      long rowExp = h.e;
      bool any = h.m != Complex(0, 0);
      for (int j = 0; j < N; ++j) {
        jrow[j] = equations_->evalJacobianSplit(i, j, xmant, xexp);
        jrow[j].e += colScale[j];  // column equilibration
        if (jrow[j].m != Complex(0, 0)) {
          rowExp = any ? std::max(rowExp, jrow[j].e) : jrow[j].e;
          any = true;
        }
      }
      out.H[i] = assemble(h, rowExp);
      for (int j = 0; j < N; ++j) out.J.at(i, j) = assemble(jrow[j], rowExp);
      // equations carry no lambda dependence
    }

    for (int r = 0; r < n; ++r) {
      const int i = m + r;
      const Split T = powSplit(logt, (*omega_)[r]);
      const Complex line = (*a_)[r] * s - (*b_)[r];

      Split xs = splitOf(z[(*kept_)[r]]);
      Split tLine = splitOf(T.m * line);
      tLine.e += T.e;
      Split value = addSplit(xs, {-tLine.m, tLine.e});
      Split dS = splitOf(-T.m * (*a_)[r]);
      dS.e += T.e + colScale[N];
      Split dX{Complex(1, 0), colScale[(*kept_)[r]]};
      Split dLam = splitOf(-(*omega_)[r] * dlog * T.m * line);
      dLam.e += T.e;

      // scale by the term magnitudes before cancellation, never by the
      // (possibly fully cancelled) row value
      Split tas = splitOf(T.m * (*a_)[r] * s);
      tas.e += T.e;
      Split tb = splitOf(T.m * (*b_)[r]);
      tb.e += T.e;
      long rowExp = 0;
      bool any = false;
      for (const Split* part : {&xs, &tas, &tb}) {
        if (part->m == Complex(0, 0)) continue;
        rowExp = any ? std::max(rowExp, part->e) : part->e;
        any = true;
      }

      out.H[i] = assemble(value, rowExp);
      out.J.at(i, (*kept_)[r]) = assemble(dX, rowExp);
      out.J.at(i, N) = assemble(dS, rowExp);
      if (withDLambda) out.dLambda[i] = assemble(dLam, rowExp);
    }
  }

 private:
  const SystemEvaluator* equations_;
  const std::vector<int>* kept_;
  const ComplexVector* a_;
  const ComplexVector* b_;
  const std::vector<double>* omega_;
  double logT0_, logT1_;
};

struct PathState {
  ComplexVector z;
  Complex s0{0, 0};
  Complex prevS{0, 0};
  double prevDeriv = 0.0;
  double maxDisplacement = 0.0;
  int convStreak = 0;
  int divStreak = 0;
  int mergeSuspect = -1;
};

}  // namespace

OracleAnswer queryOracle(const OracleContext& ctx, const RationalVector& omega,
                         const OracleSettings& settings) {
  settings.validate();
  const int n = ctx.imageDim();
  if (static_cast<int>(omega.size()) != n) throw std::invalid_argument("omega has the wrong length");
  const int d = ctx.degree;
  const ComplexVector targets = ctx.targets();
  const double logStep = std::log(settings.stepResolution);
  const double convThreshold = std::pow(10.0, -settings.certainty);
  const double divThreshold = std::pow(10.0, settings.certainty);

  const bool explicitPath = ctx.witness.isExplicitHypersurface();

  // Explicit hypersurfaces restrict to a normalized univariate family; the
  // general case tracks the graph system in (x, s).
  std::vector<UnivariateOracleHomotopy::Term> uniTerms;
  SystemEvaluator graphEval;
  std::vector<double> omegaDouble(n);
  for (int i = 0; i < n; ++i) omegaDouble[i] = omega[i].toDouble();
  if (explicitPath) {
    const Polynomial& f = ctx.witness.system.polys[0];
    ComplexVector negB(n);
    for (int i = 0; i < n; ++i) negB[i] = -ctx.b[i];
    Rational h(0);
    bool first = true;
    std::vector<Rational> weights;
    for (const auto& [alpha, c] : f.terms()) {
      Rational w = dot(omega, alpha);
      weights.push_back(w);
      if (first || h < w) h = w;
      first = false;
    }
    size_t k = 0;
    for (const auto& [alpha, c] : f.terms()) {
      UnivariateOracleHomotopy::Term term;
      term.coeffs = expandLinearProduct(ctx.a, negB, alpha);
      for (auto& coeff : term.coeffs) coeff *= c;
      term.drop = (h - weights[k++]).toDouble();
      uniTerms.push_back(std::move(term));
    }
  } else {
    graphEval = SystemEvaluator(ctx.witness.system);
  }

  OracleAnswer answer;
  answer.traces.resize(d);
  std::vector<PathState> states(d);
  for (int p = 0; p < d; ++p) {
    if (explicitPath) {
      states[p].z = {ctx.startS[p]};
    } else {
      states[p].z = ctx.witness.points[p];
      states[p].z.push_back(ctx.startS[p]);
    }
    states[p].s0 = states[p].prevS = ctx.startS[p];
    answer.traces[p].pathIndex = p;
    answer.traces[p].samples.push_back({1.0, ctx.startS[p], 0.0});
  }

  TrackSettings segment = settings.tracking;
  segment.divergenceThreshold = explicitPath ? 1e12 : 1e250;
  // Near a multiplicity-m cluster the residual is flat within radius
  // (tol * scale)^{1/m}; the corrector must run much tighter than epsilon
  // so frozen positions classify correctly against the capture balls.
  segment.newtonTol = std::min(segment.newtonTol, 1e-12);

  auto undecidedIndices = [&]() {
    std::vector<int> idx;
    for (int p = 0; p < d; ++p)
      if (answer.traces[p].verdict == PathVerdict::Undecided) idx.push_back(p);
    return idx;
  };

  double t = 1.0;
  int step = 0;
  std::string failure;
  while (step < settings.maxTracks) {
    ++step;
    const double t0 = t;
    const double t1 = t * settings.stepResolution;
    t = t1;

    auto active = undecidedIndices();
    if (active.empty()) break;

    std::vector<ComplexVector> starts;
    starts.reserve(active.size());
    for (int p : active) starts.push_back(states[p].z);

    std::vector<PathResult> results;
    if (explicitPath) {
      UnivariateOracleHomotopy H(&uniTerms, t0, t1);
      results = trackBatch(H, starts, segment);
    } else {
      LineOracleHomotopy H(&graphEval, &ctx.witness.projection, &ctx.a, &ctx.b, &omegaDouble, t0, t1);
      results = trackBatch(H, starts, segment);
    }

    for (size_t k = 0; k < active.size(); ++k) {
      const int p = active[k];
      PathTrace& trace = answer.traces[p];
      PathState& st = states[p];
      const PathResult& r = results[k];

      if (r.status == PathStatus::Failed) {
        // salvage: a path far outside the target disc, growing geometrically
        // with derivative on the scale of |s| itself, was running to
        // infinity when the tracker broke down
        double targetScale = 1.0;
        for (const auto& g : targets) targetScale = std::max(targetScale, std::abs(g));
        const auto& samples = trace.samples;
        if (samples.size() >= 2) {
          const auto& last = samples.back();
          const auto& prev = samples[samples.size() - 2];
          if (std::abs(last.s) > 200.0 * targetScale && std::abs(last.s) > std::abs(prev.s) &&
              last.derivative > 0.3 * std::abs(prev.s) && prev.derivative > 0.2 * std::abs(prev.s)) {
            trace.verdict = PathVerdict::Diverged;
            trace.decidedAtStep = step;
            trace.limitValue = st.prevS;
            continue;
          }
        }
        trace.failed = true;
        failure = "path " + std::to_string(p) + " tracking failure at step " + std::to_string(step);
        continue;
      }

      Complex sNew = r.endpoint.back();
      double deriv = std::abs(sNew - st.prevS) / logStep;
      trace.samples.push_back({t1, sNew, deriv});
      st.maxDisplacement = std::max(st.maxDisplacement, std::abs(sNew - st.s0));

      if (r.status == PathStatus::Diverged) {
        // blew past the segment tracker's range inside one interval; with
        // |s| already beyond the divergence bar this is a decided path
        if (std::abs(sNew) > 1e6) {
          trace.verdict = PathVerdict::Diverged;
          trace.decidedAtStep = step;
          trace.limitValue = sNew;
        } else {
          trace.failed = true;
          failure = "path " + std::to_string(p) + " left the tracking range at step " + std::to_string(step);
        }
        st.prevS = sNew;
        st.z = r.endpoint;
        continue;
      }

      st.z = r.endpoint;

      if (step >= settings.minTracks) {
        // the decaying-pair requirement rejects transient derivative dips
        // (a genuine power-law tail shrinks monotonically step to step)
        const bool decaying = st.convStreak == 0 || deriv <= st.prevDeriv;
        st.convStreak = (deriv < convThreshold && decaying) ? st.convStreak + 1 : 0;
        st.divStreak = (std::abs(sNew) > 1e6 && deriv > divThreshold) ? st.divStreak + 1 : 0;
        if (st.divStreak >= 2) {
          trace.verdict = PathVerdict::Diverged;
          trace.decidedAtStep = step;
          trace.limitValue = sNew;
        } else if (st.convStreak >= 2) {
          trace.decidedAtStep = step;
          trace.limitValue = sNew;
          trace.verdict = PathVerdict::ToOther;
          for (int g = 0; g < n; ++g) {
            if (std::abs(sNew - targets[g]) <= settings.epsilon) {
              trace.verdict = PathVerdict::ToTarget;
              trace.targetIndex = g;
              break;
            }
          }
        }
      }
      st.prevS = sNew;
      st.prevDeriv = deriv;
    }

    // Distinct roots can pass close transiently, but machine-identical
    // values over consecutive steps mean two paths merged onto one root.
    // A pair merged while running to infinity shares its fate either way
    // (the counts are a multiset), so only finite-region merges are fatal.
    for (size_t i = 0; i < active.size() && failure.empty(); ++i) {
      for (size_t j = i + 1; j < active.size(); ++j) {
        PathState& a1 = states[active[i]];
        PathState& a2 = states[active[j]];
        const bool nowMerged = std::abs(a1.prevS - a2.prevS) <= 1e-13 * (1.0 + std::abs(a1.prevS));
        if (nowMerged && a1.mergeSuspect == active[j] && std::abs(a1.prevS) <= 100.0) {
          failure = "paths " + std::to_string(active[i]) + " and " + std::to_string(active[j]) +
                    " collided at step " + std::to_string(step);
          answer.traces[active[i]].failed = true;
          answer.traces[active[j]].failed = true;
          break;
        }
        if (nowMerged) a1.mergeSuspect = active[j];
        else if (a1.mergeSuspect == active[j]) a1.mergeSuspect = -1;
      }
    }

    if (!failure.empty()) {
      answer.tag = OracleTag::Inconclusive;
      answer.reason = failure;
      answer.stepsUsed = step;
      return answer;
    }

    if (step == settings.minTracks) {
      bool frozen = true;
      for (const auto& st : states)
        if (st.maxDisplacement >= 1e-8) {
          frozen = false;
          break;
        }
      if (frozen) {
        answer.tag = OracleTag::EEP;
        answer.stepsUsed = step;
        for (auto& trace : answer.traces) {
          trace.verdict = PathVerdict::Frozen;
          trace.decidedAtStep = step;
        }
        return answer;
      }
    }
  }

  if (!undecidedIndices().empty()) {
    answer.tag = OracleTag::Inconclusive;
    answer.reason = "Reached MaxTracks";
    answer.stepsUsed = settings.maxTracks;
    return answer;
  }

  answer.tag = OracleTag::Counts;
  answer.beta.assign(n, 0);
  answer.stepsUsed = 0;
  for (const auto& trace : answer.traces) {
    answer.stepsUsed = std::max(answer.stepsUsed, trace.decidedAtStep);
    switch (trace.verdict) {
      case PathVerdict::ToTarget:
        ++answer.beta[trace.targetIndex];
        break;
      case PathVerdict::Diverged:
        ++answer.betaInf;
        break;
      case PathVerdict::ToOther:
        ++answer.otherCount;
        break;
      default:
        throw std::logic_error("undecided path in a Counts answer");
    }
  }
  if (answer.degree() != d) throw std::logic_error("oracle path counts do not conserve the degree");
  return answer;
}

OracleFn makeNumericOracleFn(const WitnessSet& W, uint64_t seed, const OracleSettings& settings) {
  struct State {
    WitnessSet witness;
    OracleSettings settings;
    Rng rng;
    OracleContext ctx;
    State(const WitnessSet& w, uint64_t seed, const OracleSettings& s)
        : witness(w), settings(s), rng(seed, 17), ctx(buildOracle(w, PointChoice::defaults(), rng, s.tracking)) {}
  };
  auto state = std::make_shared<State>(W, seed, settings);

  return [state](const RationalVector& omega) -> OracleReply {
    auto decisiveQuery = [&]() -> OracleAnswer {
      OracleAnswer ans = queryOracle(state->ctx, omega, state->settings);
      for (int retry = 0; retry < 2 && ans.tag == OracleTag::Inconclusive; ++retry) {
        // fresh line constants and a larger budget
        OracleSettings boosted = state->settings;
        boosted.maxTracks = std::min(state->settings.maxTracks * 4, 3000);
        OracleContext fresh = buildOracle(state->witness, PointChoice::defaults(), state->rng, boosted.tracking);
        ans = queryOracle(fresh, omega, boosted);
      }
      return ans;
    };

    OracleReply reply;
    OracleAnswer ans = decisiveQuery();
    if (ans.tag == OracleTag::Counts && ans.isVertex()) {
      // a vertex answer steers the hull, so it must be confirmed by an
      // independent choice of line constants; disagreements go to a vote
      auto sameCounts = [](const OracleAnswer& x, const OracleAnswer& y) {
        return x.tag == OracleTag::Counts && y.tag == OracleTag::Counts && x.beta == y.beta &&
               x.betaInf == y.betaInf && x.otherCount == y.otherCount;
      };
      auto freshQuery = [&]() {
        OracleContext fresh =
            buildOracle(state->witness, PointChoice::defaults(), state->rng, state->settings.tracking);
        return queryOracle(fresh, omega, state->settings);
      };
      OracleAnswer confirm = freshQuery();
      if (!sameCounts(ans, confirm)) {
        OracleAnswer third = freshQuery();
        if (sameCounts(ans, third)) {
          // keep ans
        } else if (sameCounts(confirm, third)) {
          ans = confirm;
        } else {
          ans.tag = OracleTag::Inconclusive;
          ans.reason = "vertex confirmation disagreed across line choices";
        }
      }
    }
    switch (ans.tag) {
      case OracleTag::Counts:
        if (ans.isVertex()) {
          reply.tag = OracleReply::Tag::Vertex;
          reply.vertex.assign(ans.beta.begin(), ans.beta.end());
          reply.vertex.push_back(ans.betaInf);
        } else {
          reply.tag = OracleReply::Tag::NonVertex;
        }
        break;
      case OracleTag::EEP:
        reply.tag = OracleReply::Tag::NonVertex;
        break;
      case OracleTag::Inconclusive:
        reply.tag = OracleReply::Tag::Failure;
        reply.note = ans.reason;
        break;
    }
    return reply;
  };
}

}  // namespace newtonscope
