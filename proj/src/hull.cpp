#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "newtonscope/polytope.hpp"
#include "newtonscope/rng.hpp"

namespace newtonscope {

namespace {

using Int = __int128;

Int dotInt(const LatticePoint& a, const LatticePoint& b) {
  Int acc = 0;
  for (size_t i = 0; i < a.size(); ++i) acc += static_cast<Int>(a[i]) * b[i];
  return acc;
}

long long toLongChecked(Int v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("exact hull arithmetic overflow");
  return static_cast<long long>(v);
}

void makePrimitive(std::vector<Int>& v) {
  Int g = 0;
  for (Int x : v) {
    Int a = x < 0 ? -x : x;
    while (a != 0) {
      Int t = g % a;
      g = a;
      a = t;
    }
  }
  if (g > 1)
    for (Int& x : v) x /= g;
}

LatticePoint toLattice(const std::vector<Int>& v) {
  LatticePoint out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = toLongChecked(v[i]);
  return out;
}

/// Reduced row echelon form over the rationals; returns the rank and fills
/// the pivot column list.
int rrefRational(std::vector<std::vector<Rational>>& M, std::vector<int>& pivotCols) {
  pivotCols.clear();
  if (M.empty()) return 0;
  const size_t cols = M[0].size();
  size_t row = 0;
  for (size_t col = 0; col < cols && row < M.size(); ++col) {
    size_t pivot = row;
    while (pivot < M.size() && M[pivot][col].isZero()) ++pivot;
    if (pivot == M.size()) continue;
    std::swap(M[row], M[pivot]);
    Rational inv = Rational(1) / M[row][col];
    for (size_t j = col; j < cols; ++j) M[row][j] = M[row][j] * inv;
    for (size_t i = 0; i < M.size(); ++i) {
      if (i == row || M[i][col].isZero()) continue;
      Rational f = M[i][col];
      for (size_t j = col; j < cols; ++j) M[i][j] = M[i][j] - f * M[row][j];
    }
    pivotCols.push_back(static_cast<int>(col));
    ++row;
  }
  return static_cast<int>(row);
}

struct SpanInfo {
  int dim = 0;
  std::vector<int> pivots;          // coordinates that parametrize the span
  std::vector<Halfspace> equations; // <normal, x> = offset on the span
};

SpanInfo affineSpan(const std::vector<LatticePoint>& pts) {
  SpanInfo info;
  const size_t n = pts[0].size();
  std::vector<std::vector<Rational>> D;
  for (size_t i = 1; i < pts.size(); ++i) {
    std::vector<Rational> row(n);
    for (size_t j = 0; j < n; ++j) row[j] = Rational(pts[i][j] - pts[0][j]);
    D.push_back(std::move(row));
  }
  std::vector<int> pivots;
  int rank = 0;
  if (!D.empty()) rank = rrefRational(D, pivots);
  info.dim = rank;
  info.pivots = pivots;

  std::vector<bool> isPivot(n, false);
  for (int p : pivots) isPivot[p] = true;
  for (size_t f = 0; f < n; ++f) {
    if (isPivot[f]) continue;
    // kernel vector of the direction space: u_f = 1, u_pivot = -coefficient
    std::vector<Rational> u(n, Rational(0));
    u[f] = Rational(1);
    for (int k = 0; k < rank; ++k) u[pivots[k]] = -D[k][f];
    long long lcm = 1;
    for (const auto& q : u) lcm = std::lcm(lcm, q.den);
    std::vector<Int> normal(n);
    for (size_t j = 0; j < n; ++j) normal[j] = static_cast<Int>(u[j].num) * (lcm / u[j].den);
    makePrimitive(normal);
    // canonical sign: first nonzero entry positive
    for (Int x : normal) {
      if (x == 0) continue;
      if (x < 0)
        for (Int& y : normal) y = -y;
      break;
    }
    Halfspace eq;
    eq.normal = toLattice(normal);
    eq.offset = toLongChecked(dotInt(eq.normal, pts[0]));
    info.equations.push_back(std::move(eq));
  }
  return info;
}

// ---------------------------------------------------------------------------
// Full-dimensional incremental hull on projected coordinates

struct Facet {
  std::vector<int> vertexIdx;  // r points spanning the facet simplex
  LatticePoint normal;
  long long offset = 0;
};

LatticePoint facetNormal(const std::vector<LatticePoint>& pts, const std::vector<int>& idx) {
  const int r = static_cast<int>(pts[0].size());
  std::vector<std::vector<long long>> edges(r - 1, std::vector<long long>(r));
  for (int i = 1; i < r; ++i)
    for (int j = 0; j < r; ++j) edges[i - 1][j] = pts[idx[i]][j] - pts[idx[0]][j];

  std::vector<Int> g(r);
  std::vector<std::vector<long long>> minor(r - 1, std::vector<long long>(r - 1));
  for (int j = 0; j < r; ++j) {
    for (int i = 0; i < r - 1; ++i) {
      int cc = 0;
      for (int c = 0; c < r; ++c)
        if (c != j) minor[i][cc++] = edges[i][c];
    }
    Int det = (r == 1) ? 1 : integerDeterminant(minor);
    g[j] = (j % 2 == 0) ? det : -det;
  }
  makePrimitive(g);
  bool allZero = true;
  for (Int x : g)
    if (x != 0) allZero = false;
  if (allZero) throw std::logic_error("degenerate facet simplex");
  return toLattice(g);
}

class IncrementalHull {
 public:
  IncrementalHull(std::vector<LatticePoint> pts, int r) : pts_(std::move(pts)), r_(r) {
    if (r_ < 2) throw std::logic_error("incremental hull needs dimension >= 2");
    buildInitialSimplex();
    for (size_t i = 0; i < pts_.size(); ++i)
      if (!used_[i]) insert(static_cast<int>(i));
  }

  std::vector<int> vertexIndices() const {
    std::set<int> candidates;
    for (const auto& f : facets_)
      for (int v : f.vertexIdx) candidates.insert(v);
    // a candidate is a vertex when the facet normals through it span R^r
    std::vector<int> out;
    for (int c : candidates) {
      std::vector<LatticePoint> normals;
      for (const auto& f : facets_)
        if (dotInt(f.normal, pts_[c]) == f.offset) normals.push_back(f.normal);
      normals.push_back(LatticePoint(r_, 0));  // affineDimension works on differences
      if (affineDimension(normals) == r_) out.push_back(c);
    }
    return out;
  }

  const std::vector<Facet>& facets() const { return facets_; }

 private:
  void buildInitialSimplex() {
    used_.assign(pts_.size(), false);
    std::vector<int> chosen{0};
    used_[0] = true;
    std::vector<LatticePoint> sofar{pts_[0]};
    for (size_t i = 1; i < pts_.size() && static_cast<int>(chosen.size()) < r_ + 1; ++i) {
      sofar.push_back(pts_[i]);
      if (affineDimension(sofar) == static_cast<int>(chosen.size())) {
        chosen.push_back(static_cast<int>(i));
        used_[i] = true;
      } else {
        sofar.pop_back();
      }
    }
    if (static_cast<int>(chosen.size()) != r_ + 1) throw std::logic_error("point set is not full-dimensional");

    refSum_.assign(r_, 0);
    for (int c : chosen)
      for (int j = 0; j < r_; ++j) refSum_[j] += pts_[c][j];
    refCount_ = r_ + 1;

    for (int skip = 0; skip <= r_; ++skip) {
      std::vector<int> idx;
      for (int i = 0; i <= r_; ++i)
        if (i != skip) idx.push_back(chosen[i]);
      facets_.push_back(makeFacet(idx));
    }
  }

  Facet makeFacet(std::vector<int> idx) {
    std::sort(idx.begin(), idx.end());
    Facet f;
    f.normal = facetNormal(pts_, idx);
    f.offset = toLongChecked(dotInt(f.normal, pts_[idx[0]]));
    Int side = dotInt(f.normal, refSum_) - static_cast<Int>(f.offset) * refCount_;
    if (side > 0) {
      for (auto& x : f.normal) x = -x;
      f.offset = -f.offset;
    } else if (side == 0) {
      throw std::logic_error("interior reference point lies on a facet");
    }
    f.vertexIdx = std::move(idx);
    return f;
  }

  void insert(int p) {
    std::vector<size_t> visible;
    for (size_t i = 0; i < facets_.size(); ++i)
      if (dotInt(facets_[i].normal, pts_[p]) > facets_[i].offset) visible.push_back(i);
    if (visible.empty()) return;  // inside or on the boundary: not a vertex

    // horizon = ridges of the visible region hit exactly once
    std::map<std::vector<int>, int> ridgeCount;
    for (size_t vi : visible) {
      const auto& f = facets_[vi];
      for (int drop = 0; drop < r_; ++drop) {
        std::vector<int> ridge;
        for (int i = 0; i < r_; ++i)
          if (i != drop) ridge.push_back(f.vertexIdx[i]);
        ++ridgeCount[ridge];
      }
    }

    std::vector<Facet> fresh;
    for (const auto& [ridge, count] : ridgeCount) {
      if (count != 1) continue;
      std::vector<int> idx = ridge;
      idx.push_back(p);
      fresh.push_back(makeFacet(std::move(idx)));
    }

    std::vector<Facet> kept;
    kept.reserve(facets_.size());
    size_t vi = 0;
    for (size_t i = 0; i < facets_.size(); ++i) {
      if (vi < visible.size() && visible[vi] == i) {
        ++vi;
        continue;
      }
      kept.push_back(std::move(facets_[i]));
    }
    for (auto& f : fresh) kept.push_back(std::move(f));
    facets_ = std::move(kept);
  }

  std::vector<LatticePoint> pts_;
  int r_;
  std::vector<bool> used_;
  std::vector<Facet> facets_;
  LatticePoint refSum_;
  long long refCount_ = 0;
};

}  // namespace

bool HullResult::contains(const LatticePoint& x) const {
  for (const auto& eq : spanEquations)
    if (dotInt(eq.normal, x) != eq.offset) return false;
  for (const auto& hs : facets)
    if (dotInt(hs.normal, x) > hs.offset) return false;
  return true;
}

HullResult exactConvexHull(const std::vector<LatticePoint>& input) {
  if (input.empty()) throw std::invalid_argument("convex hull of an empty set");
  const size_t n = input[0].size();
  for (const auto& p : input)
    if (p.size() != n) throw std::invalid_argument("convex hull points of mixed dimension");

  // dedupe
  std::vector<LatticePoint> pts;
  {
    std::set<LatticePoint> seen;
    for (const auto& p : input)
      if (seen.insert(p).second) pts.push_back(p);
  }

  HullResult out;
  SpanInfo span = affineSpan(pts);
  out.affineDim = span.dim;
  out.spanEquations = span.equations;

  if (span.dim == 0) {
    out.vertices.push_back(pts[0]);
    return out;
  }

  // project to the span's pivot coordinates
  std::vector<LatticePoint> proj;
  proj.reserve(pts.size());
  for (const auto& p : pts) {
    LatticePoint q(span.dim);
    for (int j = 0; j < span.dim; ++j) q[j] = p[span.pivots[j]];
    proj.push_back(std::move(q));
  }

  auto liftNormal = [&](const LatticePoint& g) {
    LatticePoint normal(n, 0);
    for (int j = 0; j < span.dim; ++j) normal[span.pivots[j]] = g[j];
    return normal;
  };

  if (span.dim == 1) {
    size_t lo = 0, hi = 0;
    for (size_t i = 1; i < proj.size(); ++i) {
      if (proj[i][0] < proj[lo][0]) lo = i;
      if (proj[i][0] > proj[hi][0]) hi = i;
    }
    out.vertices.push_back(pts[lo]);
    out.vertices.push_back(pts[hi]);
    out.facets.push_back({liftNormal({1}), proj[hi][0]});
    out.facets.push_back({liftNormal({-1}), -proj[lo][0]});
    return out;
  }

  IncrementalHull hull(proj, span.dim);
  for (int idx : hull.vertexIndices()) out.vertices.push_back(pts[idx]);
  std::sort(out.vertices.begin(), out.vertices.end());

  std::set<std::pair<LatticePoint, long long>> seenFacets;
  for (const auto& f : hull.facets()) {
    if (!seenFacets.insert({f.normal, f.offset}).second) continue;  // coplanar triangulation pieces
    out.facets.push_back({liftNormal(f.normal), f.offset});
  }
  return out;
}

long long countLatticePoints(const std::vector<LatticePoint>& points) {
  HullResult hull = exactConvexHull(points);
  const size_t n = points[0].size();
  if (hull.affineDim == 0) return 1;

  SpanInfo span = affineSpan(hull.vertices);
  const int r = span.dim;
  const int k = static_cast<int>(n) - r;

  // express the non-pivot coordinates as affine rational functions of the
  // pivot block by solving the span equations
  std::vector<int> freeCols = span.pivots;
  std::vector<int> depCols;
  {
    std::vector<bool> isPivot(n, false);
    for (int p : freeCols) isPivot[p] = true;
    for (size_t j = 0; j < n; ++j)
      if (!isPivot[j]) depCols.push_back(static_cast<int>(j));
  }

  std::vector<std::vector<Rational>> M;  // k x (k + r + 1): E_dep | E_free | -offset
  for (const auto& eq : span.equations) {
    std::vector<Rational> row;
    for (int j : depCols) row.push_back(Rational(eq.normal[j]));
    for (int j : freeCols) row.push_back(Rational(eq.normal[j]));
    row.push_back(Rational(-eq.offset));
    M.push_back(std::move(row));
  }
  std::vector<int> pivotCols;
  int rank = rrefRational(M, pivotCols);
  if (rank != k) throw std::logic_error("span equations do not determine the dependent block");

  std::vector<long long> lo(r), hi(r);
  for (int j = 0; j < r; ++j) {
    lo[j] = hi[j] = hull.vertices[0][freeCols[j]];
    for (const auto& v : hull.vertices) {
      lo[j] = std::min(lo[j], v[freeCols[j]]);
      hi[j] = std::max(hi[j], v[freeCols[j]]);
    }
  }

  long long count = 0;
  std::vector<long long> tuple(r);
  LatticePoint candidate(n);
  std::function<void(int)> walk = [&](int depth) {
    if (depth == r) {
      for (int j = 0; j < r; ++j) candidate[freeCols[j]] = tuple[j];
      for (int i = 0; i < k; ++i) {
        // dependent coordinate from row i: x_dep = -(E_free . tuple) - (-offset)
        Rational value(0);
        for (int j = 0; j < r; ++j) value = value + M[i][k + j] * Rational(tuple[j]);
        value = -value - M[i][k + r];
        if (!value.isInteger()) return;
        candidate[depCols[i]] = value.num;
      }
      if (hull.contains(candidate)) ++count;
      return;
    }
    for (long long v = lo[depth]; v <= hi[depth]; ++v) {
      tuple[depth] = v;
      walk(depth + 1);
    }
  };
  walk(0);
  return count;
}

// ---------------------------------------------------------------------------
// Oracle-driven reconstruction

namespace {

RationalVector toRationalVector(const LatticePoint& w) {
  RationalVector out(w.size());
  for (size_t i = 0; i < w.size(); ++i) out[i] = Rational(w[i]);
  return out;
}

std::string replyToString(const OracleReply& r) {
  switch (r.tag) {
    case OracleReply::Tag::Vertex: {
      std::string s = "vertex (";
      for (size_t i = 0; i < r.vertex.size(); ++i) s += (i ? "," : "") + std::to_string(r.vertex[i]);
      return s + ")";
    }
    case OracleReply::Tag::NonVertex:
      return "non-vertex";
    default:
      return "failure" + (r.note.empty() ? "" : ": " + r.note);
  }
}

bool isPrimeLL(long long p) {
  if (p < 2) return false;
  for (long long q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

long long primeAbove(long long lower) {
  long long p = std::max(lower + 1, 2LL);
  while (!isPrimeLL(p)) ++p;
  return p;
}

struct ReconState {
  int n = 0;
  int d = -1;
  std::vector<LatticePoint> verts;       // unhomogenized beta vertices
  std::set<std::pair<LatticePoint, long long>> certified;
  ReconstructionResult result;

  bool isCertified(const LatticePoint& w, long long h) const { return certified.count({w, h}) > 0; }
};

class Reconstructor {
 public:
  Reconstructor(const OracleFn& oracle, int n, int degreeHint, const ReconstructOptions& options)
      : oracle_(oracle), options_(options), rng_(0x5eedful) {
    state_.n = n;
    if (degreeHint > 0) state_.d = degreeHint;
  }

  ReconstructionResult run() {
    probe();
    if (state_.verts.empty())
      throw ReconstructionError("oracle produced no vertex answers during probing");

    for (;;) {
      HullResult hull = exactConvexHull(state_.verts);
      if (certifySpan(hull) && certifyFacets(hull)) break;
    }

    HullResult hull = exactConvexHull(state_.verts);
    ReconstructionResult out = std::move(state_.result);
    out.degree = state_.d;
    std::vector<LatticePoint> homog;
    for (const auto& v : hull.vertices) {
      LatticePoint h = v;
      long long total = 0;
      for (long long x : v) total += x;
      h.push_back(state_.d - total);
      homog.push_back(std::move(h));
    }
    out.homogenizedVertices = LatticePolytope(std::move(homog));
    out.queriesUsed = queries_;
    return out;
  }

 private:
  OracleReply ask(const LatticePoint& w) {
    if (++queries_ > options_.maxQueries)
      throw ReconstructionError("reconstruction query budget exceeded");
    OracleReply r = oracle_(toRationalVector(w));
    state_.result.log.push_back({toRationalVector(w), replyToString(r)});
    return r;
  }

  /// Validates a vertex reply and returns the unhomogenized point.
  LatticePoint acceptVertex(const OracleReply& r) {
    if (static_cast<int>(r.vertex.size()) != state_.n + 1)
      throw ReconstructionError("oracle vertex has the wrong dimension");
    long long total = 0;
    for (long long x : r.vertex) {
      if (x < 0) throw ReconstructionError("oracle vertex has a negative coordinate");
      total += x;
    }
    if (state_.d < 0) state_.d = total;
    if (total != state_.d)
      throw ReconstructionError("inconsistent oracle: vertex answers disagree on the degree");
    LatticePoint v(r.vertex.begin(), r.vertex.end() - 1);
    for (const auto& [w, h] : state_.certified)
      if (dotInt(w, v) > h)
        throw ReconstructionError("inconsistent oracle: vertex violates a certified halfspace");
    return v;
  }

  void addVertex(const LatticePoint& v) {
    if (std::find(state_.verts.begin(), state_.verts.end(), v) == state_.verts.end())
      state_.verts.push_back(v);
  }

  LatticePoint perturbed(const LatticePoint& w) {
    long long scale;
    if (options_.gentlePerturbation) {
      scale = 2;
    } else {
      const long long B = state_.d > 0 ? state_.d : 64;
      scale = primeAbove(2LL * state_.n * B);
    }
    LatticePoint out(state_.n);
    for (int i = 0; i < state_.n; ++i)
      out[i] = scale * w[i] + (rng_.nextU64() & 1 ? 1 : -1);
    return out;
  }

  /// Best-effort vertex answer at w (perturbing on non-vertex answers); no
  /// certification implied. Returns false when the oracle never yields one.
  bool vertexNear(const LatticePoint& w, LatticePoint& out) {
    OracleReply r = ask(w);
    if (r.tag == OracleReply::Tag::Vertex) {
      out = acceptVertex(r);
      return true;
    }
    for (int retry = 0; retry < options_.perturbRetries; ++retry) {
      OracleReply rp = ask(perturbed(w));
      if (rp.tag == OracleReply::Tag::Vertex) {
        out = acceptVertex(rp);
        return true;
      }
    }
    return false;
  }

  void probe() {
    std::vector<LatticePoint> dirs;
    for (int i = 0; i < state_.n; ++i) {
      LatticePoint e(state_.n, 0);
      e[i] = 1;
      dirs.push_back(e);
      e[i] = -1;
      dirs.push_back(e);
    }
    dirs.push_back(LatticePoint(state_.n, 1));
    dirs.push_back(LatticePoint(state_.n, -1));
    for (const auto& w : dirs) {
      LatticePoint v;
      if (vertexNear(w, v)) addVertex(v);
    }
  }

  /// Certify that the polytope attains value h in direction w, or insert a
  /// vertex beyond it. Returns true when certified, false when the vertex
  /// set grew.
  bool certifyDirection(const LatticePoint& w, long long h) {
    if (state_.isCertified(w, h)) return true;

    auto classify = [&](const LatticePoint& v, bool sound, int& confirmations) -> std::optional<bool> {
      Int val = dotInt(w, v);
      if (val > h) {
        addVertex(v);
        return false;
      }
      if (val == h) {
        if (sound || ++confirmations >= 2) {
          state_.certified.insert({w, h});
          return true;
        }
        return std::nullopt;
      }
      // val < h: a sound answer would contradict the hull's own vertices
      if (sound)
        throw ReconstructionError("inconsistent oracle: support value below the known hull");
      return std::nullopt;  // gentle perturbation misaligned; retry
    };

    int confirmations = 0;
    OracleReply r = ask(w);
    if (r.tag == OracleReply::Tag::Vertex) {
      // an unperturbed vertex answer certifies its own halfspace
      auto res = classify(acceptVertex(r), true, confirmations);
      if (res) return *res;
    }
    for (int retry = 0; retry < options_.perturbRetries; ++retry) {
      OracleReply rp = ask(perturbed(w));
      if (rp.tag != OracleReply::Tag::Vertex) continue;
      const bool sound = !options_.gentlePerturbation && state_.d > 0;
      auto res = classify(acceptVertex(rp), sound, confirmations);
      if (res) return *res;
    }
    throw ReconstructionError("reconstruction stalled: no usable vertex answer for a facet direction");
  }

  bool certifySpan(const HullResult& hull) {
    for (const auto& eq : hull.spanEquations) {
      LatticePoint minus(eq.normal.size());
      for (size_t i = 0; i < minus.size(); ++i) minus[i] = -eq.normal[i];
      size_t before = state_.verts.size();
      if (!certifyDirection(eq.normal, eq.offset)) return false;
      if (!certifyDirection(minus, -eq.offset)) return false;
      if (state_.verts.size() != before) return false;
    }
    return true;
  }

  bool certifyFacets(const HullResult& hull) {
    for (const auto& f : hull.facets) {
      size_t before = state_.verts.size();
      if (!certifyDirection(f.normal, f.offset)) return false;
      if (state_.verts.size() != before) return false;
    }
    return true;
  }

  const OracleFn& oracle_;
  ReconstructOptions options_;
  Rng rng_;
  ReconState state_;
  int queries_ = 0;
};

}  // namespace

ReconstructionResult reconstructPolytope(const OracleFn& oracle, int n, int degreeHint,
                                         const ReconstructOptions& options) {
  if (n < 1) throw std::invalid_argument("reconstruction needs at least one variable");
  Reconstructor rec(oracle, n, degreeHint, options);
  return rec.run();
}

OracleFn symbolicOracleFn(const Polynomial& f) {
  return [f](const RationalVector& omega) {
    OracleReply reply;
    SymbolicOracleAnswer ans = symbolicOracle(f, omega);
    if (ans.tag == SymbolicOracleAnswer::Tag::Vertex) {
      reply.tag = OracleReply::Tag::Vertex;
      reply.vertex = ans.vertex;
    } else {
      reply.tag = OracleReply::Tag::NonVertex;
    }
    return reply;
  };
}

}  // namespace newtonscope
