#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>

#include "newtonscope/oracle.hpp"

namespace newtonscope {

namespace {

const char* verdictName(PathVerdict v) {
  switch (v) {
    case PathVerdict::ToTarget: return "to-target";
    case PathVerdict::ToOther: return "to-other";
    case PathVerdict::Diverged: return "diverged";
    case PathVerdict::Frozen: return "frozen";
    default: return "undecided";
  }
}

}  // namespace

std::string tracesToJson(const OracleAnswer& answer, const ComplexVector& targets, double epsilon) {
  nlohmann::json j;
  nlohmann::json gs = nlohmann::json::array();
  for (const auto& g : targets) gs.push_back({g.real(), g.imag()});
  j["targets"] = gs;
  j["epsilon"] = epsilon;
  nlohmann::json paths = nlohmann::json::array();
  for (const auto& trace : answer.traces) {
    nlohmann::json p;
    p["pathIndex"] = trace.pathIndex;
    p["verdict"] = verdictName(trace.verdict);
    if (trace.verdict == PathVerdict::ToTarget) p["target"] = trace.targetIndex;
    p["decidedAtStep"] = trace.decidedAtStep;
    p["failed"] = trace.failed;
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& s : trace.samples) samples.push_back({s.t, s.s.real(), s.s.imag(), s.derivative});
    p["samples"] = samples;  // entries are [t, re s, im s, |ds/dlog t|]
    paths.push_back(std::move(p));
  }
  j["paths"] = paths;
  return j.dump(2);
}

namespace {

struct Mapper {
  double lo, hi;
  int px;
  double x(double v) const { return (v - lo) / (hi - lo) * px; }
  double y(double v) const { return (hi - v) / (hi - lo) * px; }  // flip
  bool inside(const Complex& z) const {
    return z.real() >= lo && z.real() <= hi && z.imag() >= lo && z.imag() <= hi;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

/// Clip the segment from inside point p to outside point q against the view
/// box; returns the boundary crossing.
Complex clipToBox(const Complex& p, const Complex& q, const Mapper& m) {
  double tBest = 1.0;
  auto shrink = [&](double num, double den) {
    if (den == 0.0) return;
    double tc = num / den;
    if (tc >= 0.0 && tc < tBest) tBest = tc;
  };
  shrink(m.hi - p.real(), q.real() - p.real());
  shrink(m.lo - p.real(), q.real() - p.real());
  shrink(m.hi - p.imag(), q.imag() - p.imag());
  shrink(m.lo - p.imag(), q.imag() - p.imag());
  return p + tBest * (q - p);
}

}  // namespace

std::vector<std::string> renderSvgFrames(const OracleAnswer& answer, const ComplexVector& targets,
                                         double epsilon, const SvgFrameOptions& options) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  Mapper m{options.viewMin, options.viewMax, options.sizePx};

  size_t maxSamples = 1;
  for (const auto& trace : answer.traces) maxSamples = std::max(maxSamples, trace.samples.size());

  std::vector<std::string> frames;
  frames.reserve(maxSamples);
  for (size_t frame = 0; frame < maxSamples; ++frame) {
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(options.sizePx) +
           "\" height=\"" + std::to_string(options.sizePx) + "\" viewBox=\"0 0 " +
           std::to_string(options.sizePx) + " " + std::to_string(options.sizePx) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    double unit = options.sizePx / (options.viewMax - options.viewMin);
    for (const auto& g : targets) {
      svg += "<circle cx=\"" + fmt(m.x(g.real())) + "\" cy=\"" + fmt(m.y(g.imag())) + "\" r=\"" +
             fmt(epsilon * unit) + "\" fill=\"none\" stroke=\"#555\" stroke-dasharray=\"4 3\"/>\n";
    }

    for (size_t p = 0; p < answer.traces.size(); ++p) {
      const auto& samples = answer.traces[p].samples;
      const char* color = palette[p % 8];
      std::string points;
      bool clipped = false;
      Complex exitPoint;
      Complex prev;
      for (size_t k = 0; k < samples.size() && k <= frame; ++k) {
        const Complex z = samples[k].s;
        if (!m.inside(z)) {
          if (k > 0 && m.inside(prev)) exitPoint = clipToBox(prev, z, m);
          else exitPoint = Complex(std::clamp(z.real(), m.lo, m.hi), std::clamp(z.imag(), m.lo, m.hi));
          clipped = true;
          points += fmt(m.x(exitPoint.real())) + "," + fmt(m.y(exitPoint.imag())) + " ";
          break;
        }
        points += fmt(m.x(z.real())) + "," + fmt(m.y(z.imag())) + " ";
        prev = z;
      }
      if (!points.empty()) {
        svg += "<polyline points=\"" + points + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"1.5\"/>\n";
        // current position marker
        size_t last = std::min(frame, samples.size() - 1);
        Complex z = clipped ? exitPoint : samples[last].s;
        if (clipped) {
          // divergence marker at the viewport edge
          double cx = m.x(z.real()), cy = m.y(z.imag());
          svg += "<path d=\"M" + fmt(cx - 5) + " " + fmt(cy - 5) + " L" + fmt(cx + 5) + " " + fmt(cy + 5) +
                 " M" + fmt(cx - 5) + " " + fmt(cy + 5) + " L" + fmt(cx + 5) + " " + fmt(cy - 5) +
                 "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        } else {
          svg += "<circle cx=\"" + fmt(m.x(z.real())) + "\" cy=\"" + fmt(m.y(z.imag())) +
                 "\" r=\"3\" fill=\"" + color + "\"/>\n";
        }
      }
    }
    svg += "</svg>\n";
    frames.push_back(std::move(svg));
  }
  return frames;
}

}  // namespace newtonscope
