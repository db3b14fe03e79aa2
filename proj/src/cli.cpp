#include "newtonscope/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "newtonscope/oracle.hpp"
#include "newtonscope/systemfile.hpp"
#include "newtonscope/tropical.hpp"

namespace newtonscope {

namespace {

constexpr uint64_t kDefaultSeed = 2018;

RationalVector parseOmega(const std::string& text) {
  RationalVector omega;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    auto start = item.find_first_not_of(" \t");
    auto stop = item.find_last_not_of(" \t");
    if (start == std::string::npos) throw std::invalid_argument("empty omega entry");
    omega.push_back(Rational::parse(item.substr(start, stop - start + 1)));
  }
  if (omega.empty()) throw std::invalid_argument("omega is empty");
  return omega;
}

uint64_t resolveSeed(const CLI::Option* seedOpt, uint64_t flagSeed, const std::optional<uint64_t>& fileSeed) {
  if (seedOpt->count() > 0) return flagSeed;
  if (fileSeed) return *fileSeed;
  if (const char* env = std::getenv("NEWTONSCOPE_SEED")) return std::strtoull(env, nullptr, 10);
  return kDefaultSeed;
}

void writeOutput(const std::string& text, const std::string& outPath, std::ostream& out) {
  if (outPath.empty()) {
    out << text << "\n";
    return;
  }
  std::ofstream f(outPath);
  if (!f) throw std::runtime_error("cannot write to " + outPath);
  f << text << "\n";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool looksLikeJson(const std::string& text) {
  auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && text[pos] == '{';
}

WitnessSet witnessFromSystemFile(const SystemFile& file, uint64_t seed, const TrackSettings& tracking) {
  PolySystem I = file.parseSystem();
  std::vector<int> drop = file.dropIndices();
  Rng rng(seed);
  WitnessSet W = (drop.empty() && I.equationCount() == 1)
                     ? witnessForHypersurface(I.polys[0], I.variableNames, rng, tracking)
                     : witnessForProjection(I, drop, rng, tracking);
  W.seed = seed;
  return W;
}

WitnessSet witnessFromInput(const std::string& path, uint64_t seed, const TrackSettings& tracking) {
  std::string text = slurp(path);
  if (looksLikeJson(text)) return witnessFromJson(text);
  SystemFile file = parseSystemFile(text);
  return witnessFromSystemFile(file, seed, tracking);
}

nlohmann::json settingsJson(const OracleSettings& s, uint64_t seed) {
  nlohmann::json j;
  j["certainty"] = s.certainty;
  j["epsilon"] = s.epsilon;
  j["minTracks"] = s.minTracks;
  j["maxTracks"] = s.maxTracks;
  j["stepResolution"] = s.stepResolution;
  j["newtonTol"] = s.tracking.newtonTol;
  j["seed"] = seed;
  return j;
}

nlohmann::json answerJson(const OracleAnswer& answer) {
  nlohmann::json j;
  switch (answer.tag) {
    case OracleTag::EEP:
      j["tag"] = "eep";
      break;
    case OracleTag::Inconclusive:
      j["tag"] = "inconclusive";
      j["reason"] = answer.reason;
      break;
    case OracleTag::Counts:
      j["tag"] = "counts";
      j["beta"] = answer.beta;
      j["betaInf"] = answer.betaInf;
      j["other"] = answer.otherCount;
      j["vertex"] = answer.isVertex();
      break;
  }
  j["steps"] = answer.stepsUsed;
  return j;
}

struct CommonOptions {
  std::string outPath;
  uint64_t seed = kDefaultSeed;
  int threads = 0;
  bool serial = false;
  OracleSettings oracle;

  void apply() {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif
    if (serial) oracle.tracking.parallelPaths = false;
  }
};

void addCommonFlags(CLI::App* cmd, CommonOptions& opts, CLI::Option** seedOpt) {
  cmd->add_option("--out", opts.outPath, "write the JSON result to a file instead of stdout");
  *seedOpt = cmd->add_option("--seed", opts.seed, "random seed (falls back to the file seed, then NEWTONSCOPE_SEED)");
  cmd->add_option("--threads", opts.threads, "OpenMP thread count (0 = library default)");
  cmd->add_flag("--serial", opts.serial, "run path batches serially");
  cmd->add_option("--certainty", opts.oracle.certainty, "decision threshold exponent");
  cmd->add_option("--epsilon", opts.oracle.epsilon, "target capture radius");
  cmd->add_option("--min-tracks", opts.oracle.minTracks, "step at which convergence monitoring starts");
  cmd->add_option("--max-tracks", opts.oracle.maxTracks, "maximum number of t steps");
  cmd->add_option("--step-resolution", opts.oracle.stepResolution, "multiplicative t growth per step");
  cmd->add_option("--newton-tol", opts.oracle.tracking.newtonTol, "corrector tolerance");
}

std::vector<std::vector<long long>> readMatrixFile(const std::string& path, int n) {
  std::istringstream in(slurp(path));
  std::vector<std::vector<long long>> A(n, std::vector<long long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(in >> A[i][j])) throw std::invalid_argument("monomial map file needs " + std::to_string(n * n) + " integers");
  return A;
}

int commandTraces(const std::string& inputPath, const std::string& format, const std::string& dir,
                  std::ostream& out) {
  nlohmann::json j = nlohmann::json::parse(slurp(inputPath));
  if (!j.contains("traces")) throw std::invalid_argument("answer JSON carries no traces (re-run with --emit-traces)");
  const nlohmann::json& tr = j.at("traces");

  OracleAnswer answer;
  for (const auto& p : tr.at("paths")) {
    PathTrace trace;
    trace.pathIndex = p.at("pathIndex").get<int>();
    for (const auto& s : p.at("samples"))
      trace.samples.push_back({s.at(0).get<double>(), Complex(s.at(1).get<double>(), s.at(2).get<double>()),
                               s.at(3).get<double>()});
    answer.traces.push_back(std::move(trace));
  }
  ComplexVector targets;
  for (const auto& g : tr.at("targets")) targets.emplace_back(g.at(0).get<double>(), g.at(1).get<double>());
  double epsilon = tr.at("epsilon").get<double>();

  std::filesystem::create_directories(dir);
  if (format == "json") {
    std::ofstream f(dir + "/traces.json");
    f << tracesToJson(answer, targets, epsilon) << "\n";
    out << dir << "/traces.json\n";
    return 0;
  }
  auto frames = renderSvgFrames(answer, targets, epsilon);
  nlohmann::json index;
  index["epsilon"] = epsilon;
  nlohmann::json files = nlohmann::json::array();
  for (size_t k = 0; k < frames.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%04zu.svg", k);
    std::ofstream f(dir + "/" + name);
    f << frames[k];
    files.push_back(name);
  }
  index["frames"] = files;
  std::ofstream f(dir + "/index.json");
  f << index.dump(2) << "\n";
  out << dir << "/index.json (" << frames.size() << " frames)\n";
  return 0;
}

}  // namespace

int runCli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"newtonscope: numerical Newton polytope oracle and tropical membership"};
  app.require_subcommand(1);

  CommonOptions witnessOpts, oracleOpts, polytopeOpts, tropicalOpts;
  CLI::Option *witnessSeed, *oracleSeed, *polytopeSeed, *tropicalSeed;

  // witness
  auto* cmdWitness = app.add_subcommand("witness", "compute a witness set for a (projected) hypersurface");
  std::string witnessInput;
  cmdWitness->add_option("file", witnessInput, "system file")->required();
  addCommonFlags(cmdWitness, witnessOpts, &witnessSeed);

  // oracle
  auto* cmdOracle = app.add_subcommand("oracle", "query the numerical Newton polytope oracle");
  std::string oracleInput, omegaText, emitTraces, tracesDir = "traces";
  cmdOracle->add_option("file", oracleInput, "system file or witness JSON")->required();
  cmdOracle->add_option("--omega", omegaText, "direction, comma-separated rationals (e.g. \"3,2\" or \"3/2,-1\")")->required();
  cmdOracle->add_option("--emit-traces", emitTraces, "embed traces in the answer (json) or write SVG frames (svg)")
      ->check(CLI::IsMember({"json", "svg"}));
  cmdOracle->add_option("--traces-dir", tracesDir, "directory for SVG frames");
  addCommonFlags(cmdOracle, oracleOpts, &oracleSeed);

  // polytope
  auto* cmdPolytope = app.add_subcommand("polytope", "reconstruct the homogenized Newton polytope from oracle queries");
  std::string polytopeInput;
  bool symbolicCheck = false;
  int queryBudget = 2000;
  cmdPolytope->add_option("file", polytopeInput, "system file")->required();
  cmdPolytope->add_flag("--symbolic", symbolicCheck, "cross-check against the exact symbolic oracle (explicit inputs)");
  cmdPolytope->add_option("--max-queries", queryBudget, "oracle query budget");
  addCommonFlags(cmdPolytope, polytopeOpts, &polytopeSeed);

  // tropical
  auto* cmdTropical = app.add_subcommand("tropical", "test membership of omega in the tropical variety");
  std::string tropicalInput, tropicalOmega, monomialMap = "none";
  cmdTropical->add_option("file", tropicalInput, "system file")->required();
  cmdTropical->add_option("--omega", tropicalOmega, "direction, comma-separated rationals")->required();
  cmdTropical->add_option("--monomial-map", monomialMap, "none, random, or a file with an n x n integer matrix");
  addCommonFlags(cmdTropical, tropicalOpts, &tropicalSeed);

  // traces
  auto* cmdTracesApp = app.add_subcommand("traces", "export path traces from an oracle answer JSON");
  std::string tracesInput, tracesFormat = "json", tracesOutDir = "traces";
  cmdTracesApp->add_option("file", tracesInput, "oracle answer JSON (produced with --emit-traces json)")->required();
  cmdTracesApp->add_option("--format", tracesFormat, "json or svg")->check(CLI::IsMember({"json", "svg"}));
  cmdTracesApp->add_option("--out-dir", tracesOutDir, "output directory");

  std::vector<const char*> argv;
  argv.push_back("newtonscope");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::stringstream buffer;
    int code = app.exit(e, buffer, buffer);
    (code == 0 ? out : err) << buffer.str();
    return code == 0 ? 0 : 1;
  }

  try {
    if (cmdWitness->parsed()) {
      SystemFile file = loadSystemFile(witnessInput);
      witnessOpts.seed = resolveSeed(witnessSeed, witnessOpts.seed, file.seed);
      witnessOpts.apply();
      WitnessSet W = witnessFromSystemFile(file, witnessOpts.seed, witnessOpts.oracle.tracking);
      writeOutput(witnessToJson(W), witnessOpts.outPath, out);
      return 0;
    }

    if (cmdOracle->parsed()) {
      std::optional<uint64_t> fileSeed;
      {
        std::string text = slurp(oracleInput);
        if (!looksLikeJson(text)) {
          SystemFile f = parseSystemFile(text);
          fileSeed = f.seed;
        }
      }
      oracleOpts.seed = resolveSeed(oracleSeed, oracleOpts.seed, fileSeed);
      oracleOpts.apply();
      RationalVector omega = parseOmega(omegaText);

      WitnessSet W = witnessFromInput(oracleInput, oracleOpts.seed, oracleOpts.oracle.tracking);
      Rng rng(oracleOpts.seed, 1);
      OracleContext ctx = buildOracle(W, PointChoice::defaults(), rng, oracleOpts.oracle.tracking);
      OracleAnswer answer = queryOracle(ctx, omega, oracleOpts.oracle);

      nlohmann::json j = answerJson(answer);
      nlohmann::json omegaArr = nlohmann::json::array();
      for (const auto& q : omega) omegaArr.push_back(q.str());
      j["omega"] = omegaArr;
      j["degree"] = ctx.degree;
      j["seed"] = oracleOpts.seed;
      j["settings"] = settingsJson(oracleOpts.oracle, oracleOpts.seed);
      if (emitTraces == "json") {
        j["traces"] = nlohmann::json::parse(tracesToJson(answer, ctx.targets(), oracleOpts.oracle.epsilon));
      } else if (emitTraces == "svg") {
        auto frames = renderSvgFrames(answer, ctx.targets(), oracleOpts.oracle.epsilon);
        std::filesystem::create_directories(tracesDir);
        nlohmann::json files = nlohmann::json::array();
        for (size_t k = 0; k < frames.size(); ++k) {
          char name[32];
          std::snprintf(name, sizeof(name), "frame_%04zu.svg", k);
          std::ofstream f(tracesDir + "/" + name);
          f << frames[k];
          files.push_back(name);
        }
        nlohmann::json index;
        index["frames"] = files;
        index["epsilon"] = oracleOpts.oracle.epsilon;
        std::ofstream f(tracesDir + "/index.json");
        f << index.dump(2) << "\n";
        j["tracesDir"] = tracesDir;
      }
      writeOutput(j.dump(2), oracleOpts.outPath, out);
      return answer.tag == OracleTag::Inconclusive ? 2 : 0;
    }

    if (cmdPolytope->parsed()) {
      SystemFile file = loadSystemFile(polytopeInput);
      polytopeOpts.seed = resolveSeed(polytopeSeed, polytopeOpts.seed, file.seed);
      polytopeOpts.apply();

      WitnessSet W = witnessFromSystemFile(file, polytopeOpts.seed, polytopeOpts.oracle.tracking);
      ReconstructOptions recOpts;
      recOpts.maxQueries = queryBudget;
      recOpts.gentlePerturbation = !W.isExplicitHypersurface();
      OracleFn oracle = makeNumericOracleFn(W, polytopeOpts.seed, polytopeOpts.oracle);
      ReconstructionResult rec = reconstructPolytope(oracle, W.imageDim(), W.degree, recOpts);

      nlohmann::json j;
      j["vertices"] = rec.homogenizedVertices.points;
      j["degree"] = rec.degree;
      j["queries"] = rec.queriesUsed;
      j["seed"] = polytopeOpts.seed;
      j["settings"] = settingsJson(polytopeOpts.oracle, polytopeOpts.seed);
      nlohmann::json log = nlohmann::json::array();
      for (const auto& entry : rec.log) {
        nlohmann::json e;
        nlohmann::json w = nlohmann::json::array();
        for (const auto& q : entry.omega) w.push_back(q.str());
        e["omega"] = w;
        e["answer"] = entry.answer;
        log.push_back(std::move(e));
      }
      j["log"] = log;

      int exitCode = 0;
      if (symbolicCheck) {
        if (!W.isExplicitHypersurface())
          throw std::invalid_argument("--symbolic needs an explicit hypersurface input (one equation, no projection)");
        ReconstructionResult sym = reconstructPolytope(symbolicOracleFn(W.system.polys[0]), W.imageDim(),
                                                       W.degree, ReconstructOptions{});
        j["symbolicVertices"] = sym.homogenizedVertices.points;
        auto a = rec.homogenizedVertices.points;
        auto b = sym.homogenizedVertices.points;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        j["symbolicMatch"] = (a == b);
        if (a != b) exitCode = 1;
      }
      writeOutput(j.dump(2), polytopeOpts.outPath, out);
      return exitCode;
    }

    if (cmdTropical->parsed()) {
      SystemFile file = loadSystemFile(tropicalInput);
      tropicalOpts.seed = resolveSeed(tropicalSeed, tropicalOpts.seed, file.seed);
      tropicalOpts.apply();
      RationalVector omega = parseOmega(tropicalOmega);
      PolySystem I = file.parseSystem();

      MonomialMapChoice choice = MonomialMapChoice::none();
      if (monomialMap == "random")
        choice = MonomialMapChoice::random();
      else if (monomialMap != "none")
        choice = MonomialMapChoice::given(readMatrixFile(monomialMap, I.n));

      Rng rng(tropicalOpts.seed, 2);
      MembershipReport report = tropicalMembership(I, omega, tropicalOpts.oracle, rng, choice);
      report.seed = tropicalOpts.seed;
      writeOutput(membershipToJson(report), tropicalOpts.outPath, out);
      return report.decisive() ? 0 : 2;
    }

    if (cmdTracesApp->parsed()) {
      return commandTraces(tracesInput, tracesFormat, tracesOutDir, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 1;
}

}  // namespace newtonscope
