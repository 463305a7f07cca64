// Command-line front end: classify maps and states from JSON files, run the
// gallery regressions, run iteration experiments, emit JSON reports.
//
// Exit codes: 0 success, 1 regression/fact failure, 2 input or parse error,
// 3 dimension error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "realmap/gallery.hpp"
#include "realmap/json_io.hpp"
#include "realmap/version.hpp"

using nlohmann::json;
using namespace realmap;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRegression = 1;
constexpr int kExitInput = 2;
constexpr int kExitDimension = 3;

int exitCodeFor(const Error& e) {
  switch (e.code()) {
    case ErrorCode::DimensionMismatch:
    case ErrorCode::FieldMismatch:
      return kExitDimension;
    default:
      return kExitInput;
  }
}

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeOut(const std::string& outPath, const json& j) {
  std::string text = j.dump(2) + "\n";
  if (outPath.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(outPath);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write " + outPath);
    out << text;
  }
}

SolverConfig makeConfig(std::uint64_t seed, bool seedSet, int restarts) {
  SolverConfig cfg;
  if (seedSet) {
    cfg.seed = seed;
  } else if (const char* env = std::getenv("REALMAP_SEED")) {
    cfg.seed = std::strtoull(env, nullptr, 10);
  }
  if (restarts > 0) cfg.restarts = restarts;
  return cfg;
}

json reportHeader(const std::string& command, const SolverConfig& cfg) {
  json j;
  j["command"] = command;
  j["version"] = versionString();
  j["buildId"] = buildId();
  j["config"] = toJson(cfg);
  return j;
}

gallery::Params parseParams(const std::vector<std::string>& kvs) {
  gallery::Params p;
  for (const std::string& kv : kvs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::ParseError, "expected key=value, got " + kv);
    p[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  return p;
}

int runClassifyMap(const std::string& inPath, const std::vector<int>& pList, const SolverConfig& cfg,
                   const std::string& outPath) {
  LinearMapRep map = mapFromJson(parseJsonText(readFile(inPath)));
  json rep = reportHeader("classify-map", cfg);
  rep["input"] = {{"dimIn", map.dimIn()}, {"dimOut", map.dimOut()}, {"field", field_name(map.field())}};

  AdjointCommutation adj = commutesWithAdjoint(map, cfg.psdTol);
  rep["adjointCommutation"] = {{"commutes", adj.commutes},
                               {"choiDefect", adj.choiDefect},
                               {"worstBasisViolation", adj.worstBasisViolation}};
  rep["cp"] = toJson(isCompletelyPositive(map, cfg));
  MapDiagnostics diag = map.diagnostics();
  rep["diagnostics"] = {{"hermitianChoiDefect", diag.hermitianChoiDefect},
                        {"iptDefect", diag.iptDefect},
                        {"pptMinEigenvalue", diag.pptMinEigenvalue},
                        {"unitalDefect", diag.unitalDefect},
                        {"traceDefect", diag.traceDefect}};
  rep["pptIpt"] = toJson(ebreak::classifyMapPptIpt(map, cfg));

  std::vector<int> ps = pList.empty() ? std::vector<int>{1} : pList;
  json pos = json::array(), cpx = json::array(), eb = json::array();
  auto battery = gallery::standardWitnessBattery(map.dimIn());
  auto probes = gallery::pPositiveProbeFamily(map.dimOut());
  for (int p : ps) {
    pos.push_back({{"p", p}, {"verdict", toJson(checkPPositive(map, p, cfg))}});
    if (map.field() == Field::Real)
      cpx.push_back({{"p", p}, {"verdict", toJson(checkComplexificationPPositive(map, p, cfg))}});
    json ebEntry;
    ebEntry["p"] = p;
    if (map.field() == Field::Real)
      ebEntry["real"] = toJson(ebreak::checkEbP(map, p, Field::Real, cfg, probes, battery).choiSep);
    ebEntry["complex"] = toJson(ebreak::checkEbP(map, p, Field::Complex, cfg, probes, battery).choiSep);
    eb.push_back(ebEntry);
  }
  rep["pPositive"] = pos;
  if (map.field() == Field::Real) rep["complexification"] = cpx;
  rep["entanglementBreaking"] = eb;
  writeOut(outPath, rep);
  return kExitOk;
}

int runClassifyState(const std::string& inPath, const std::string& fieldArg, std::vector<int> pList,
                     const SolverConfig& cfg, const std::string& outPath) {
  BipartiteOperator state = bipartiteFromJson(parseJsonText(readFile(inPath)));
  if (pList.empty()) pList = {1};
  Field field = (fieldArg == "C") ? Field::Complex : Field::Real;
  std::vector<cones::SepRequest> reqs;
  for (int p : pList) reqs.push_back({field, p});
  auto battery = gallery::standardWitnessBattery(state.dimLeft());
  cones::StateClassification cls = cones::classifyState(state, reqs, cfg, battery);
  json rep = reportHeader("classify-state", cfg);
  rep["input"] = {{"dimLeft", state.dimLeft()},
                  {"dimRight", state.dimRight()},
                  {"field", field_name(state.field())}};
  rep["classification"] = toJson(cls);
  writeOut(outPath, rep);
  return kExitOk;
}

int runWitness(const std::string& mapPath, const std::string& statePath, const std::string& outPath) {
  LinearMapRep map = mapFromJson(parseJsonText(readFile(mapPath)));
  BipartiteOperator state = bipartiteFromJson(parseJsonText(readFile(statePath)));
  double value = cones::witnessValue(map, state);
  json rep;
  rep["command"] = "witness";
  rep["buildId"] = buildId();
  rep["value"] = value;
  rep["negative"] = value < 0;
  rep["note"] =
      "a negative value with a p-positive map certifies the state outside the rank-p cone";
  writeOut(outPath, rep);
  return kExitOk;
}

int runGalleryRun(const std::string& id, bool all, const gallery::Params& params,
                  const SolverConfig& cfg, const std::string& outPath) {
  std::vector<std::pair<std::string, gallery::Params>> jobs;
  if (all) {
    for (const gallery::EntryInfo& e : gallery::entries())
      if (e.enabledByDefault) jobs.emplace_back(e.id, gallery::Params{});
  } else {
    if (!gallery::exists(id)) throw Error(ErrorCode::UnknownId, "unknown gallery id: " + id);
    jobs.emplace_back(id, params);
  }
  json rep = reportHeader("gallery-run", cfg);
  json entries = json::array();
  int failures = 0;
  for (const auto& [jid, jparams] : jobs) {
    gallery::EntryReport er = gallery::runEntry(jid, jparams, cfg);
    json je;
    je["id"] = er.id;
    je["params"] = er.params;
    je["allPass"] = er.allPass;
    json facts = json::array();
    for (const gallery::FactResult& fr : er.facts) {
      facts.push_back({{"name", fr.name},
                       {"pass", fr.pass},
                       {"measured", fr.measured},
                       {"expected", fr.expected},
                       {"detail", fr.detail}});
      std::cout << (fr.pass ? "[PASS] " : "[FAIL] ") << er.id << ": " << fr.name;
      if (!fr.pass) std::cout << "  (measured " << fr.measured << ", expected " << fr.expected << ")";
      std::cout << "\n";
    }
    je["facts"] = facts;
    entries.push_back(je);
    if (!er.allPass) ++failures;
  }
  rep["entries"] = entries;
  rep["failures"] = failures;
  if (!outPath.empty()) writeOut(outPath, rep);
  std::cout << (failures == 0 ? "all entries passed" : "FAILURES: " + std::to_string(failures))
            << "\n";
  return failures == 0 ? kExitOk : kExitRegression;
}

int runIterate(const std::string& inPath, int kMax, const SolverConfig& cfg,
               const std::string& outPath) {
  LinearMapRep map = mapFromJson(parseJsonText(readFile(inPath)));
  std::vector<ebreak::IterationStep> steps = ebreak::iterateAndTrack(map, kMax, cfg);
  std::ostringstream lines;
  for (const ebreak::IterationStep& s : steps) lines << toJson(s).dump() << "\n";
  if (outPath.empty()) {
    std::cout << lines.str();
  } else {
    std::ofstream out(outPath);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write " + outPath);
    out << lines.str();
  }
  return kExitOk;
}

int runProbeIpt2(const std::string& inPath, const SolverConfig& cfg, const std::string& outPath) {
  LinearMapRep map = mapFromJson(parseJsonText(readFile(inPath)));
  auto battery = gallery::standardWitnessBattery(map.dimIn());
  auto probes = gallery::pPositiveProbeFamily(map.dimOut());
  ebreak::Ipt2ProbeReport probe = ebreak::runIptSquaredProbe(map, cfg, probes, battery);
  json rep = reportHeader("probe-ipt2", cfg);
  rep["report"] = toJson(probe);
  if (probe.counterexampleFlag)
    std::cerr << "POTENTIAL COUNTEREXAMPLE: square of a certified-IPT map was refuted as "
                 "entanglement breaking; inspect the report.\n";
  writeOut(outPath, rep);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"realmap: positivity, separability and entanglement-breaking classification"};
  app.require_subcommand(1);
  // Global flags (--seed, --restarts) may appear after the subcommand.
  app.fallthrough();

  std::uint64_t seed = 0;
  bool seedSet = false;
  int restarts = 0;
  app.add_option("--seed", seed, "RNG seed (fallback: REALMAP_SEED, then built-in default)")
      ->each([&](const std::string&) { seedSet = true; });
  app.add_option("--restarts", restarts, "solver restarts");

  std::string inPath, outPath, mapPath, statePath, fieldArg = "R", galleryId;
  std::vector<int> pList;
  std::vector<std::string> paramKvs;
  bool allEntries = false;
  int kMax = 10;

  CLI::App* cmdMap = app.add_subcommand("classify-map", "classify a map from JSON");
  cmdMap->add_option("--in", inPath, "map JSON file")->required();
  cmdMap->add_option("--p", pList, "Schmidt levels to test (repeatable)");
  cmdMap->add_option("--out", outPath, "write the JSON report here instead of stdout");

  CLI::App* cmdState = app.add_subcommand("classify-state", "classify a bipartite state from JSON");
  cmdState->add_option("--in", inPath, "state JSON file")->required();
  cmdState->add_option("--field", fieldArg, "R or C")->check(CLI::IsMember({"R", "C"}));
  cmdState->add_option("--p", pList, "Schmidt levels to test (repeatable)");
  cmdState->add_option("--out", outPath, "write the JSON report here instead of stdout");

  CLI::App* cmdWitness = app.add_subcommand("witness", "evaluate Tr(C_Phi P)");
  cmdWitness->add_option("--map", mapPath, "map JSON file")->required();
  cmdWitness->add_option("--state", statePath, "state JSON file")->required();
  cmdWitness->add_option("--out", outPath, "write the JSON report here instead of stdout");

  CLI::App* cmdGallery = app.add_subcommand("gallery", "named map/state families");
  CLI::App* cmdList = cmdGallery->add_subcommand("list", "list entries");
  bool listJson = false;
  cmdList->add_flag("--json", listJson, "emit the manifest as JSON");
  CLI::App* cmdRun = cmdGallery->add_subcommand("run", "run expected-fact regressions");
  cmdRun->add_option("--id", galleryId, "entry id");
  cmdRun->add_flag("--all", allEntries, "run every enabled entry at default parameters");
  cmdRun->add_option("--param", paramKvs, "entry parameter, key=value (repeatable)");
  cmdRun->add_option("--out", outPath, "also write a JSON report here");
  CLI::App* cmdExport = cmdGallery->add_subcommand("export", "write an entry's map/state JSON");
  cmdExport->add_option("--id", galleryId, "entry id")->required();
  cmdExport->add_option("--param", paramKvs, "entry parameter, key=value (repeatable)");
  cmdExport->add_option("--out", outPath, "output file (default stdout)");
  CLI::App* cmdManifest = cmdGallery->add_subcommand("manifest", "emit gallery.json");
  cmdManifest->add_option("--out", outPath, "output file (default stdout)");

  CLI::App* cmdIterate = app.add_subcommand("iterate", "track diagnostics of map powers");
  cmdIterate->add_option("--in", inPath, "map JSON file")->required();
  cmdIterate->add_option("--kmax", kMax, "number of powers")->required();
  cmdIterate->add_option("--out", outPath, "write JSON lines here instead of stdout");

  CLI::App* cmdProbe = app.add_subcommand("probe-ipt2", "run the squared-map breaking probe");
  cmdProbe->add_option("--in", inPath, "map JSON file")->required();
  cmdProbe->add_option("--out", outPath, "write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    SolverConfig cfg = makeConfig(seed, seedSet, restarts);
    if (cmdMap->parsed()) return runClassifyMap(inPath, pList, cfg, outPath);
    if (cmdState->parsed()) return runClassifyState(inPath, fieldArg, pList, cfg, outPath);
    if (cmdWitness->parsed()) return runWitness(mapPath, statePath, outPath);
    if (cmdGallery->parsed()) {
      if (cmdList->parsed()) {
        if (listJson) {
          writeOut(outPath, gallery::manifest());
        } else {
          for (const gallery::EntryInfo& e : gallery::entries())
            std::cout << e.id << (e.enabledByDefault ? "" : "  (disabled by default)") << "\n    "
                      << e.note << "\n";
        }
        return kExitOk;
      }
      if (cmdRun->parsed()) {
        if (!allEntries && galleryId.empty())
          throw Error(ErrorCode::ParseError, "gallery run: need --id or --all");
        return runGalleryRun(galleryId, allEntries, parseParams(paramKvs), cfg, outPath);
      }
      if (cmdExport->parsed()) {
        gallery::Built built = gallery::build(galleryId, parseParams(paramKvs));
        json j = std::holds_alternative<LinearMapRep>(built)
                     ? toJson(std::get<LinearMapRep>(built))
                     : toJson(std::get<BipartiteOperator>(built));
        writeOut(outPath, j);
        return kExitOk;
      }
      if (cmdManifest->parsed()) {
        writeOut(outPath, gallery::manifest());
        return kExitOk;
      }
      throw Error(ErrorCode::ParseError, "gallery: need a subcommand (list|run|export|manifest)");
    }
    if (cmdIterate->parsed()) return runIterate(inPath, kMax, cfg, outPath);
    if (cmdProbe->parsed()) return runProbeIpt2(inPath, cfg, outPath);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exitCodeFor(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
