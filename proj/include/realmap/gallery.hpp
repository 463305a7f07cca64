// Constructors for the named map and state families, each paired with a
// machine-readable expected-facts table that the regression runner replays.
// Every fact names a check from the verdict/cone/breaking engines, its
// arguments, the expected outcome, and a tolerance.

#ifndef REALMAP_GALLERY_HPP
#define REALMAP_GALLERY_HPP

#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "realmap/ebreak.hpp"

namespace realmap {
namespace gallery {

using Params = std::map<std::string, double>;

enum class Kind { Map, State };

struct ParamSpec {
  std::string name;
  double defaultValue = 0;
  double minValue = 0;
  double maxValue = 0;
  bool integer = false;
};

struct EntryInfo {
  std::string id;
  Kind kind = Kind::Map;
  std::vector<ParamSpec> params;
  bool enabledByDefault = true;
  std::string note;  // what the entry is, mathematically
};

const std::vector<EntryInfo>& entries();
const EntryInfo& info(const std::string& id);  // throws UnknownId
bool exists(const std::string& id);

/// Fill unspecified parameters with their defaults; range-check the rest.
Params resolveParams(const std::string& id, const Params& given);

using Built = std::variant<LinearMapRep, BipartiteOperator>;
Built build(const std::string& id, const Params& params);

LinearMapRep buildMap(const std::string& id, const Params& params);
BipartiteOperator buildState(const std::string& id, const Params& params);

/// Exact conjugate-paired rank-limited factor lists for the entries whose
/// complex-separability certificates are known in closed form
/// (werner n=2 with s in [1/2,1], ex7-1, ex9-7, remark7-3).
std::optional<cones::SepDecomposition> knownCsepCertificate(const std::string& id, const Params& params);

/// Witness battery of maps M_n -> M_n with declared positivity levels:
/// transpose, trace-minus-q at q = 1/k, the (n-1)-positive reduction-style
/// map, and the orthogonal-conjugation family at its threshold when n is even.
std::vector<cones::WitnessEntry> standardWitnessBattery(int n);

/// p-positive probe family for composition checks (same construction).
std::vector<cones::WitnessEntry> pPositiveProbeFamily(int n);

struct ExpectedFact {
  std::string name;
  std::string check;
  nlohmann::json args;
  nlohmann::json expect;
  double tol = 0;
};

std::vector<ExpectedFact> expectedFacts(const std::string& id, const Params& params);

struct FactResult {
  std::string name;
  bool pass = false;
  std::string measured;
  std::string expected;
  std::string detail;
};

struct EntryReport {
  std::string id;
  Params params;
  std::vector<FactResult> facts;
  bool allPass = true;
};

EntryReport runEntry(const std::string& id, const Params& params, const SolverConfig& cfg);

/// The gallery.json manifest: ids, parameter schemas, notes, enabled flags.
nlohmann::json manifest();

}  // namespace gallery
}  // namespace realmap

#endif
