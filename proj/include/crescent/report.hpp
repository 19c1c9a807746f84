#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "crescent/classify.hpp"
#include "crescent/rigidity.hpp"
#include "crescent/solver.hpp"

namespace crescent {

using nlohmann::json;

/// Parameters that reproduce an artifact. Wall-clock time is deliberately
/// absent so reruns are byte-identical.
struct RunManifest {
  std::string command;
  int n = 0;
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;
  std::string version = CRESCENT_VERSION;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
};

json to_json(const RunManifest& m);

json label_matrix_json(const LabelBlock& m);
/// Accepts {"n", "upper"} or {"rows"}.
LabelMatrix label_matrix_from_json(const json& j);

json to_json(const ClassificationReport& r);
ClassificationReport classification_from_json(const json& j);
std::string classification_csv(const ClassificationReport& r);

json to_json(const DistanceAssignment& a);
DistanceAssignment assignment_from_json(int n, const json& j);

json to_json(const Census& c);
/// Restores realizations; margins are recomputed from the stored values.
Census census_from_json(const json& j);
std::string census_csv(const Census& c);

json to_json(const RigidityReport& r);
json to_json(const std::vector<RigidityReport>& reports);
std::string rigidity_csv(const std::vector<RigidityReport>& reports);

/// Artifact text: two-space indented JSON with a trailing newline.
std::string dump(const json& j);

/// Whole-file helpers; both throw IoError.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace crescent
