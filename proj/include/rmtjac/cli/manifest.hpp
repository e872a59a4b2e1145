#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace rmtjac::cli {

/// Everything needed to rerun a command: the merged flag values (command
/// line over config file over environment over defaults) plus provenance.
struct RunManifest {
  std::string command;
  std::map<std::string, std::vector<std::string>> parameters;  // flag name -> values
  std::uint64_t master_seed = 0;
  std::string seed_source;  // flag | config | env | default
  std::size_t replicas = 0;
  unsigned threads = 1;
  std::string version;
  std::optional<double> duration_seconds;

  /// Without provenance (duration, seed source, threads) the JSON depends only
  /// on what determines the output, so files embedding it stay byte-identical
  /// on rerun and across thread counts.
  nlohmann::ordered_json to_json(bool with_provenance) const;
  static RunManifest from_json(const nlohmann::json& j);

  /// Arguments that reproduce the run: {command, --flag, value, ...}.
  std::vector<std::string> replay_arguments() const;
};

/// Writes `<data_path>.manifest.json` next to a data file.
void write_sidecar(const std::string& data_path, const RunManifest& manifest);

}  // namespace rmtjac::cli
