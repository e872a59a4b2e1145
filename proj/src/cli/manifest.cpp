#include "rmtjac/cli/manifest.hpp"

#include <fstream>

#include "rmtjac/errors.hpp"

namespace rmtjac::cli {

nlohmann::ordered_json RunManifest::to_json(bool with_provenance) const {
  nlohmann::ordered_json j;
  j["tool"] = "rmtjac";
  j["version"] = version;
  j["command"] = command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [name, values] : parameters) {
    if (name == "threads" && !with_provenance) continue;
    if (values.size() == 1) {
      params[name] = values.front();
    } else {
      params[name] = values;
    }
  }
  j["parameters"] = params;
  j["master_seed"] = master_seed;
  if (with_provenance) j["seed_source"] = seed_source;
  j["replicas"] = replicas;
  if (with_provenance) j["threads"] = threads;
  if (with_provenance && duration_seconds) j["duration_seconds"] = *duration_seconds;
  return j;
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
  RunManifest m;
  try {
    m.command = j.at("command").get<std::string>();
    for (const auto& [name, value] : j.at("parameters").items()) {
      if (value.is_array()) {
        m.parameters[name] = value.get<std::vector<std::string>>();
      } else {
        m.parameters[name] = {value.get<std::string>()};
      }
    }
    m.master_seed = j.at("master_seed").get<std::uint64_t>();
    m.seed_source = j.value("seed_source", "");
    m.replicas = j.value("replicas", std::size_t{0});
    m.threads = j.value("threads", 1u);
    m.version = j.value("version", "");
    if (j.contains("duration_seconds")) m.duration_seconds = j["duration_seconds"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

std::vector<std::string> RunManifest::replay_arguments() const {
  std::vector<std::string> args{command};
  for (const auto& [name, values] : parameters) {
    for (const auto& v : values) {
      args.push_back("--" + name);
      args.push_back(v);
    }
  }
  return args;
}

void write_sidecar(const std::string& data_path, const RunManifest& manifest) {
  std::ofstream out(data_path + ".manifest.json", std::ios::binary);
  if (!out) throw PreconditionError("cannot write manifest next to " + data_path);
  out << manifest.to_json(true).dump(2) << '\n';
}

}  // namespace rmtjac::cli
