#pragma once
// Run manifests: every CLI invocation records its subcommand, exact
// parameters, precision, timestamps and per-check outcomes as JSON, so
// any run can be reproduced from its manifest alone (outputs are
// timestamp-free and rerun byte-identical; only the manifest carries
// wall-clock times).

#include <kdioph/timeutil.hpp>
#include <kdioph/version.hpp>

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kdioph {

struct CheckResult {
  std::string name;
  std::string scope;  // the k value (or k range) the check covers
  bool ok = true;
};

struct RunManifest {
  std::string subcommand;
  nlohmann::json parameters = nlohmann::json::object();
  long precision_bits = 128;
  std::string started, finished;
  int exit_code = 0;
  std::vector<CheckResult> checks;
  nlohmann::json summary = nlohmann::json::object();
};

inline nlohmann::json manifest_to_json(const RunManifest& m) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& c : m.checks) {
    checks.push_back({{"name", c.name}, {"scope", c.scope}, {"ok", c.ok}});
  }
  return nlohmann::json{{"tool", "kdioph"},
                        {"version", kVersion},
                        {"subcommand", m.subcommand},
                        {"parameters", m.parameters},
                        {"precision_bits", m.precision_bits},
                        {"started", m.started},
                        {"finished", m.finished},
                        {"exit_code", m.exit_code},
                        {"checks", std::move(checks)},
                        {"summary", m.summary}};
}

inline RunManifest manifest_from_json(const nlohmann::json& j) {
  RunManifest m;
  m.subcommand = j.at("subcommand").get<std::string>();
  m.parameters = j.value("parameters", nlohmann::json::object());
  m.precision_bits = j.value("precision_bits", 128L);
  m.started = j.value("started", std::string());
  m.finished = j.value("finished", std::string());
  m.exit_code = j.value("exit_code", 0);
  for (const nlohmann::json& c : j.value("checks", nlohmann::json::array())) {
    m.checks.push_back(CheckResult{c.at("name").get<std::string>(),
                                   c.at("scope").get<std::string>(),
                                   c.at("ok").get<bool>()});
  }
  m.summary = j.value("summary", nlohmann::json::object());
  return m;
}

inline void write_manifest(const std::string& path, const RunManifest& m) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write manifest file " + path);
  }
  out << manifest_to_json(m).dump(2) << '\n';
}

inline RunManifest read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read manifest file " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("manifest " + path + " is not valid JSON: " +
                             e.what());
  }
  return manifest_from_json(j);
}

}  // namespace kdioph
