/**
 * Copyright 2026 The thermsub Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "thermsub/io.hpp"

#include "thermsub/errors.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <ostream>

namespace thermsub {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

nlohmann::ordered_json RunManifest::to_json(bool with_timestamp) const {
  nlohmann::ordered_json j;
  j["command"] = command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [key, value] : parameters) params[key] = value;
  j["parameters"] = params;
  j["seed"] = seed ? nlohmann::ordered_json(*seed) : nlohmann::ordered_json(nullptr);
  j["tool_version"] = tool_version;
  if (with_timestamp) j["timestamp"] = timestamp;
  return j;
}

std::vector<std::string> RunManifest::comment_lines() const {
  std::vector<std::string> lines;
  lines.push_back("# command: " + command);
  lines.push_back("# tool_version: " + tool_version);
  lines.push_back("# schema_version: " + std::to_string(kSchemaVersion));
  lines.push_back("# seed: " + (seed ? std::to_string(*seed) : std::string("none")));
  for (const auto& [key, value] : parameters) lines.push_back("# param " + key + "=" + value);
  return lines;
}

std::string iso8601_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::ordered_json to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["M"] = c.M;
  j["k"] = c.k;
  j["mu0"] = c.mu0;
  j["r"] = c.r;
  j["groups"] = c.groups;
  j["mode"] = to_string(c.mode);
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  return j;
}

nlohmann::ordered_json to_json(const ConditionalSampleSet& set) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = to_json(set.config);
  j["accepted"] = set.accepted;
  j["generated"] = set.generated;
  j["acceptance_rate"] = set.acceptance_rate;
  j["empty"] = set.empty();
  j["quadratures"] = set.quadratures;
  return j;
}

nlohmann::ordered_json to_json(const FitResult& fit) {
  nlohmann::ordered_json j;
  j["mu0_hat"] = fit.mu0_hat;
  j["std_error"] = std::isfinite(fit.std_error) ? nlohmann::ordered_json(fit.std_error)
                                                 : nlohmann::ordered_json(nullptr);
  j["log_likelihood"] = fit.log_likelihood;
  j["n_samples"] = fit.n_samples;
  j["converged"] = fit.converged;
  return j;
}

nlohmann::ordered_json to_json(const Chi2Result& chi2) {
  nlohmann::ordered_json j;
  j["statistic"] = chi2.statistic;
  j["dof"] = chi2.dof;
  j["p_value"] = chi2.p_value;
  j["bins"] = chi2.bins;
  return j;
}

void write_samples_csv(std::ostream& out, const ConditionalSampleSet& set,
                       const RunManifest& manifest) {
  for (const auto& line : manifest.comment_lines()) out << line << '\n';
  const auto& c = set.config;
  out << "# config M=" << c.M << ",k=" << c.k << ",mu0=" << format_double(c.mu0)
      << ",r=" << format_double(c.r) << ",groups=" << c.groups << ",mode=" << to_string(c.mode)
      << ",seed=" << c.seed << ",workers=" << c.workers << '\n';
  out << "# accepted=" << set.accepted << ",generated=" << set.generated
      << ",acceptance_rate=" << format_double(set.acceptance_rate)
      << ",empty=" << (set.empty() ? "true" : "false") << '\n';
  out << "x\n";
  for (double x : set.quadratures) out << format_double(x) << '\n';
}

std::vector<double> read_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open sample file '" + path + "'");
  std::vector<double> values;
  std::string line;
  bool header_allowed = true;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const std::string field = line.substr(0, line.find(','));
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
      if (header_allowed) {
        header_allowed = false;
        continue;
      }
      throw DataError("bad number on line " + std::to_string(line_no) + " of '" + path + "'");
    }
    header_allowed = false;
    values.push_back(v);
  }
  return values;
}

} // namespace thermsub
