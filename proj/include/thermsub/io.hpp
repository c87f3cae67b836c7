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

#pragma once

// File formats. CSV is comma separated with '.' decimals, LF line endings and
// '#'-prefixed comment lines carrying the run manifest. JSON documents carry
// a top-level "schema_version".

#include "thermsub/expsim.hpp"
#include "thermsub/inference.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace thermsub {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters; ///< in flag order
  std::optional<std::uint64_t> seed;
  std::string tool_version = kToolVersion;
  std::string timestamp; ///< ISO-8601 UTC

  /// Data files embed the manifest without the timestamp so that reruns are
  /// byte-identical; the timestamp lives in the sidecar manifest file.
  nlohmann::ordered_json to_json(bool with_timestamp) const;
  std::vector<std::string> comment_lines() const;
};

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string iso8601_now();

nlohmann::ordered_json to_json(const ExperimentConfig& config);
nlohmann::ordered_json to_json(const ConditionalSampleSet& set);
nlohmann::ordered_json to_json(const FitResult& fit);
nlohmann::ordered_json to_json(const Chi2Result& chi2);

/// One quadrature per line under an "x" header, config echo in comments.
void write_samples_csv(std::ostream& out, const ConditionalSampleSet& set,
                       const RunManifest& manifest);

/// Reads a sample column: '#' lines and an optional non-numeric header are
/// skipped; the first comma-separated field of each line is the value.
/// Throws IoError when the file cannot be opened, DataError on bad numbers.
std::vector<double> read_samples_csv(const std::string& path);

} // namespace thermsub
