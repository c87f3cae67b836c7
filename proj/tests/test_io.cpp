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

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace thermsub;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("thermsub_io_" + name)).string();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

} // namespace

TEST_CASE("doubles print shortest and round-trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5e-300) == "-2.5e-300");
  std::mt19937_64 eng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 2000; ++i) {
    const double v = u(eng) * std::pow(10.0, (i % 40) - 20);
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("manifest") {
  RunManifest m;
  m.command = "simulate";
  m.parameters = {{"M", "2"}, {"k", "1"}};
  m.seed = 7;
  m.timestamp = "2026-01-01T00:00:00Z";
  const auto j = m.to_json(false);
  CHECK_FALSE(j.contains("timestamp"));
  CHECK(m.to_json(true)["timestamp"] == "2026-01-01T00:00:00Z");
  CHECK(j["parameters"].begin().key() == "M");
  CHECK(j["seed"] == 7);
  const auto lines = m.comment_lines();
  CHECK(lines.front() == "# command: simulate");
  CHECK(lines.back() == "# param k=1");
  const auto now = iso8601_now();
  CHECK(now.size() == 20);
  CHECK(now.back() == 'Z');
}

TEST_CASE("sample CSV round trip is exact") {
  ExperimentConfig c;
  c.M = 2;
  c.k = 2;
  c.mu0 = 0.6;
  c.groups = 500;
  c.seed = 3;
  const auto set = simulate_conditional(c);
  RunManifest m;
  m.command = "simulate";
  m.seed = 3;
  std::ostringstream a, b;
  write_samples_csv(a, set, m);
  write_samples_csv(b, set, m);
  CHECK(a.str() == b.str());
  CHECK(a.str().find('\r') == std::string::npos);
  const auto path = temp_path("roundtrip.csv");
  write_file(path, a.str());
  CHECK(read_samples_csv(path) == set.quadratures);
  std::remove(path.c_str());

  const auto j = to_json(set);
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["config"]["mode"] == "idealized_intensity_weight");
  CHECK(j["quadratures"].size() == set.accepted);
}

TEST_CASE("reader tolerates headers, comments, CRLF and extra columns") {
  const auto path = temp_path("loose.csv");
  write_file(path, "# hi\r\nvalue,weight\r\n1.5,2\r\n\r\n-0.25\r\n");
  CHECK(read_samples_csv(path) == std::vector<double>{1.5, -0.25});
  write_file(path, "x\n1\nbogus\n");
  CHECK_THROWS_AS(read_samples_csv(path), DataError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_samples_csv(temp_path("missing.csv")), IoError);
}

TEST_CASE("result JSON") {
  FitResult f;
  f.mu0_hat = 0.6;
  f.std_error = NAN;
  f.n_samples = 100;
  const auto j = to_json(f);
  CHECK(j["std_error"].is_null());
  CHECK(j["converged"] == false);
  Chi2Result c{12.5, 9, 0.19, 10};
  CHECK(to_json(c)["dof"] == 9);
}
