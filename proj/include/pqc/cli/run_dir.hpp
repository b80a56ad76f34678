// Copyright 2026 The pqclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace pqc {

/// Output directory of one command invocation. Every artifact written
/// through it is listed in manifest.json, which finish() writes last.
class RunDirectory {
 public:
  RunDirectory(std::filesystem::path root, std::string command, std::vector<std::string> argv);

  const std::filesystem::path& root() const noexcept { return root_; }

  /// Pretty-printed with sorted keys and a trailing newline.
  void write_json(const std::string& name, const nlohmann::json& value);
  void write_text(const std::string& name, const std::string& text);
  /// Appends one line to `name`, creating it on first use.
  void append_line(const std::string& name, const std::string& line);

  /// Effective configuration; also written to config.json.
  void set_config(const nlohmann::json& config);
  void add_seed(const std::string& name, std::uint64_t seed);
  void set_summary(const nlohmann::json& summary) { summary_ = summary; }

  void finish();

 private:
  void track(const std::string& name);

  std::filesystem::path root_;
  nlohmann::json manifest_;
  nlohmann::json summary_;
  std::vector<std::string> artifacts_;
};

/// UTC time in ISO 8601 with second resolution.
std::string utc_timestamp();

/// Version string compiled into the toolkit.
std::string toolkit_version();

}  // namespace pqc
