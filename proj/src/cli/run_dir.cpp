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

#include "pqc/cli/run_dir.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>

#include "pqc/error.hpp"

#ifndef PQCLAB_VERSION
#define PQCLAB_VERSION "unknown"
#endif

namespace pqc {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string toolkit_version() { return PQCLAB_VERSION; }

RunDirectory::RunDirectory(std::filesystem::path root, std::string command, std::vector<std::string> argv)
    : root_(std::move(root)) {
  std::error_code ec;
  std::filesystem::create_directories(root_, ec);
  if (ec) throw Error("cannot create run directory " + root_.string() + ": " + ec.message());
  manifest_["command"] = std::move(command);
  manifest_["argv"] = std::move(argv);
  manifest_["toolkit_version"] = toolkit_version();
  manifest_["started"] = utc_timestamp();
  manifest_["seeds"] = nlohmann::json::object();
}

void RunDirectory::track(const std::string& name) {
  if (std::find(artifacts_.begin(), artifacts_.end(), name) == artifacts_.end()) artifacts_.push_back(name);
}

void RunDirectory::write_text(const std::string& name, const std::string& text) {
  const auto path = root_ / name;
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error("cannot write " + path.string());
  track(name);
}

void RunDirectory::write_json(const std::string& name, const nlohmann::json& value) {
  write_text(name, value.dump(2) + "\n");
}

void RunDirectory::append_line(const std::string& name, const std::string& line) {
  const auto path = root_ / name;
  const bool first = std::find(artifacts_.begin(), artifacts_.end(), name) == artifacts_.end();
  std::ofstream out(path, first ? std::ios::binary | std::ios::trunc : std::ios::binary | std::ios::app);
  out << line << '\n';
  if (!out) throw Error("cannot write " + path.string());
  track(name);
}

void RunDirectory::set_config(const nlohmann::json& config) {
  manifest_["config"] = config;
  write_json("config.json", config);
}

void RunDirectory::add_seed(const std::string& name, std::uint64_t seed) { manifest_["seeds"][name] = seed; }

void RunDirectory::finish() {
  manifest_["finished"] = utc_timestamp();
  if (!summary_.is_null()) manifest_["summary"] = summary_;
  auto files = artifacts_;
  files.push_back("manifest.json");
  manifest_["artifacts"] = files;
  const auto path = root_ / "manifest.json";
  std::ofstream out(path, std::ios::binary);
  out << manifest_.dump(2) << '\n';
  if (!out) throw Error("cannot write " + path.string());
}

}  // namespace pqc
