// Copyright 2026 The glove-weighting Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Provenance record written next to every output artifact.  `config` holds
// the fully resolved command-line options keyed by long flag name, so a run
// can be replayed from the manifest alone.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace glove {

inline constexpr const char* kToolVersion = "0.1.0";

struct InputDigest {
  std::string path;
  std::string sha256;
};

struct RunManifest {
  std::string command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::vector<InputDigest> inputs;
  std::vector<std::string> outputs;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  std::string kernels;
};

// Lowercase hex SHA-256 of the file contents.  Throws DataError.
std::string sha256_file(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const RunManifest& m);
// Throws DataError on missing or mistyped fields.
RunManifest manifest_from_json(const nlohmann::ordered_json& j);

void save_manifest(const RunManifest& m, const std::filesystem::path& path);
RunManifest load_manifest(const std::filesystem::path& path);

// `<path>.manifest.json`
std::filesystem::path manifest_path_for(const std::filesystem::path& artifact);

}  // namespace glove
