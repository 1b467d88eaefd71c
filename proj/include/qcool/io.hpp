// Copyright 2026 The qcool Authors
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

#include <string>

#include <json.hpp>

#include "qcool/dynamics.hpp"
#include "qcool/protocol.hpp"

namespace qcool {

/// Writes "t,pg,one_minus_pg\n" followed by one row per sample, every value
/// printed with "%.17g". Deterministic byte-for-byte for equal inputs.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

/// {"horizon": ..., "constraint_g": ..., "segments": [{"duration": ...,
///  "hamiltonian": {"dim": d, "re": [[...]], "im": [[...]]}}]}
nlohmann::json protocol_to_json(const ControlProtocol& protocol);
ControlProtocol protocol_from_json(const nlohmann::json& j);

void write_protocol(const std::string& path, const ControlProtocol& protocol);
ControlProtocol read_protocol(const std::string& path);

/// Index of the produced files for one run: {"files": [{"path": ...,
/// "kind": "trajectory"|"protocol"|"summary"|"history", "label": ...,
/// "params": {...}}]}. Labels default to "curve_0", "curve_1", ... in
/// insertion order; params is caller-supplied metadata (may be empty).
class RunManifest {
 public:
  void add(const std::string& path, const std::string& kind,
           std::string label = "",
           nlohmann::json params = nlohmann::json::object());
  nlohmann::json to_json() const;
  void write(const std::string& path) const;

 private:
  nlohmann::json files_ = nlohmann::json::array();
};

}  // namespace qcool
