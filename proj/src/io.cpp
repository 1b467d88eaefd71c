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

#include "qcool/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

namespace qcool {

namespace {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << body;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  if (traj.times.size() != traj.ground_pop.size()) {
    throw std::invalid_argument("trajectory arrays disagree in length");
  }
  std::string body = "t,pg,one_minus_pg\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    body += fmt_double(traj.times[i]);
    body += ',';
    body += fmt_double(traj.ground_pop[i]);
    body += ',';
    body += fmt_double(1.0 - traj.ground_pop[i]);
    body += '\n';
  }
  write_text(path, body);
}

nlohmann::json protocol_to_json(const ControlProtocol& protocol) {
  nlohmann::json j;
  j["horizon"] = protocol.horizon;
  j["constraint_g"] = protocol.constraint_g;
  j["segments"] = nlohmann::json::array();
  for (const auto& seg : protocol.segments) {
    const int d = static_cast<int>(seg.hamiltonian.rows());
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (int p = 0; p < d; ++p) {
      nlohmann::json re_row = nlohmann::json::array();
      nlohmann::json im_row = nlohmann::json::array();
      for (int q = 0; q < d; ++q) {
        re_row.push_back(seg.hamiltonian(p, q).real());
        im_row.push_back(seg.hamiltonian(p, q).imag());
      }
      re.push_back(std::move(re_row));
      im.push_back(std::move(im_row));
    }
    j["segments"].push_back({{"duration", seg.duration},
                             {"hamiltonian",
                              {{"dim", d}, {"re", std::move(re)},
                               {"im", std::move(im)}}}});
  }
  return j;
}

ControlProtocol protocol_from_json(const nlohmann::json& j) {
  ControlProtocol p;
  p.horizon = j.at("horizon").get<double>();
  p.constraint_g = j.at("constraint_g").get<double>();
  for (const auto& js : j.at("segments")) {
    ProtocolSegment seg;
    seg.duration = js.at("duration").get<double>();
    const auto& jh = js.at("hamiltonian");
    const int d = jh.at("dim").get<int>();
    const auto& re = jh.at("re");
    const auto& im = jh.at("im");
    if (static_cast<int>(re.size()) != d || static_cast<int>(im.size()) != d) {
      throw std::invalid_argument("hamiltonian row count != dim");
    }
    seg.hamiltonian.resize(d, d);
    for (int pp = 0; pp < d; ++pp) {
      const auto& re_row = re.at(pp);
      const auto& im_row = im.at(pp);
      if (static_cast<int>(re_row.size()) != d ||
          static_cast<int>(im_row.size()) != d) {
        throw std::invalid_argument("hamiltonian column count != dim");
      }
      for (int q = 0; q < d; ++q) {
        seg.hamiltonian(pp, q) =
            Complex(re_row.at(q).get<double>(), im_row.at(q).get<double>());
      }
    }
    p.segments.push_back(std::move(seg));
  }
  return p;
}

void write_protocol(const std::string& path, const ControlProtocol& protocol) {
  write_text(path, protocol_to_json(protocol).dump(2) + "\n");
}

ControlProtocol read_protocol(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open protocol file: " + path);
  nlohmann::json j;
  in >> j;
  return protocol_from_json(j);
}

void RunManifest::add(const std::string& path, const std::string& kind,
                      std::string label, nlohmann::json params) {
  if (label.empty()) {
    label = "curve_" + std::to_string(files_.size());
  }
  files_.push_back({{"path", path},
                    {"kind", kind},
                    {"label", std::move(label)},
                    {"params", std::move(params)}});
}

nlohmann::json RunManifest::to_json() const {
  return nlohmann::json{{"files", files_}};
}

void RunManifest::write(const std::string& path) const {
  write_text(path, to_json().dump(2) + "\n");
}

}  // namespace qcool
