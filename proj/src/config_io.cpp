// Copyright 2026 The rbkit Authors
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

#include "rbkit/config_io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace rbkit {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument("config error: " + msg);
}

double need_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    fail(std::string("missing numeric field '") + key + "'");
  }
  return j[key].get<double>();
}

Superoperator embed_single_qubit(const Superoperator& one, uint32_t qubit,
                                 uint32_t qubits) {
  if (qubit >= qubits) fail("qubit index out of range");
  Superoperator out = qubit == 0 ? one : superop_identity(qubit);
  if (qubit != 0) out = tensor(out, one);
  if (qubit + 1 < qubits) out = tensor(out, superop_identity(qubits - qubit - 1));
  return out;
}

std::string csv_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Superoperator parse_channel(const json& spec, uint32_t qubits) {
  if (!spec.is_object() || !spec.contains("type")) fail("channel spec needs a 'type'");
  std::string type = spec["type"].get<std::string>();
  if (type == "depolarizing") {
    return depolarizing(need_number(spec, "f"), qubits);
  }
  if (type == "unitary") {
    if (spec.contains("rotation")) {
      const json& rot = spec["rotation"];
      std::string axis = rot.value("axis", "z");
      double theta = need_number(rot, "theta");
      uint32_t qubit = rot.value("qubit", 0u);
      Superoperator one = unitary_channel(rotation_unitary(axis.at(0), theta));
      return embed_single_qubit(one, qubit, qubits);
    }
    if (spec.contains("matrix")) {
      const json& m = spec["matrix"];
      if (!m.contains("re")) fail("unitary matrix needs 're' (and optional 'im')");
      auto re = m["re"].get<std::vector<std::vector<double>>>();
      size_t dim = re.size();
      std::vector<std::vector<double>> im(dim, std::vector<double>(dim, 0.0));
      if (m.contains("im")) im = m["im"].get<std::vector<std::vector<double>>>();
      if (dim != (1u << qubits) || im.size() != dim) {
        fail("unitary matrix must be 2^q x 2^q");
      }
      Eigen::MatrixXcd u(dim, dim);
      for (size_t i = 0; i < dim; ++i) {
        if (re[i].size() != dim || im[i].size() != dim) fail("ragged unitary matrix");
        for (size_t j = 0; j < dim; ++j) u(i, j) = {re[i][j], im[i][j]};
      }
      return unitary_channel(u);
    }
    fail("unitary channel needs 'rotation' or 'matrix'");
  }
  if (type == "pauli") {
    auto probs = spec.value("probs", std::vector<double>{});
    return pauli_channel(probs, qubits);
  }
  if (type == "amplitude_damping") {
    double gamma = need_number(spec, "gamma");
    uint32_t qubit = spec.value("qubit", 0u);
    return embed_single_qubit(amplitude_damping(gamma), qubit, qubits);
  }
  if (type == "mix") {
    if (!spec.contains("terms") || !spec["terms"].is_array()) fail("mix needs 'terms'");
    std::vector<std::pair<double, Superoperator>> terms;
    for (const json& t : spec["terms"]) {
      terms.emplace_back(need_number(t, "weight"), parse_channel(t.at("channel"), qubits));
    }
    return convex_mix(terms);
  }
  if (type == "compose") {
    if (!spec.contains("channels") || !spec["channels"].is_array() ||
        spec["channels"].empty()) {
      fail("compose needs a non-empty 'channels' array");
    }
    Superoperator acc = parse_channel(spec["channels"][0], qubits);
    for (size_t i = 1; i < spec["channels"].size(); ++i) {
      acc = compose(parse_channel(spec["channels"][i], qubits), acc);
    }
    return acc;
  }
  if (type == "tensor") {
    if (!spec.contains("factors") || !spec["factors"].is_array() ||
        spec["factors"].empty()) {
      fail("tensor needs a non-empty 'factors' array");
    }
    uint32_t total = 0;
    std::vector<Superoperator> parts;
    for (const json& f : spec["factors"]) {
      uint32_t fq = f.value("qubits", 1u);
      parts.push_back(parse_channel(f, fq));
      total += fq;
    }
    if (total != qubits) fail("tensor factors must cover all qubits");
    Superoperator acc = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) acc = tensor(acc, parts[i]);
    return acc;
  }
  fail("unknown channel type '" + type + "'");
}

RBConfig parse_rb_config(const json& doc) {
  RBConfig cfg;
  if (!doc.contains("qubits")) fail("config needs 'qubits'");
  cfg.qubits = doc["qubits"].get<uint32_t>();
  if (cfg.qubits < 1 || cfg.qubits > 10) fail("qubits must be in [1, 10]");
  if (!doc.contains("m_list") || !doc["m_list"].is_array() || doc["m_list"].empty()) {
    fail("config needs a non-empty 'm_list'");
  }
  cfg.m_list = doc["m_list"].get<std::vector<long long>>();
  cfg.n_sequences = doc.value("sequences", 100);
  cfg.seed = doc.value("seed", 1ull);
  cfg.shots = doc.value("shots", 0ll);
  cfg.threads = doc.value("threads", 0);

  if (!doc.contains("noise")) fail("config needs 'noise'");
  const json& noise = doc["noise"];
  if (noise.contains("left") || noise.contains("right")) {
    if (!noise.contains("left") || !noise.contains("right")) {
      fail("two-sided noise needs both 'left' and 'right'");
    }
    cfg.noise = GateNoise::sandwich(parse_channel(noise["left"], cfg.qubits),
                                    parse_channel(noise["right"], cfg.qubits));
  } else {
    cfg.noise = GateNoise::uniform(parse_channel(noise, cfg.qubits));
  }

  json spam = doc.value("spam", json::object());
  std::string target = spam.value("target_pauli", std::string(cfg.qubits, 'Z'));
  cfg.target = pauli_from_string(target);
  if (cfg.target.qubits != cfg.qubits) fail("target_pauli length must equal qubits");

  auto parse_state = [&](const json& s) -> StateVec {
    StateVec ideal = ideal_nu(cfg.target);
    if (s.is_null() || (s.is_object() && s.value("ideal", false)) || s.empty()) {
      return ideal;
    }
    if (s.contains("perturb")) {
      Superoperator c = parse_channel(s["perturb"], cfg.qubits);
      return apply(c, ideal);
    }
    if (s.contains("coeffs")) {
      auto v = s["coeffs"].get<std::vector<double>>();
      if (v.size() != static_cast<size_t>(1 << (2 * cfg.qubits))) {
        fail("nu coeffs must have 4^q entries");
      }
      StateVec out;
      out.qubits = cfg.qubits;
      out.coeffs = Eigen::Map<Eigen::VectorXd>(v.data(), v.size());
      return out;
    }
    fail("nu spec must be ideal, a perturbation, or explicit coeffs");
  };
  auto parse_effect = [&](const json& s) -> EffectVec {
    EffectVec ideal = ideal_effect(cfg.target);
    if (s.is_null() || (s.is_object() && s.value("ideal", false)) || s.empty()) {
      return ideal;
    }
    if (s.contains("perturb")) {
      Superoperator c = parse_channel(s["perturb"], cfg.qubits);
      return apply_adjoint(c, ideal);
    }
    if (s.contains("coeffs")) {
      auto v = s["coeffs"].get<std::vector<double>>();
      if (v.size() != static_cast<size_t>(1 << (2 * cfg.qubits))) {
        fail("Q coeffs must have 4^q entries");
      }
      EffectVec out;
      out.qubits = cfg.qubits;
      out.coeffs = Eigen::Map<Eigen::VectorXd>(v.data(), v.size());
      return out;
    }
    fail("Q spec must be ideal, a perturbation, or explicit coeffs");
  };
  cfg.nu = parse_state(spam.value("nu", json()));
  cfg.effect = parse_effect(spam.value("Q", json()));
  return cfg;
}

json dataset_to_json(const DecayDataset& ds) {
  json out;
  out["qubits"] = ds.qubits;
  out["seed"] = ds.seed;
  out["shots"] = ds.shots;
  out["points"] = json::array();
  for (const auto& p : ds.points) {
    json row;
    row["m"] = p.m;
    row["K_mN"] = p.mean;
    row["sample_variance"] = p.sample_variance;
    row["N"] = p.n_sequences;
    out["points"].push_back(row);
  }
  return out;
}

std::string dataset_to_csv(const DecayDataset& ds) {
  std::ostringstream os;
  os << "m,K_mN,sample_variance,N\n";
  for (const auto& p : ds.points) {
    os << p.m << ',' << csv_double(p.mean) << ',' << csv_double(p.sample_variance)
       << ',' << p.n_sequences << '\n';
  }
  return os.str();
}

std::vector<DecayPoint> dataset_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::vector<DecayPoint> points;
  bool header = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("m,", 0) == 0) continue;  // skip column header
    }
    DecayPoint p;
    std::istringstream row(line);
    std::string cell;
    if (!std::getline(row, cell, ',')) fail("bad dataset row");
    p.m = std::stoll(cell);
    if (!std::getline(row, cell, ',')) fail("bad dataset row");
    p.mean = std::stod(cell);
    if (!std::getline(row, cell, ',')) fail("bad dataset row");
    p.sample_variance = std::stod(cell);
    if (!std::getline(row, cell, ',')) fail("bad dataset row");
    p.n_sequences = std::stoi(cell);
    points.push_back(p);
  }
  if (points.empty()) fail("dataset contains no rows");
  return points;
}

json make_manifest(const std::string& command, const json& config, uint64_t seed,
                   const std::vector<std::string>& outputs) {
  json m;
  m["tool"] = "rb";
  m["version"] = kVersion;
  m["command"] = command;
  m["config"] = config;
  m["seed"] = seed;
  auto now = std::chrono::system_clock::now();
  m["timestamp_unix"] =
      std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  m["outputs"] = outputs;
  return m;
}

}  // namespace rbkit
