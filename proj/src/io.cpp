// Copyright 2026 The teamform Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.
#include "teamform/io.hpp"

#include <fstream>

namespace teamform {

namespace {

template <typename T>
T field(const nlohmann::json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw InputError(std::string("missing field \"") + key + "\"");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("field \"") + key + "\": " + e.what());
  }
}

}  // namespace

Instance parse_instance(const nlohmann::json& doc) {
  Instance inst;
  const auto m = field<std::size_t>(doc, "domains");
  const auto& workers = doc.contains("workers") ? doc.at("workers") : nlohmann::json();
  if (!workers.is_array()) throw InputError("\"workers\" must be an array");
  for (const auto& w : workers) {
    Worker worker;
    worker.skills = field<std::vector<double>>(w, "skills");
    worker.wage = field<double>(w, "wage");
    inst.workers.push_back(std::move(worker));
  }
  if (!doc.contains("task")) throw InputError("missing field \"task\"");
  const auto& task = doc.at("task");
  inst.task.thresholds = field<std::vector<double>>(task, "thresholds");
  inst.task.budget = field<double>(task, "budget");
  const auto k = field<long long>(task, "critical_mass");
  if (k < 1) throw InputError("critical_mass must be a positive integer");
  inst.task.critical_mass = static_cast<std::size_t>(k);
  if (inst.task.thresholds.size() != m) {
    throw InputError("task has " + std::to_string(inst.task.thresholds.size()) +
                     " thresholds but domains is " + std::to_string(m));
  }
  inst.distances = DistanceMatrix::from_rows(field<std::vector<std::vector<double>>>(doc, "distances"));
  return inst;
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return parse_instance(doc);
}

nlohmann::ordered_json instance_to_json(const Instance& inst) {
  nlohmann::ordered_json doc;
  doc["domains"] = inst.domains();
  doc["workers"] = nlohmann::ordered_json::array();
  for (const auto& w : inst.workers) {
    nlohmann::ordered_json jw;
    jw["skills"] = w.skills;
    jw["wage"] = w.wage;
    doc["workers"].push_back(std::move(jw));
  }
  doc["task"]["thresholds"] = inst.task.thresholds;
  doc["task"]["budget"] = inst.task.budget;
  doc["task"]["critical_mass"] = inst.task.critical_mass;
  doc["distances"] = inst.distances.to_rows();
  return doc;
}

nlohmann::ordered_json report_to_json(const SolveReport& r) {
  nlohmann::ordered_json j;
  j["algorithm"] = r.algorithm;
  j["feasible"] = r.assembly.has_value() && r.feasibility.skill_ok() && r.feasibility.cost;
  if (r.assembly) {
    j["group"] = r.assembly->group;
    j["subgroups"] = r.assembly->subgroups;
    j["objective"] = r.objective_value;
  }
  nlohmann::ordered_json f;
  f["skill"] = r.feasibility.skill;
  f["cost"] = r.feasibility.cost;
  f["mass"] = r.feasibility.mass;
  j["feasibility"] = std::move(f);
  j["wall_ms"] = r.wall_time.count();
  j["notes"] = r.notes;
  return j;
}

}  // namespace teamform
