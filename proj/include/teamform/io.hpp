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
#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "teamform/model.hpp"

namespace teamform {

/// Parses {"domains", "workers":[{"skills","wage"}], "task":{"thresholds",
/// "budget","critical_mass"}, "distances"}. Throws InputError on any shape or
/// type problem; invariant violations are left to validate_instance().
Instance parse_instance(const nlohmann::json& doc);
Instance load_instance(const std::filesystem::path& path);

nlohmann::ordered_json instance_to_json(const Instance& instance);

/// Stable key order: algorithm, feasible, group, subgroups, objective,
/// feasibility, wall_ms, notes.
nlohmann::ordered_json report_to_json(const SolveReport& report);

}  // namespace teamform
