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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "teamform/model.hpp"
#include "teamform/pipeline.hpp"

namespace teamform::cli {

enum class Subcommand { solve, partition, simulate, check_metric, emit_ilp, gen };

enum class PartitionMethod { min_star, greedy, balanced, unrestricted };

struct Command {
  Subcommand sub = Subcommand::solve;
  std::string input;   // instance file, or the config file for simulate
  std::string output;  // empty means standard output

  Algorithm algorithm = Algorithm::grp_split;
  std::string sim_algorithm = "grp-split";
  ObjectiveSpec spec;
  std::size_t k_buckets = 15;
  std::optional<std::uint64_t> seed;
  std::size_t limit_centers = 1'000'000;
  bool timing = true;

  // partition
  std::optional<std::size_t> k;
  std::vector<WorkerId> group;
  PartitionMethod method = PartitionMethod::min_star;

  // check-metric
  double tol = 1e-9;

  // gen
  std::size_t workers = 10;
  std::size_t domains = 1;
  std::size_t critical_mass = 3;
  double threshold_fraction = 0.3;
  double budget_fraction = 0.5;
};

struct ParseOutcome {
  std::optional<Command> command;  // empty when parsing stopped
  int exit_code = 0;               // meaningful only when command is empty
};

/// Parses argv without the program name. Help exits 0, usage errors exit 2;
/// both write their text to out or err.
ParseOutcome parse_args(const std::vector<std::string>& args, std::ostream& out,
                        std::ostream& err);

/// 0 on success, 1 when the instance is infeasible (or not metric, for
/// check-metric), 2 on input errors.
int run_command(const Command& command, std::ostream& out, std::ostream& err);

/// parse_args followed by run_command.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace teamform::cli
