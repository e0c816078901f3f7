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

// Fixtures and brute-force oracles shared by the test binaries. The oracles
// deliberately avoid the library's search code: they enumerate subsets,
// set partitions and assignments directly.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "teamform/affinity.hpp"
#include "teamform/model.hpp"
#include "teamform/splt.hpp"

namespace teamform::testing {

/// The six-worker, three-domain example; u1..u6 are ids 0..5.
inline Instance table_instance() {
  Instance inst;
  inst.workers = {
      {{0.66, 0.0, 0.0}, 0.4},  {{1.0, 0.0, 0.33}, 0.3},   {{0.53, 0.66, 0.53}, 0.7},
      {{0.0, 0.73, 0.0}, 0.8},  {{0.13, 0.66, 0.8}, 0.5},  {{0.0, 0.13, 0.93}, 0.8},
  };
  inst.task.thresholds = {1.8, 1.4, 1.66};
  inst.task.budget = 3.0;
  inst.task.critical_mass = 3;
  inst.distances = DistanceMatrix::from_rows({
      {0.0, 1.0, 0.66, 0.66, 0.85, 0.66},
      {1.0, 0.0, 0.66, 0.85, 0.66, 0.85},
      {0.66, 0.66, 0.0, 0.4, 0.66, 0.4},
      {0.66, 0.85, 0.4, 0.0, 0.4, 0.0},
      {0.85, 0.66, 0.66, 0.4, 0.0, 0.4},
      {0.66, 0.85, 0.4, 0.0, 0.4, 0.0},
  });
  return inst;
}

inline std::vector<std::vector<double>> random_points(std::mt19937_64& rng, std::size_t n,
                                                      std::size_t dim = 2) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (auto& p : pts)
    for (auto& c : p) c = u(rng);
  return pts;
}

inline DistanceMatrix random_metric(std::mt19937_64& rng, std::size_t n) {
  return euclidean_distance(random_points(rng, n), Exec::serial);
}

/// Random workers with Euclidean distances. Thresholds and budget are drawn
/// as fractions of the pool totals so that both feasible and infeasible
/// tasks turn up.
inline Instance random_instance(std::mt19937_64& rng, std::size_t n, std::size_t m,
                                std::size_t K = 3) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> wage(0.1, 1.0);
  std::uniform_real_distribution<double> frac_q(0.15, 0.6);
  std::uniform_real_distribution<double> frac_c(0.3, 0.9);
  Instance inst;
  std::vector<double> totals(m, 0.0);
  double wages = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Worker w;
    for (std::size_t j = 0; j < m; ++j) {
      // Some zero skills so that coverage is not trivial.
      const double s = u(rng) < 0.25 ? 0.0 : u(rng);
      w.skills.push_back(s);
      totals[j] += s;
    }
    w.wage = wage(rng);
    wages += w.wage;
    inst.workers.push_back(std::move(w));
  }
  for (double t : totals) inst.task.thresholds.push_back(frac_q(rng) * t);
  inst.task.budget = frac_c(rng) * wages;
  inst.task.critical_mass = K;
  inst.distances = random_metric(rng, n);
  return inst;
}

inline bool naive_feasible(const std::vector<WorkerId>& g, const Instance& inst) {
  const auto m = inst.task.thresholds.size();
  std::vector<double> skill(m, 0.0);
  double cost = 0.0;
  for (auto id : g) {
    for (std::size_t i = 0; i < m; ++i) skill[i] += inst.workers[id].skills[i];
    cost += inst.workers[id].wage;
  }
  for (std::size_t i = 0; i < m; ++i)
    if (skill[i] < inst.task.thresholds[i] - kTolerance) return false;
  return cost <= inst.task.budget + kTolerance;
}

/// Every skill/cost-feasible subset, each sorted ascending, in mask order.
inline std::vector<Group> naive_feasible_groups(const Instance& inst) {
  const std::size_t n = inst.workers.size();
  std::vector<Group> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Group g;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U) g.push_back(i);
    if (naive_feasible(g, inst)) out.push_back(std::move(g));
  }
  return out;
}

inline double naive_diameter(const Group& g, const DistanceMatrix& d) {
  double best = 0.0;
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = a + 1; b < g.size(); ++b) best = std::max(best, d(g[a], g[b]));
  return best;
}

inline double naive_sum(const Group& g, const DistanceMatrix& d) {
  double s = 0.0;
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = a + 1; b < g.size(); ++b) s += d(g[a], g[b]);
  return s;
}

/// Cross-pair sum over all pairs of parts.
inline double naive_cross_sum(const std::vector<Group>& parts, const DistanceMatrix& d) {
  double s = 0.0;
  for (std::size_t a = 0; a < parts.size(); ++a)
    for (std::size_t b = a + 1; b < parts.size(); ++b)
      for (auto u : parts[a])
        for (auto v : parts[b]) s += d(u, v);
  return s;
}

/// Visits every set partition of group with parts of size <= K.
inline void for_each_partition(const Group& group, std::size_t K,
                               const std::function<void(const std::vector<Group>&)>& visit) {
  std::vector<Group> parts;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == group.size()) {
      visit(parts);
      return;
    }
    for (std::size_t k = 0; k < parts.size(); ++k) {
      if (parts[k].size() >= K) continue;
      parts[k].push_back(group[i]);
      rec(i + 1);
      parts[k].pop_back();
    }
    parts.push_back({group[i]});
    rec(i + 1);
    parts.pop_back();
  };
  rec(0);
}

inline bool has_balanced_sizes(const std::vector<Group>& parts, std::size_t n, std::size_t K) {
  std::vector<std::size_t> sizes;
  for (const auto& p : parts) sizes.push_back(p.size());
  std::ranges::sort(sizes, std::greater<>());
  return sizes == balanced_sizes(n, K);
}

/// Minimum cross-pair sum over partitions with parts <= K (optionally balanced).
inline double naive_best_split(const Group& group, std::size_t K, const DistanceMatrix& d,
                               bool balanced_only) {
  double best = std::numeric_limits<double>::infinity();
  if (group.empty()) return 0.0;
  for_each_partition(group, K, [&](const std::vector<Group>& parts) {
    if (balanced_only && !has_balanced_sizes(parts, group.size(), K)) return;
    best = std::min(best, naive_cross_sum(parts, d));
  });
  return best;
}

/// Minimum (Dia, Sum) objective over every feasible group and every split.
inline std::optional<double> naive_exact(const Instance& inst) {
  std::optional<double> best;
  for (const auto& g : naive_feasible_groups(inst)) {
    const double intra = naive_diameter(g, inst.distances);
    if (best && intra >= *best) continue;
    const double v = intra + naive_best_split(g, inst.task.critical_mass, inst.distances, false);
    if (!best || v < *best) best = v;
  }
  return best;
}

/// Minimum assignment cost by enumerating every capacity-respecting assignment.
inline double exhaustive_assignment(const TransportationInstance& t) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> left = t.capacities;
  std::function<void(std::size_t, double)> rec = [&](std::size_t r, double acc) {
    if (acc >= best) return;
    if (r == t.rows) {
      best = acc;
      return;
    }
    for (std::size_t c = 0; c < t.cols; ++c) {
      if (left[c] == 0) continue;
      --left[c];
      rec(r + 1, acc + t.cost(r, c));
      ++left[c];
    }
  };
  rec(0, 0.0);
  return best;
}

}  // namespace teamform::testing
