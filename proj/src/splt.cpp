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
#include "teamform/splt.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "teamform/objective.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace teamform {

std::vector<std::size_t> balanced_sizes(std::size_t n_prime, std::size_t K) {
  if (K == 0) throw InputError("critical mass must be at least 1");
  if (n_prime == 0) return {};
  const std::size_t x = (n_prime + K - 1) / K;
  std::vector<std::size_t> sizes(x, K);
  sizes.back() = n_prime - K * (x - 1);
  return sizes;
}

namespace {

std::size_t total_size(const CenterSet& cs) {
  return std::accumulate(cs.sizes.begin(), cs.sizes.end(), std::size_t{0});
}

double placement_cost(const CenterSet& cs, std::size_t n_prime, std::size_t slot, WorkerId v,
                      const DistanceMatrix& d, StarWeighting weighting) {
  if (weighting == StarWeighting::own_center) {
    return static_cast<double>(n_prime - cs.sizes[slot]) * d(cs.centers[slot], v);
  }
  double c = 0.0;
  for (std::size_t i = 0; i < cs.centers.size(); ++i) {
    if (i != slot) c += static_cast<double>(cs.sizes[i]) * d(cs.centers[i], v);
  }
  return c;
}

double center_pair_term(const CenterSet& cs, const DistanceMatrix& d) {
  double c = 0.0;
  for (std::size_t i = 0; i < cs.centers.size(); ++i)
    for (std::size_t j = i + 1; j < cs.centers.size(); ++j)
      c += static_cast<double>(cs.sizes[i] * cs.sizes[j]) * d(cs.centers[i], cs.centers[j]);
  return c;
}

}  // namespace

double star_cost(const CenterSet& cs, std::span<const Group> partition, const DistanceMatrix& d,
                 StarWeighting weighting) {
  if (cs.centers.size() != cs.sizes.size() || partition.size() != cs.centers.size()) {
    throw InputError("center set and partition disagree on subgroup count");
  }
  const std::size_t n_prime = total_size(cs);
  double cost = 0.0;
  for (std::size_t j = 0; j < partition.size(); ++j) {
    const auto& g = partition[j];
    if (g.size() != cs.sizes[j] || std::ranges::find(g, cs.centers[j]) == g.end()) {
      throw InputError("subgroup " + std::to_string(j) + " does not match its center or size");
    }
    for (WorkerId v : g) {
      if (v != cs.centers[j]) cost += placement_cost(cs, n_prime, j, v, d, weighting);
    }
  }
  return cost + center_pair_term(cs, d);
}

TransportationInstance build_transportation(const CenterSet& cs,
                                            std::span<const WorkerId> non_centers,
                                            const DistanceMatrix& d, StarWeighting weighting) {
  for (WorkerId v : non_centers) {
    if (std::ranges::find(cs.centers, v) != cs.centers.end())
      throw InputError("worker " + std::to_string(v) + " is both center and non-center");
  }
  const std::size_t n_prime = total_size(cs);
  TransportationInstance inst;
  inst.rows = non_centers.size();
  inst.cols = cs.centers.size();
  inst.costs.resize(inst.rows * inst.cols);
  for (std::size_t r = 0; r < inst.rows; ++r)
    for (std::size_t c = 0; c < inst.cols; ++c)
      inst.costs[r * inst.cols + c] = placement_cost(cs, n_prime, c, non_centers[r], d, weighting);
  inst.capacities.reserve(inst.cols);
  for (std::size_t k : cs.sizes) {
    if (k == 0) throw InputError("subgroup size must be positive");
    inst.capacities.push_back(k - 1);
  }
  return inst;
}

std::vector<std::size_t> solve_transportation(const TransportationInstance& inst) {
  const std::size_t rows = inst.rows, cols = inst.cols;
  if (std::accumulate(inst.capacities.begin(), inst.capacities.end(), std::size_t{0}) != rows) {
    throw InputError("transportation capacities do not sum to the row count");
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr double kEps = 1e-12;
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::vector<std::size_t> assign(rows, kNone);
  std::vector<std::size_t> load(cols, 0);
  std::vector<std::vector<std::size_t>> members(cols);

  // move[a][b]: cheapest reassignment of some row from column a to column b.
  std::vector<double> move_cost(cols * cols);
  std::vector<std::size_t> move_row(cols * cols);
  std::vector<double> dist(cols);
  std::vector<std::size_t> pred_col(cols), pred_row(cols);

  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t a = 0; a < cols; ++a) {
      for (std::size_t b = 0; b < cols; ++b) {
        double best = kInf;
        std::size_t arg = kNone;
        if (a != b) {
          for (std::size_t i : members[a]) {
            const double c = inst.cost(i, b) - inst.cost(i, a);
            if (c < best) {
              best = c;
              arg = i;
            }
          }
        }
        move_cost[a * cols + b] = best;
        move_row[a * cols + b] = arg;
      }
    }
    for (std::size_t c = 0; c < cols; ++c) {
      dist[c] = inst.cost(r, c);
      pred_col[c] = kNone;
    }
    // Bellman-Ford over columns; the residual graph has no negative cycles.
    for (std::size_t round = 1; round < cols; ++round) {
      bool changed = false;
      for (std::size_t a = 0; a < cols; ++a) {
        for (std::size_t b = 0; b < cols; ++b) {
          const double w = move_cost[a * cols + b];
          if (w == kInf) continue;
          if (dist[a] + w < dist[b] - kEps) {
            dist[b] = dist[a] + w;
            pred_col[b] = a;
            pred_row[b] = move_row[a * cols + b];
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    std::size_t target = kNone;
    for (std::size_t c = 0; c < cols; ++c) {
      if (load[c] < inst.capacities[c] && (target == kNone || dist[c] < dist[target] - kEps))
        target = c;
    }
    ++load[target];
    std::size_t at = target;
    while (pred_col[at] != kNone) {
      const std::size_t from = pred_col[at];
      const std::size_t row = pred_row[at];
      std::erase(members[from], row);
      members[at].push_back(row);
      assign[row] = at;
      at = from;
    }
    members[at].push_back(r);
    assign[r] = at;
  }
  return assign;
}

double assignment_cost(const TransportationInstance& inst, std::span<const std::size_t> assignment) {
  double c = 0.0;
  for (std::size_t r = 0; r < assignment.size(); ++r) c += inst.cost(r, assignment[r]);
  return c;
}

namespace {

constexpr std::size_t kSaturated = std::numeric_limits<std::size_t>::max();

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t num = n - k + i;
    if (r > kSaturated / num) return kSaturated;
    r = r * num / i;
  }
  return r;
}

std::size_t arrangements(const std::vector<std::size_t>& sizes) {
  std::vector<std::size_t> s = sizes;
  std::size_t count = 0;
  do {
    ++count;
  } while (std::prev_permutation(s.begin(), s.end()));
  return count;
}

// Lexicographic rank -> combination of x indices out of n.
std::vector<std::size_t> unrank_combination(std::size_t n, std::size_t x, std::size_t rank) {
  std::vector<std::size_t> out;
  out.reserve(x);
  std::size_t start = 0;
  for (std::size_t slot = 0; slot < x; ++slot) {
    for (std::size_t v = start;; ++v) {
      const std::size_t below = binomial(n - v - 1, x - slot - 1);
      if (rank < below) {
        out.push_back(v);
        start = v + 1;
        break;
      }
      rank -= below;
    }
  }
  return out;
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t x = c.size();
  for (std::size_t i = x; i-- > 0;) {
    if (c[i] < n - x + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < x; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  std::size_t index = kSaturated;
  std::vector<Group> subgroups;

  bool beats(double v, std::size_t i) const { return v < value || (v == value && i < index); }
};

// Solves one center arrangement and scores the resulting partition.
std::vector<Group> partition_for(std::span<const WorkerId> group,
                                 const std::vector<std::size_t>& combo,
                                 const std::vector<std::size_t>& slot_sizes,
                                 const DistanceMatrix& d, StarWeighting weighting) {
  CenterSet cs;
  for (std::size_t idx : combo) cs.centers.push_back(group[idx]);
  cs.sizes = slot_sizes;
  std::vector<WorkerId> rest;
  rest.reserve(group.size() - combo.size());
  for (std::size_t p = 0, c = 0; p < group.size(); ++p) {
    if (c < combo.size() && combo[c] == p) {
      ++c;
      continue;
    }
    rest.push_back(group[p]);
  }
  const auto inst = build_transportation(cs, rest, d, weighting);
  const auto assign = solve_transportation(inst);
  std::vector<Group> parts(cs.centers.size());
  for (std::size_t j = 0; j < parts.size(); ++j) parts[j].push_back(cs.centers[j]);
  for (std::size_t r = 0; r < rest.size(); ++r) parts[assign[r]].push_back(rest[r]);
  for (auto& p : parts) normalize(p);
  return parts;
}

void scan_combinations(std::span<const WorkerId> group, std::size_t x, std::size_t first,
                       std::size_t last, const std::vector<std::size_t>& sizes,
                       std::size_t per_combo, const DistanceMatrix& d, StarWeighting weighting,
                       Candidate& best) {
  if (first >= last) return;
  auto combo = unrank_combination(group.size(), x, first);
  for (std::size_t rank = first; rank < last; ++rank) {
    std::vector<std::size_t> slot_sizes = sizes;
    std::size_t arr = 0;
    do {
      const std::size_t index = rank * per_combo + arr++;
      auto parts = partition_for(group, combo, slot_sizes, d, weighting);
      const double v = partition_inter(parts, d, Aggregation::Sum);
      if (best.beats(v, index)) best = Candidate{v, index, std::move(parts)};
    } while (std::prev_permutation(slot_sizes.begin(), slot_sizes.end()));
    if (!next_combination(combo, group.size())) break;
  }
}

}  // namespace

std::size_t min_star_center_sets(std::size_t n_prime, std::size_t K) {
  const auto sizes = balanced_sizes(n_prime, K);
  if (sizes.size() <= 1) return sizes.size();
  const std::size_t combos = binomial(n_prime, sizes.size());
  const std::size_t per = arrangements(sizes);
  if (combos == kSaturated || combos > kSaturated / per) return kSaturated;
  return combos * per;
}

PartitionResult min_star_partition(std::span<const WorkerId> group_in, std::size_t K,
                                   const DistanceMatrix& d, const MinStarOptions& options) {
  Group group(group_in.begin(), group_in.end());
  normalize(group);
  PartitionResult result;
  if (group.empty()) return result;
  const auto sizes = balanced_sizes(group.size(), K);
  if (sizes.size() == 1) {
    result.subgroups = {group};
    result.center_sets = 1;
    return result;
  }
  const std::size_t total = min_star_center_sets(group.size(), K);
  if (total > options.center_set_limit) {
    result = greedy_partition(group, K, d);
    result.fell_back = true;
    return result;
  }

  const std::size_t x = sizes.size();
  const std::size_t combos = binomial(group.size(), x);
  const std::size_t per_combo = arrangements(sizes);
  Candidate best;

  if (options.exec == Exec::serial) {
    scan_combinations(group, x, 0, combos, sizes, per_combo, d, options.weighting, best);
  } else {
    // Contiguous rank ranges per chunk; merged by (value, enumeration index)
    // so the winner equals the serial scan's.
    const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(combos, 64));
    std::vector<Candidate> local(chunks);
    const auto count = static_cast<std::ptrdiff_t>(chunks);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t c = 0; c < count; ++c) {
      const std::size_t first = combos * static_cast<std::size_t>(c) / chunks;
      const std::size_t last = combos * (static_cast<std::size_t>(c) + 1) / chunks;
      scan_combinations(group, x, first, last, sizes, per_combo, d, options.weighting, local[c]);
    }
    for (auto& cand : local) {
      if (best.beats(cand.value, cand.index)) best = std::move(cand);
    }
  }
  result.subgroups = std::move(best.subgroups);
  result.value = best.value;
  result.center_sets = total;
  return result;
}

PartitionResult greedy_partition(std::span<const WorkerId> group_in, std::size_t K,
                                 const DistanceMatrix& d,
                                 std::optional<std::vector<WorkerId>> order) {
  Group group(group_in.begin(), group_in.end());
  normalize(group);
  PartitionResult result;
  if (group.empty()) return result;
  const auto sizes = balanced_sizes(group.size(), K);
  std::vector<WorkerId> seq = order ? *order : group;
  {
    auto sorted = seq;
    normalize(sorted);
    if (sorted != group) throw InputError("greedy order must be a permutation of the group");
  }
  std::vector<Group> parts(sizes.size());
  for (WorkerId w : seq) {
    std::size_t pick = parts.size();
    double pick_cost = 0.0;
    for (std::size_t j = 0; j < parts.size(); ++j) {
      if (parts[j].size() >= sizes[j]) continue;
      double c = 0.0;
      for (WorkerId v : parts[j]) c += d(w, v);
      if (pick == parts.size() || c < pick_cost) {
        pick = j;
        pick_cost = c;
      }
    }
    parts[pick].push_back(w);
  }
  for (auto& p : parts) normalize(p);
  result.value = partition_inter(parts, d, Aggregation::Sum);
  result.subgroups = std::move(parts);
  return result;
}

namespace {

class PartitionSearch {
 public:
  PartitionSearch(std::span<const WorkerId> group, std::size_t K, const DistanceMatrix& d,
                  Aggregation mode, bool balanced_only)
      : group_(group), K_(K), d_(d), mode_(mode), balanced_(balanced_only) {
    if (balanced_) {
      target_ = balanced_sizes(group.size(), K);
      std::ranges::sort(target_);
    }
    label_.assign(group.size(), 0);
  }

  std::optional<std::vector<std::size_t>> run() {
    if (group_.empty()) return std::vector<std::size_t>{};
    sizes_.push_back(1);
    label_[0] = 0;
    recurse(1, 0.0);
    return best_labels_;
  }

 private:
  double add_cost(std::size_t pos, std::size_t part, double current) const {
    double acc = current;
    for (std::size_t q = 0; q < pos; ++q) {
      if (label_[q] == part) continue;
      const double v = d_(group_[pos], group_[q]);
      acc = mode_ == Aggregation::Dia ? std::max(acc, v) : acc + v;
    }
    return acc;
  }

  void recurse(std::size_t pos, double value) {
    if (best_labels_ && value >= best_value_) return;
    if (pos == group_.size()) {
      if (balanced_) {
        auto s = sizes_;
        std::ranges::sort(s);
        if (s != target_) return;
      }
      best_value_ = value;
      best_labels_ = label_;
      return;
    }
    const std::size_t parts = sizes_.size();
    for (std::size_t p = 0; p <= parts; ++p) {
      if (p == parts) {
        if (balanced_ && parts >= target_.size()) break;
        sizes_.push_back(0);
      } else if (sizes_[p] >= K_) {
        continue;
      }
      label_[pos] = p;
      ++sizes_[p];
      recurse(pos + 1, add_cost(pos, p, value));
      --sizes_[p];
      if (p == parts) sizes_.pop_back();
    }
  }

  std::span<const WorkerId> group_;
  std::size_t K_;
  const DistanceMatrix& d_;
  Aggregation mode_;
  bool balanced_;
  std::vector<std::size_t> target_;
  std::vector<std::size_t> label_;
  std::vector<std::size_t> sizes_;
  double best_value_ = std::numeric_limits<double>::infinity();
  std::optional<std::vector<std::size_t>> best_labels_;
};

}  // namespace

PartitionResult best_partition(std::span<const WorkerId> group_in, std::size_t K,
                               const DistanceMatrix& d, Aggregation mode, bool balanced_only) {
  if (K == 0) throw InputError("critical mass must be at least 1");
  Group group(group_in.begin(), group_in.end());
  normalize(group);
  PartitionSearch search(group, K, d, mode, balanced_only);
  const auto labels = search.run();
  PartitionResult result;
  if (!labels || group.empty()) return result;
  const std::size_t parts = labels->empty() ? 0 : *std::ranges::max_element(*labels) + 1;
  result.subgroups.assign(parts, {});
  for (std::size_t p = 0; p < group.size(); ++p) result.subgroups[(*labels)[p]].push_back(group[p]);
  result.value = partition_inter(result.subgroups, d, mode);
  return result;
}

PartitionResult brute_force_partition(std::span<const WorkerId> group, std::size_t K,
                                      const DistanceMatrix& d, bool balanced_only) {
  if (group.size() > kBruteForceLimit) {
    throw GuardExceeded("brute-force partition refuses groups above " +
                        std::to_string(kBruteForceLimit) + " workers");
  }
  return best_partition(group, K, d, Aggregation::Sum, balanced_only);
}

}  // namespace teamform
