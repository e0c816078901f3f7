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
#include "teamform/grp.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <random>

#include "teamform/objective.hpp"

namespace teamform {

std::size_t BucketConfig::bucket_of(double wage) const {
  for (std::size_t b = 0; b < boundaries.size(); ++b) {
    if (wage <= boundaries[b] + 1e-12) return b;
  }
  throw InputError("wage " + std::to_string(wage) + " lies above every bucket boundary");
}

SearchOrder descending_wage_order(std::span<const Worker> workers,
                                  std::span<const WorkerId> candidates) {
  SearchOrder order(candidates.begin(), candidates.end());
  std::ranges::sort(order, [&](WorkerId a, WorkerId b) {
    if (workers[a].wage != workers[b].wage) return workers[a].wage > workers[b].wage;
    return a < b;
  });
  return order;
}

PathBounds path_bounds(std::span<const Worker> workers, std::size_t domains,
                       const SearchOrder& order, const std::vector<bool>& included) {
  PathBounds b;
  b.skill_upper.assign(domains, 0.0);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const auto& w = workers[order[pos]];
    const bool decided = pos < included.size();
    if (decided && !included[pos]) continue;
    if (decided) b.cost_lower += w.wage;
    for (std::size_t i = 0; i < domains; ++i) b.skill_upper[i] += w.skills[i];
  }
  return b;
}

namespace {

// One tree level: choose how many leading members to include.
struct Block {
  std::vector<WorkerId> members;
  std::vector<double> prefix_cost;                // size members+1
  std::vector<std::vector<double>> prefix_skill;  // [c][domain]
};

// Fractional-cover entry: a worker's contribution to one domain.
struct RatioEntry {
  std::size_t level;
  double skill;
  double cost;
};

class CandidateTree {
 public:
  CandidateTree(std::span<const Worker> workers, const Task& task, const SearchOrder& order,
                const BucketConfig* buckets)
      : workers_(workers), task_(task), m_(task.thresholds.size()) {
    if (buckets == nullptr) {
      for (WorkerId id : order) add_block({id}, [&](WorkerId w) { return workers_[w].wage; });
    } else {
      build_bucket_blocks(order, *buckets);
    }
    suffix_skill_.assign(blocks_.size() + 1, std::vector<double>(m_, 0.0));
    for (std::size_t l = blocks_.size(); l-- > 0;) {
      for (std::size_t i = 0; i < m_; ++i)
        suffix_skill_[l][i] = suffix_skill_[l + 1][i] + blocks_[l].prefix_skill.back()[i];
    }
    build_ratio_lists();
  }

  CandidateSearchResult all_valid() {
    CandidateSearchResult result;
    std::vector<double> skill(m_, 0.0);
    std::vector<std::size_t> counts;
    counts.reserve(blocks_.size());
    ++result.stats.nodes;
    if (!viable(0, 0.0, skill)) {
      ++result.stats.pruned;
      return result;
    }
    dfs(0, 0.0, skill, counts, result);
    return result;
  }

  CandidateSearchResult first_valid() {
    CandidateSearchResult result;
    struct Node {
      std::size_t level;
      std::size_t parent;
      std::size_t count;  // members taken from block level-1
      double cost;
      std::vector<double> skill;
    };
    struct Entry {
      double priority;
      std::size_t level;
      std::size_t seq;
      std::size_t node;
    };
    // Lowest bound first, deeper first on ties, then insertion order.
    auto worse = [](const Entry& a, const Entry& b) {
      if (a.priority != b.priority) return a.priority > b.priority;
      if (a.level != b.level) return a.level < b.level;
      return a.seq > b.seq;
    };
    std::vector<Node> arena;
    std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> frontier(worse);
    std::size_t seq = 0;

    ++result.stats.nodes;
    std::vector<double> root_skill(m_, 0.0);
    const double root_h = completion_cost(0, root_skill);
    if (!viable(0, 0.0, root_skill) || root_h > task_.budget + kTolerance) {
      ++result.stats.pruned;
      return result;
    }
    arena.push_back({0, 0, 0, 0.0, root_skill});
    frontier.push({root_h, 0, seq++, 0});

    while (!frontier.empty()) {
      const Entry top = frontier.top();
      frontier.pop();
      const std::size_t idx = top.node;
      if (covers(arena[idx].skill)) {
        Group g;
        for (std::size_t at = idx; at != 0; at = arena[at].parent) {
          const auto& block = blocks_[arena[at].level - 1];
          g.insert(g.end(), block.members.begin(),
                   block.members.begin() + static_cast<std::ptrdiff_t>(arena[at].count));
        }
        normalize(g);
        result.groups.push_back(std::move(g));
        return result;
      }
      const std::size_t level = arena[idx].level;
      if (level == blocks_.size()) {
        ++result.stats.leaves;
        continue;
      }
      const auto& block = blocks_[level];
      for (std::size_t c = block.members.size() + 1; c-- > 0;) {
        const double cost = arena[idx].cost + block.prefix_cost[c];
        std::vector<double> skill = arena[idx].skill;
        for (std::size_t i = 0; i < m_; ++i) skill[i] += block.prefix_skill[c][i];
        ++result.stats.nodes;
        if (!viable(level + 1, cost, skill)) {
          ++result.stats.pruned;
          continue;
        }
        const double bound = cost + completion_cost(level + 1, skill);
        if (bound > task_.budget + kTolerance) {
          ++result.stats.pruned;
          continue;
        }
        arena.push_back({level + 1, idx, c, cost, std::move(skill)});
        frontier.push({bound, level + 1, seq++, arena.size() - 1});
      }
    }
    return result;
  }

 private:
  template <typename CostFn>
  void add_block(std::vector<WorkerId> members, CostFn cost_of) {
    Block b;
    b.prefix_cost.assign(1, 0.0);
    b.prefix_skill.assign(1, std::vector<double>(m_, 0.0));
    for (WorkerId id : members) {
      b.prefix_cost.push_back(b.prefix_cost.back() + cost_of(id));
      auto next = b.prefix_skill.back();
      for (std::size_t i = 0; i < m_; ++i) next[i] += workers_[id].skills[i];
      b.prefix_skill.push_back(std::move(next));
    }
    b.members = std::move(members);
    blocks_.push_back(std::move(b));
  }

  void build_bucket_blocks(const SearchOrder& order, const BucketConfig& buckets) {
    std::vector<std::vector<WorkerId>> per_bucket(buckets.boundaries.size());
    for (WorkerId id : order) per_bucket[buckets.bucket_of(workers_[id].wage)].push_back(id);

    auto key = [&](WorkerId id) {
      const auto& s = workers_[id].skills;
      if (m_ == 1) return s[0];
      double k = 0.0;
      for (std::size_t i = 0; i < m_; ++i) k += s[i] / std::max(task_.thresholds[i], 1.0);
      return k;
    };
    for (std::size_t b = 0; b < per_bucket.size(); ++b) {
      auto& members = per_bucket[b];
      if (members.empty()) continue;
      std::ranges::sort(members, [&](WorkerId x, WorkerId y) {
        const double kx = key(x), ky = key(y);
        if (kx != ky) return kx > ky;
        return x < y;
      });
      const double rep = buckets.representative[b];
      add_block(std::move(members), [rep](WorkerId) { return rep; });
    }
  }

  void build_ratio_lists() {
    ratio_.assign(m_, {});
    for (std::size_t l = 0; l < blocks_.size(); ++l) {
      const auto& b = blocks_[l];
      for (std::size_t p = 0; p < b.members.size(); ++p) {
        const double cost = b.prefix_cost[p + 1] - b.prefix_cost[p];
        for (std::size_t i = 0; i < m_; ++i) {
          const double s = workers_[b.members[p]].skills[i];
          if (s > 0.0) ratio_[i].push_back({l, s, cost});
        }
      }
    }
    for (auto& list : ratio_) {
      std::ranges::stable_sort(list, [](const RatioEntry& a, const RatioEntry& b) {
        return a.skill * b.cost > b.skill * a.cost;
      });
    }
  }

  bool covers(const std::vector<double>& skill) const {
    for (std::size_t i = 0; i < m_; ++i)
      if (skill[i] < task_.thresholds[i] - kTolerance) return false;
    return true;
  }

  bool viable(std::size_t level, double cost, const std::vector<double>& skill) const {
    if (cost > task_.budget + kTolerance) return false;
    for (std::size_t i = 0; i < m_; ++i) {
      if (skill[i] + suffix_skill_[level][i] < task_.thresholds[i] - kTolerance) return false;
    }
    return true;
  }

  // Cheapest fractional way to close the largest single-domain skill gap using
  // workers from levels >= level. A lower bound on any completion's extra cost.
  double completion_cost(std::size_t level, const std::vector<double>& skill) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      double deficit = task_.thresholds[i] - skill[i];
      if (deficit <= kTolerance) continue;
      double cost = 0.0;
      bool closed = false;
      for (const auto& e : ratio_[i]) {
        if (e.level < level) continue;
        if (e.skill >= deficit) {
          cost += e.cost * (deficit / e.skill);
          closed = true;
          break;
        }
        deficit -= e.skill;
        cost += e.cost;
      }
      if (!closed && deficit > kTolerance) return std::numeric_limits<double>::infinity();
      worst = std::max(worst, cost);
    }
    return worst;
  }

  void dfs(std::size_t level, double cost, std::vector<double>& skill,
           std::vector<std::size_t>& counts, CandidateSearchResult& result) const {
    if (level == blocks_.size()) {
      ++result.stats.leaves;
      Group g;
      for (std::size_t l = 0; l < counts.size(); ++l) {
        const auto& members = blocks_[l].members;
        g.insert(g.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(counts[l]));
      }
      normalize(g);
      result.groups.push_back(std::move(g));
      return;
    }
    const auto& block = blocks_[level];
    for (std::size_t c = block.members.size() + 1; c-- > 0;) {
      ++result.stats.nodes;
      const double child_cost = cost + block.prefix_cost[c];
      for (std::size_t i = 0; i < m_; ++i) skill[i] += block.prefix_skill[c][i];
      if (viable(level + 1, child_cost, skill)) {
        counts.push_back(c);
        dfs(level + 1, child_cost, skill, counts, result);
        counts.pop_back();
      } else {
        ++result.stats.pruned;
      }
      for (std::size_t i = 0; i < m_; ++i) skill[i] -= block.prefix_skill[c][i];
    }
  }

  std::span<const Worker> workers_;
  const Task& task_;
  std::size_t m_;
  std::vector<Block> blocks_;
  std::vector<std::vector<double>> suffix_skill_;
  std::vector<std::vector<RatioEntry>> ratio_;
};

}  // namespace

CandidateSearchResult grp_candidate_search(std::span<const Worker> workers, const Task& task,
                                           SearchMode mode, const SearchOrder& order,
                                           const BucketConfig* buckets) {
  for (WorkerId id : order) {
    if (id >= workers.size()) throw InputError("search order id out of range");
    if (workers[id].skills.size() != task.thresholds.size())
      throw InputError("worker skill count does not match task domains");
  }
  CandidateTree tree(workers, task, order, buckets);
  return mode == SearchMode::all_valid ? tree.all_valid() : tree.first_valid();
}

std::optional<GroupValue> opt_grp(std::span<const Worker> workers, const Task& task,
                                  const DistanceMatrix& d, Aggregation intra_mode,
                                  const GrpOptions& options) {
  std::vector<WorkerId> all(workers.size());
  std::iota(all.begin(), all.end(), WorkerId{0});
  const auto order = descending_wage_order(workers, all);
  const auto found = grp_candidate_search(workers, task, SearchMode::all_valid, order,
                                          options.buckets ? &*options.buckets : nullptr);
  std::optional<GroupValue> best;
  for (const auto& g : found.groups) {
    const double v = intra_distance(g, d, intra_mode);
    const bool better = !best || v < best->value ||
                        (v == best->value && (g.size() < best->group.size() ||
                                              (g.size() == best->group.size() && g < best->group)));
    if (better) best = GroupValue{g, v};
  }
  return best;
}

Group star_members(const DistanceMatrix& d, WorkerId center, double alpha) {
  Group star;
  const auto row = d.row(center);
  for (std::size_t v = 0; v < d.size(); ++v) {
    if (v == center || row[v] <= alpha + kTolerance) star.push_back(v);
  }
  return star;
}

namespace {

// Star search for one center; reuses a global descending-wage order filtered
// by star membership so each center costs O(n) before the tree search.
std::optional<Group> search_star(std::span<const Worker> workers, const Task& task,
                                 const DistanceMatrix& d, double alpha, WorkerId center,
                                 const SearchOrder& global_order, const BucketConfig* buckets) {
  const auto row = d.row(center);
  SearchOrder order;
  for (WorkerId v : global_order) {
    if (v == center || row[v] <= alpha + kTolerance) order.push_back(v);
  }
  auto r = grp_candidate_search(workers, task, SearchMode::first_valid, order, buckets);
  if (r.groups.empty()) return std::nullopt;
  return std::move(r.groups.front());
}

}  // namespace

std::optional<Group> grp_dia(std::span<const Worker> workers, const Task& task,
                             const DistanceMatrix& d, double alpha, const GrpOptions& options) {
  const std::size_t n = workers.size();
  std::vector<WorkerId> all(n);
  std::iota(all.begin(), all.end(), WorkerId{0});
  const auto global_order = descending_wage_order(workers, all);
  const BucketConfig* buckets = options.buckets ? &*options.buckets : nullptr;

  if (options.exec == Exec::serial) {
    for (WorkerId u = 0; u < n; ++u) {
      if (auto g = search_star(workers, task, d, alpha, u, global_order, buckets)) return g;
    }
    return std::nullopt;
  }

  // Smallest successful center wins; centers above the current winner are skipped.
  std::atomic<std::size_t> winner{n};
  std::optional<Group> winning;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t c = 0; c < count; ++c) {
    const auto u = static_cast<WorkerId>(c);
    if (u > winner.load(std::memory_order_relaxed)) continue;
    auto g = search_star(workers, task, d, alpha, u, global_order, buckets);
    if (!g) continue;
#pragma omp critical(teamform_grp_dia)
    {
      if (u < winner.load(std::memory_order_relaxed)) {
        winner.store(u, std::memory_order_relaxed);
        winning = std::move(g);
      }
    }
  }
  return winning;
}

std::vector<double> distance_levels(const DistanceMatrix& d) {
  std::vector<double> levels;
  const std::size_t n = d.size();
  levels.reserve(n * (n - (n > 0 ? 1 : 0)) / 2 + 1);
  if (n > 0) levels.push_back(0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) levels.push_back(d(i, j));
  std::ranges::sort(levels);
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

std::optional<ApprxResult> apprx_grp(std::span<const Worker> workers, const Task& task,
                                     const DistanceMatrix& d, const GrpOptions& options) {
  if (workers.empty()) {
    if (satisfies_skill_and_cost({}, workers, task)) return ApprxResult{};
    return std::nullopt;
  }
  const auto levels = distance_levels(d);
  std::optional<ApprxResult> best;
  std::size_t calls = 0;
  std::size_t lo = 0, hi = levels.size();  // answer index in [lo, hi]
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    ++calls;
    if (auto g = grp_dia(workers, task, d, levels[mid], options)) {
      best = ApprxResult{std::move(*g), levels[mid], 0};
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (best) best->dia_calls = calls;
  return best;
}

BucketConfig bucketize_wages(std::span<const Worker> workers, std::size_t k) {
  if (k == 0) throw InputError("bucket count must be at least 1");
  double lo = 0.0, hi = 0.0;
  if (!workers.empty()) {
    const auto [mn, mx] = std::ranges::minmax_element(
        workers, [](const Worker& a, const Worker& b) { return a.wage < b.wage; });
    lo = mn->wage;
    hi = mx->wage;
  }
  BucketConfig cfg;
  cfg.k = k;
  if (hi <= lo) {
    // Degenerate range: everyone in bucket 0 at their common wage.
    for (std::size_t b = 0; b < k; ++b) cfg.boundaries.push_back(lo + static_cast<double>(b));
  } else {
    const double width = (hi - lo) / static_cast<double>(k);
    for (std::size_t b = 0; b + 1 < k; ++b)
      cfg.boundaries.push_back(lo + width * static_cast<double>(b + 1));
    cfg.boundaries.push_back(hi);
  }
  cfg.representative = cfg.boundaries;
  return cfg;
}

std::optional<Group> random_feasible_group(std::span<const Worker> workers, const Task& task,
                                           std::uint64_t seed) {
  constexpr int kAttempts = 1000;
  const std::size_t m = task.thresholds.size();
  auto met = [&](const std::vector<double>& s) {
    for (std::size_t i = 0; i < m; ++i)
      if (s[i] < task.thresholds[i] - kTolerance) return false;
    return true;
  };
  if (met(std::vector<double>(m, 0.0))) return Group{};

  std::mt19937_64 rng(seed);
  std::vector<WorkerId> ids(workers.size());
  std::iota(ids.begin(), ids.end(), WorkerId{0});
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::ranges::shuffle(ids, rng);
    std::vector<double> skill(m, 0.0);
    double cost = 0.0;
    Group g;
    for (WorkerId id : ids) {
      g.push_back(id);
      cost += workers[id].wage;
      for (std::size_t i = 0; i < m; ++i) skill[i] += workers[id].skills[i];
      if (met(skill)) break;
    }
    if (met(skill) && cost <= task.budget + kTolerance) {
      normalize(g);
      return g;
    }
  }
  return std::nullopt;
}

}  // namespace teamform
