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
#include "teamform/affinity.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace teamform {

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

DistanceMatrix attribute_distance(const AttributeProfile& profile) {
  const auto& labels = profile.labels;
  DistanceMatrix d(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      d.set_symmetric(i, j, labels[i] == labels[j] ? 0.0 : 1.0);
  return d;
}

namespace {

double scaled_euclid(const std::vector<double>& a, const std::vector<double>& b, double scale) {
  double s = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double diff = a[c] - b[c];
    s += diff * diff;
  }
  return std::sqrt(s) * scale;
}

}  // namespace

DistanceMatrix euclidean_distance(const std::vector<std::vector<double>>& points, Exec exec) {
  const std::size_t n = points.size();
  DistanceMatrix d(n);
  if (n == 0) return d;
  const std::size_t dim = points.front().size();
  for (const auto& p : points) {
    if (p.size() != dim) throw InputError("points have mixed dimensions");
  }
  const double scale = dim == 0 ? 0.0 : 1.0 / std::sqrt(static_cast<double>(dim));
  const auto count = static_cast<std::ptrdiff_t>(n);

  if (exec == Exec::serial) {
    for (std::ptrdiff_t i = 0; i < count; ++i)
      for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n; ++j)
        d.set_symmetric(i, j, scaled_euclid(points[i], points[j], scale));
    return d;
  }

  // Each (i, j > i) pair is written by exactly one iteration.
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < count; ++i)
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n; ++j)
      d.set_symmetric(i, j, scaled_euclid(points[i], points[j], scale));
  return d;
}

namespace {

void scan_row(const DistanceMatrix& d, std::size_t i, double tol,
              std::vector<TriangleViolation>& out) {
  const std::size_t n = d.size();
  const auto ri = d.row(i);
  for (std::size_t j = i + 1; j < n; ++j) {
    const double dij = ri[j];
    const auto rj = d.row(j);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i || k == j) continue;
      if (dij > ri[k] + rj[k] + tol) out.push_back({i, j, k});
    }
  }
}

}  // namespace

std::vector<TriangleViolation> metric_violations(const DistanceMatrix& d, double tol, Exec exec) {
  const std::size_t n = d.size();
  std::vector<TriangleViolation> out;
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) scan_row(d, i, tol, out);
    return out;
  }

  // Per-row buffers keep the (i, j, k) order independent of scheduling.
  std::vector<std::vector<TriangleViolation>> rows(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < count; ++i) scan_row(d, static_cast<std::size_t>(i), tol, rows[i]);
  for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

}  // namespace teamform
