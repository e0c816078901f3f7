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

#include <string>
#include <vector>

#include "teamform/model.hpp"
#include "teamform/parallel.hpp"

namespace teamform {

/// One categorical label per worker, e.g. an age bucket or a region.
struct AttributeProfile {
  std::vector<std::string> labels;
};

/// 0 when labels match, 1 otherwise.
DistanceMatrix attribute_distance(const AttributeProfile& profile);

/// Euclidean distance scaled by 1/sqrt(d) so unit-cube points land in [0,1].
/// Throws InputError on mixed dimensions.
DistanceMatrix euclidean_distance(const std::vector<std::vector<double>>& points,
                                  Exec exec = Exec::parallel);

struct TriangleViolation {
  WorkerId i, j, k;  // dist(i,j) > dist(i,k) + dist(k,j) + tol, with i < j

  friend bool operator==(const TriangleViolation&, const TriangleViolation&) = default;
};

/// Exhaustive triangle-inequality scan. Results are ordered by (i, j, k).
std::vector<TriangleViolation> metric_violations(const DistanceMatrix& d, double tol,
                                                 Exec exec = Exec::parallel);

}  // namespace teamform
