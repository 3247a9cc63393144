// Copyright 2026 The glove-weighting Authors. All Rights Reserved.
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

#include "glove/weighting.hpp"

#include <algorithm>
#include <cstdio>

#include "glove/error.hpp"

namespace glove {

WeightingSpec make_power_clip(double x_max, double alpha) {
  WeightingSpec spec = PowerClip{x_max, alpha};
  validate(spec);
  return spec;
}

WeightingSpec make_exp_saturating(double lambda) {
  WeightingSpec spec = ExpSaturating{lambda};
  validate(spec);
  return spec;
}

WeightingSpec make_constant() { return Constant{}; }

void validate(const WeightingSpec& spec) {
  if (const auto* p = std::get_if<PowerClip>(&spec)) {
    if (!(p->x_max > 0.0) || !std::isfinite(p->x_max))
      throw ConfigError("power-clip x_max must be a positive finite number");
    if (!(p->alpha > 0.0 && p->alpha <= 1.0))
      throw ConfigError("power-clip alpha must lie in (0, 1]");
  } else if (const auto* e = std::get_if<ExpSaturating>(&spec)) {
    if (!(e->lambda > 0.0) || !std::isfinite(e->lambda))
      throw ConfigError("exp lambda must be a positive finite number");
  }
}

double weight(const WeightingSpec& spec, double x) {
  if (!(x >= 0.0)) throw DomainError("weighting argument must be non-negative");
  return weight_unchecked(spec, x);
}

std::string weighting_name(const WeightingSpec& spec) {
  switch (spec.index()) {
    case 0:
      return "power-clip";
    case 1:
      return "exp";
    default:
      return "constant";
  }
}

std::string describe(const WeightingSpec& spec) {
  char buf[96];
  if (const auto* p = std::get_if<PowerClip>(&spec)) {
    std::snprintf(buf, sizeof buf, "power-clip(x_max=%g, alpha=%g)", p->x_max, p->alpha);
  } else if (const auto* e = std::get_if<ExpSaturating>(&spec)) {
    std::snprintf(buf, sizeof buf, "exp(lambda=%g)", e->lambda);
  } else {
    std::snprintf(buf, sizeof buf, "constant");
  }
  return buf;
}

PropertyReport check_properties(const WeightingSpec& spec, std::span<const double> grid) {
  if (grid.empty() || grid.front() != 0.0)
    throw ConfigError("property grid must start at 0");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw ConfigError("property grid must be sorted ascending");

  PropertyReport report;
  auto fail = [](PropertyCheck& check, double x) {
    if (check.passed) {
      check.passed = false;
      check.first_violation = x;
    }
  };
  double prev = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double x = grid[k];
    const double w = weight_unchecked(spec, x);
    if (k == 0 && w != 0.0) fail(report.zero_at_origin, x);
    if (!(w >= 0.0 && w <= 1.0)) fail(report.unit_range, x);
    if (k > 0 && !(w >= prev)) fail(report.non_decreasing, x);
    prev = w;
  }
  return report;
}

}  // namespace glove
