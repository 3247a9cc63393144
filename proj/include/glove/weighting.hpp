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

#pragma once

// Per-record weights for the least-squares cost.
//
//   PowerClip      f(x) = min(1, (x / x_max)^alpha)
//   ExpSaturating  g(x) = 1 - exp(-lambda * x)
//   Constant       1 for x > 0, 0 at x = 0
//
// All variants map 0 to 0 and are non-decreasing with range [0, 1] when
// their parameters are valid.

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <variant>

namespace glove {

struct PowerClip {
  double x_max = 10.0;
  double alpha = 0.75;
};

struct ExpSaturating {
  static constexpr double kDefaultLambda = 0.165;
  double lambda = kDefaultLambda;
};

struct Constant {};

using WeightingSpec = std::variant<PowerClip, ExpSaturating, Constant>;

// Validating constructors; throw ConfigError on out-of-range parameters.
WeightingSpec make_power_clip(double x_max, double alpha);
WeightingSpec make_exp_saturating(double lambda = ExpSaturating::kDefaultLambda);
WeightingSpec make_constant();

// Throws ConfigError if the parameters are out of range
// (x_max > 0, 0 < alpha <= 1, lambda > 0).
void validate(const WeightingSpec& spec);

// Throws DomainError for x < 0 or NaN.
double weight(const WeightingSpec& spec, double x);

// Same as weight() without the domain check, for inner loops that only see
// positive co-occurrence values.
inline double weight_unchecked(const WeightingSpec& spec, double x) {
  if (const auto* p = std::get_if<PowerClip>(&spec))
    return x < p->x_max ? std::pow(x / p->x_max, p->alpha) : 1.0;
  if (const auto* e = std::get_if<ExpSaturating>(&spec)) return -std::expm1(-e->lambda * x);
  return x > 0.0 ? 1.0 : 0.0;
}

// Stable short name: "power-clip", "exp", "constant".
std::string weighting_name(const WeightingSpec& spec);
// e.g. "power-clip(x_max=10, alpha=0.75)"
std::string describe(const WeightingSpec& spec);

struct PropertyCheck {
  bool passed = true;
  std::optional<double> first_violation;
};

struct PropertyReport {
  PropertyCheck zero_at_origin;
  PropertyCheck non_decreasing;
  PropertyCheck unit_range;

  bool all_passed() const {
    return zero_at_origin.passed && non_decreasing.passed && unit_range.passed;
  }
};

// `grid` must be sorted ascending and start at 0 (ConfigError otherwise).
// Parameters are not validated, so deliberately broken specs can be probed.
PropertyReport check_properties(const WeightingSpec& spec, std::span<const double> grid);

}  // namespace glove
