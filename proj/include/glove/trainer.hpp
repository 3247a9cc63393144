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

// Weighted least-squares fit of word/context vectors and biases to log
// co-occurrence counts, optimized with per-parameter adaptive (AdaGrad)
// stochastic gradient descent.
//
// For a record (i, z, x) with diff = w_i . c_z + b_i + bc_z - log(x):
//   cost  = weight(x) * diff^2
//   dw_i  = 2 weight(x) diff c_z       dc_z = 2 weight(x) diff w_i
//   db_i  = dbc_z = 2 weight(x) diff

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

#include "glove/cooccur.hpp"
#include "glove/weighting.hpp"

namespace glove {

struct TrainConfig {
  std::size_t dim = 50;
  std::size_t epochs = 20;
  double initial_lr = 0.05;
  WeightingSpec weighting = PowerClip{10.0, 0.75};
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  // Fit log(x + 1) instead of log(x).
  bool log_smoothing = false;
  // Records whose update would move any parameter further than this are
  // skipped and counted.
  double max_step = 100.0;
};

// Throws ConfigError.
void validate(const TrainConfig& config);

class ModelParams {
 public:
  ModelParams() = default;
  // Zero parameters, unit accumulators.
  ModelParams(std::size_t vocab_size, std::size_t dim);

  std::size_t vocab_size() const noexcept { return vocab_size_; }
  std::size_t dim() const noexcept { return dim_; }

  std::span<double> word(WordId i) { return row(word_, i); }
  std::span<const double> word(WordId i) const { return row(word_, i); }
  std::span<double> context(WordId i) { return row(context_, i); }
  std::span<const double> context(WordId i) const { return row(context_, i); }
  double& word_bias(WordId i) { return word_bias_[i]; }
  double word_bias(WordId i) const { return word_bias_[i]; }
  double& context_bias(WordId i) { return context_bias_[i]; }
  double context_bias(WordId i) const { return context_bias_[i]; }

  std::span<double> word_accum(WordId i) { return row(word_accum_, i); }
  std::span<const double> word_accum(WordId i) const { return row(word_accum_, i); }
  std::span<double> context_accum(WordId i) { return row(context_accum_, i); }
  std::span<const double> context_accum(WordId i) const { return row(context_accum_, i); }
  double& word_bias_accum(WordId i) { return word_bias_accum_[i]; }
  double word_bias_accum(WordId i) const { return word_bias_accum_[i]; }
  double& context_bias_accum(WordId i) { return context_bias_accum_[i]; }
  double context_bias_accum(WordId i) const { return context_bias_accum_[i]; }

  // Row-major |V| x d.
  std::span<const double> word_matrix() const noexcept { return word_; }
  std::span<const double> context_matrix() const noexcept { return context_; }
  std::span<double> word_matrix() noexcept { return word_; }
  std::span<double> context_matrix() noexcept { return context_; }

  bool all_finite() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  std::span<double> row(std::vector<double>& m, WordId i) {
    return std::span<double>(m).subspan(std::size_t{i} * dim_, dim_);
  }
  std::span<const double> row(const std::vector<double>& m, WordId i) const {
    return std::span<const double>(m).subspan(std::size_t{i} * dim_, dim_);
  }

  std::size_t vocab_size_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> word_, context_, word_bias_, context_bias_;
  std::vector<double> word_accum_, context_accum_, word_bias_accum_, context_bias_accum_;
};

// Vectors uniform in [-0.5/d, 0.5/d] from config.seed, zero biases, unit
// accumulators.
ModelParams init_params(std::size_t vocab_size, const TrainConfig& config);

struct RecordGradients {
  double cost = 0.0;
  double diff = 0.0;
  double weight = 0.0;
  std::vector<double> word;     // d cost / d w_i
  std::vector<double> context;  // d cost / d c_z
  double word_bias = 0.0;
  double context_bias = 0.0;
};

// Throws NumericOverflowError when diff or the cost is not finite.
RecordGradients record_cost_and_grads(const ModelParams& params, const CooccurRecord& rec,
                                      const WeightingSpec& weighting, bool log_smoothing);

enum class StepOutcome { kApplied, kSkipped };

// theta <- theta - lr * g / sqrt(G); G <- G + g^2 on rows `target` (word
// side) and `context` (context side).  Returns kSkipped without touching
// anything if some |step| > max_step; throws NumericOverflowError if some
// step is not finite.
StepOutcome adagrad_step(ModelParams& params, const RecordGradients& grads, WordId target,
                         WordId context, double lr,
                         double max_step = std::numeric_limits<double>::infinity());

struct EpochLoss {
  std::size_t epoch = 0;  // 1-based
  double total_cost = 0.0;
  double mean_cost = 0.0;
  std::size_t skipped = 0;

  friend bool operator==(const EpochLoss&, const EpochLoss&) = default;
};

using LossHistory = std::vector<EpochLoss>;

struct TrainResult {
  ModelParams params;
  LossHistory history;
};

// Called after every epoch with the current parameters.
using EpochCallback = std::function<void(const EpochLoss&, const ModelParams&)>;

// One epoch = one pass over all records in a fresh permutation seeded by
// (seed XOR epoch).  With threads == 1 the result is bit-reproducible;
// with more threads workers update shared parameters without locks.
TrainResult train(const CooccurSet& records, const TrainConfig& config,
                  const EpochCallback& on_epoch = {});

// Worst relative error between analytic gradients and central differences
// of the cost over every coordinate of w_i, c_z, b_i, bc_z.  The numeric
// side is evaluated in extended precision.  Requires 0 < eps < 1e-2.
double finite_difference_check(const ModelParams& params, const CooccurRecord& rec,
                               const WeightingSpec& weighting, double eps,
                               bool log_smoothing = false);

// `epoch,total_cost,mean_cost`, 17 significant digits.
void write_loss_csv(const LossHistory& history, std::ostream& out);
void save_loss_csv(const LossHistory& history, const std::filesystem::path& path);

}  // namespace glove
