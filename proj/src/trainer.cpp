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

#include "glove/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <ostream>
#include <string>
#include <thread>

#include "glove/error.hpp"
#include "glove/kernels.hpp"
#include "glove/random.hpp"

namespace glove {
namespace {

constexpr std::uint64_t kInitStream = 1;

std::string record_name(const CooccurRecord& rec) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "record (target=%u, context=%u, value=%.17g)", rec.target,
                rec.context, rec.value);
  return buf;
}

struct Residual {
  double diff;
  double weight;
  double cost;
  double scale;  // 2 * weight * diff
};

Residual residual(const kernels::KernelTable& k, const ModelParams& p, const CooccurRecord& rec,
                  const WeightingSpec& weighting, bool log_smoothing) {
  const double target = std::log(log_smoothing ? rec.value + 1.0 : rec.value);
  const double diff = k.dot(p.word(rec.target).data(), p.context(rec.context).data(), p.dim()) +
                      p.word_bias(rec.target) + p.context_bias(rec.context) - target;
  if (!std::isfinite(diff))
    throw NumericOverflowError("non-finite residual for " + record_name(rec));
  const double w = weight_unchecked(weighting, rec.value);
  const double cost = w * diff * diff;
  if (!std::isfinite(cost)) throw NumericOverflowError("non-finite cost for " + record_name(rec));
  return {diff, w, cost, 2.0 * w * diff};
}

struct Workspace {
  explicit Workspace(std::size_t dim) : grad_w(dim), grad_c(dim), step_w(dim), step_c(dim) {}
  std::vector<double> grad_w, grad_c, step_w, step_c;
};

// Applies one AdaGrad update given the four gradient blocks.  step_w/step_c
// in `ws` are scratch.
StepOutcome apply_update(const kernels::KernelTable& k, ModelParams& p, const double* grad_w,
                         const double* grad_c, double grad_b, double grad_bc, WordId i, WordId z,
                         double lr, double max_step, Workspace& ws) {
  const std::size_t d = p.dim();
  const double worst_w = k.adagrad_steps(grad_w, p.word_accum(i).data(), lr, ws.step_w.data(), d);
  const double worst_c =
      k.adagrad_steps(grad_c, p.context_accum(z).data(), lr, ws.step_c.data(), d);
  const double step_b = (lr * grad_b) / std::sqrt(p.word_bias_accum(i));
  const double step_bc = (lr * grad_bc) / std::sqrt(p.context_bias_accum(z));
  const double worst =
      std::max({worst_w, worst_c, std::fabs(step_b), std::fabs(step_bc)});
  if (!std::isfinite(worst) || std::isnan(step_b) || std::isnan(step_bc))
    throw NumericOverflowError("non-finite update for word " + std::to_string(i) +
                               ", context " + std::to_string(z));
  if (worst > max_step) return StepOutcome::kSkipped;
  k.adagrad_apply(p.word(i).data(), p.word_accum(i).data(), ws.step_w.data(), grad_w, d);
  k.adagrad_apply(p.context(z).data(), p.context_accum(z).data(), ws.step_c.data(), grad_c, d);
  p.word_bias(i) -= step_b;
  p.word_bias_accum(i) += grad_b * grad_b;
  p.context_bias(z) -= step_bc;
  p.context_bias_accum(z) += grad_bc * grad_bc;
  return StepOutcome::kApplied;
}

struct ChunkResult {
  double cost = 0.0;
  std::size_t skipped = 0;
};

ChunkResult run_chunk(ModelParams& p, std::span<const CooccurRecord> chunk,
                      const TrainConfig& config) {
  const auto& k = kernels::active();
  Workspace ws(p.dim());
  ChunkResult out;
  for (const auto& rec : chunk) {
    const Residual r = residual(k, p, rec, config.weighting, config.log_smoothing);
    out.cost += r.cost;
    // Both gradient blocks are taken before either row moves.
    k.scale(r.scale, p.context(rec.context).data(), ws.grad_w.data(), p.dim());
    k.scale(r.scale, p.word(rec.target).data(), ws.grad_c.data(), p.dim());
    if (apply_update(k, p, ws.grad_w.data(), ws.grad_c.data(), r.scale, r.scale, rec.target,
                     rec.context, config.initial_lr, config.max_step, ws) ==
        StepOutcome::kSkipped)
      ++out.skipped;
  }
  return out;
}

long double cost_extended(std::span<const long double> w, std::span<const long double> c,
                          long double b, long double bc, long double target, long double weight) {
  long double dot = 0.0L;
  for (std::size_t k = 0; k < w.size(); ++k) dot += w[k] * c[k];
  const long double diff = dot + b + bc - target;
  return weight * diff * diff;
}

}  // namespace

void validate(const TrainConfig& config) {
  if (config.dim < 1) throw ConfigError("dim must be at least 1");
  if (config.epochs < 1) throw ConfigError("epochs must be at least 1");
  if (!(config.initial_lr > 0.0) || !std::isfinite(config.initial_lr))
    throw ConfigError("learning rate must be positive");
  if (config.threads < 1) throw ConfigError("threads must be at least 1");
  if (!(config.max_step > 0.0)) throw ConfigError("max_step must be positive");
  validate(config.weighting);
}

ModelParams::ModelParams(std::size_t vocab_size, std::size_t dim)
    : vocab_size_(vocab_size),
      dim_(dim),
      word_(vocab_size * dim, 0.0),
      context_(vocab_size * dim, 0.0),
      word_bias_(vocab_size, 0.0),
      context_bias_(vocab_size, 0.0),
      word_accum_(vocab_size * dim, 1.0),
      context_accum_(vocab_size * dim, 1.0),
      word_bias_accum_(vocab_size, 1.0),
      context_bias_accum_(vocab_size, 1.0) {}

bool ModelParams::all_finite() const {
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  return finite(word_) && finite(context_) && finite(word_bias_) && finite(context_bias_) &&
         finite(word_accum_) && finite(context_accum_) && finite(word_bias_accum_) &&
         finite(context_bias_accum_);
}

ModelParams init_params(std::size_t vocab_size, const TrainConfig& config) {
  if (vocab_size < 1) throw ConfigError("vocabulary must contain at least one word");
  if (config.dim < 1) throw ConfigError("dim must be at least 1");
  ModelParams p(vocab_size, config.dim);
  Engine rng = make_engine(derive_seed(config.seed, kInitStream));
  const double half = 0.5 / static_cast<double>(config.dim);
  for (double& x : p.word_matrix()) x = (2.0 * uniform_unit(rng) - 1.0) * half;
  for (double& x : p.context_matrix()) x = (2.0 * uniform_unit(rng) - 1.0) * half;
  return p;
}

RecordGradients record_cost_and_grads(const ModelParams& params, const CooccurRecord& rec,
                                      const WeightingSpec& weighting, bool log_smoothing) {
  if (!(rec.value > 0.0)) throw DomainError("co-occurrence value must be positive");
  const auto& k = kernels::active();
  const Residual r = residual(k, params, rec, weighting, log_smoothing);
  RecordGradients g;
  g.cost = r.cost;
  g.diff = r.diff;
  g.weight = r.weight;
  g.word.resize(params.dim());
  g.context.resize(params.dim());
  k.scale(r.scale, params.context(rec.context).data(), g.word.data(), params.dim());
  k.scale(r.scale, params.word(rec.target).data(), g.context.data(), params.dim());
  g.word_bias = r.scale;
  g.context_bias = r.scale;
  return g;
}

StepOutcome adagrad_step(ModelParams& params, const RecordGradients& grads, WordId target,
                         WordId context, double lr, double max_step) {
  if (!(lr > 0.0)) throw ConfigError("learning rate must be positive");
  if (grads.word.size() != params.dim() || grads.context.size() != params.dim())
    throw ConfigError("gradient shape does not match parameters");
  Workspace ws(params.dim());
  return apply_update(kernels::active(), params, grads.word.data(), grads.context.data(),
                      grads.word_bias, grads.context_bias, target, context, lr, max_step, ws);
}

TrainResult train(const CooccurSet& records, const TrainConfig& config,
                  const EpochCallback& on_epoch) {
  validate(config);
  if (records.empty()) throw DataError("no co-occurrence records to train on");
  TrainResult result{init_params(records.vocab_size(), config), {}};
  ModelParams& p = result.params;

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    const std::vector<CooccurRecord> order = shuffle(records, config.seed ^ epoch);
    const std::span<const CooccurRecord> all(order);
    ChunkResult total;
    if (config.threads == 1) {
      total = run_chunk(p, all, config);
    } else {
      const std::size_t nthreads = std::min(config.threads, order.size());
      std::vector<ChunkResult> parts(nthreads);
      std::vector<std::exception_ptr> failures(nthreads);
      {
        std::vector<std::jthread> workers;
        for (std::size_t t = 0; t < nthreads; ++t) {
          const std::size_t lo = order.size() * t / nthreads;
          const std::size_t hi = order.size() * (t + 1) / nthreads;
          workers.emplace_back([&, t, lo, hi] {
            try {
              parts[t] = run_chunk(p, all.subspan(lo, hi - lo), config);
            } catch (...) {
              failures[t] = std::current_exception();
            }
          });
        }
      }
      for (const auto& f : failures)
        if (f) std::rethrow_exception(f);
      for (const auto& part : parts) {
        total.cost += part.cost;
        total.skipped += part.skipped;
      }
    }
    EpochLoss loss{epoch, total.cost, total.cost / static_cast<double>(order.size()),
                   total.skipped};
    result.history.push_back(loss);
    if (on_epoch) on_epoch(loss, p);
  }
  return result;
}

double finite_difference_check(const ModelParams& params, const CooccurRecord& rec,
                               const WeightingSpec& weighting, double eps, bool log_smoothing) {
  if (!(eps > 0.0 && eps < 1e-2)) throw ConfigError("finite-difference step must lie in (0, 1e-2)");
  const RecordGradients g = record_cost_and_grads(params, rec, weighting, log_smoothing);
  const std::size_t d = params.dim();

  std::vector<long double> w(d), c(d);
  for (std::size_t k = 0; k < d; ++k) {
    w[k] = params.word(rec.target)[k];
    c[k] = params.context(rec.context)[k];
  }
  long double b = params.word_bias(rec.target);
  long double bc = params.context_bias(rec.context);
  const long double target =
      std::log(log_smoothing ? static_cast<long double>(rec.value) + 1.0L
                             : static_cast<long double>(rec.value));
  const long double weight = weight_unchecked(weighting, rec.value);
  const long double h = eps;

  double worst = 0.0;
  auto compare = [&](double analytic, long double& coord) {
    const long double saved = coord;
    coord = saved + h;
    const long double up = cost_extended(w, c, b, bc, target, weight);
    coord = saved - h;
    const long double down = cost_extended(w, c, b, bc, target, weight);
    coord = saved;
    const double numeric = static_cast<double>((up - down) / (2.0L * h));
    const double scale = std::max(std::fabs(analytic), std::fabs(numeric));
    const double err = std::fabs(analytic - numeric);
    worst = std::max(worst, scale < 1e-9 ? err : err / scale);
  };
  for (std::size_t k = 0; k < d; ++k) compare(g.word[k], w[k]);
  for (std::size_t k = 0; k < d; ++k) compare(g.context[k], c[k]);
  compare(g.word_bias, b);
  compare(g.context_bias, bc);
  return worst;
}

void write_loss_csv(const LossHistory& history, std::ostream& out) {
  out << "epoch,total_cost,mean_cost\n";
  char buf[128];
  for (const auto& e : history) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", e.epoch, e.total_cost, e.mean_cost);
    out << buf;
  }
}

void save_loss_csv(const LossHistory& history, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  write_loss_csv(history, out);
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

}  // namespace glove
