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

#include "cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>

#include "glove/cooccur.hpp"
#include "glove/corpus.hpp"
#include "glove/embeddings.hpp"
#include "glove/error.hpp"
#include "glove/eval.hpp"
#include "glove/kernels.hpp"
#include "glove/manifest.hpp"
#include "glove/random.hpp"
#include "glove/trainer.hpp"
#include "glove/weighting.hpp"

namespace glove::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr std::uint64_t kShuffleStream = 2;

// ---------------------------------------------------------------------------
// Option sets.  Field names double as manifest keys via the to_config()
// functions, which must use the long flag names.

struct CorpusOptions {
  bool keep_case = false;
  bool lines_as_sentences = false;
  std::uint64_t max_bytes = 0;
};

struct CountFlags {
  std::size_t window = 15;
  bool asymmetric = false;
  bool no_distance_weighting = false;

  CountOptions resolve() const { return {window, !asymmetric, !no_distance_weighting}; }
};

struct WeightingFlags {
  std::string weighting = "power-clip";
  double x_max = 10.0;
  double alpha = 0.75;
  double lambda = ExpSaturating::kDefaultLambda;

  WeightingSpec resolve() const {
    if (weighting == "power-clip") return make_power_clip(x_max, alpha);
    if (weighting == "exp") return make_exp_saturating(lambda);
    return make_constant();
  }
};

struct TrainFlags {
  std::size_t dim = 50;
  std::size_t epochs = 20;
  double lr = 0.05;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  bool log_smoothing = false;
  double max_step = 100.0;
  std::string combine = "sum";
};

void add_corpus_flags(CLI::App* sub, CorpusOptions& o, bool with_lines) {
  sub->add_flag("--keep-case", o.keep_case, "Do not ASCII-lowercase tokens");
  if (with_lines)
    sub->add_flag("--lines-as-sentences", o.lines_as_sentences,
                  "Treat line boundaries as sentence breaks");
  sub->add_option("--max-bytes", o.max_bytes, "Read at most this many bytes of the corpus (0 = all)");
}

void add_count_flags(CLI::App* sub, CountFlags& o) {
  sub->add_option("--window", o.window, "Context window size")->check(CLI::PositiveNumber);
  sub->add_flag("--asymmetric", o.asymmetric, "Count only left context");
  sub->add_flag("--no-distance-weighting", o.no_distance_weighting,
                "Count 1 per pair instead of 1/distance");
}

void add_weighting_flags(CLI::App* sub, WeightingFlags& o) {
  sub->add_option("--weighting", o.weighting, "power-clip | exp | constant")
      ->check(CLI::IsMember({"power-clip", "exp", "constant"}));
  sub->add_option("--x-max", o.x_max, "power-clip cutoff");
  sub->add_option("--alpha", o.alpha, "power-clip exponent");
  sub->add_option("--lambda", o.lambda, "exp rate");
}

void add_train_flags(CLI::App* sub, TrainFlags& o) {
  sub->add_option("--dim", o.dim, "Vector size")->check(CLI::PositiveNumber);
  sub->add_option("--epochs", o.epochs, "Passes over the co-occurrence records")
      ->check(CLI::PositiveNumber);
  sub->add_option("--lr", o.lr, "Initial learning rate");
  sub->add_option("--seed", o.seed, "Seed for initialization and shuffling");
  sub->add_option("--threads", o.threads, "Worker threads (1 = reproducible)")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--log-smoothing", o.log_smoothing, "Fit log(x + 1) instead of log(x)");
  sub->add_option("--max-step", o.max_step, "Skip records whose update exceeds this");
  sub->add_option("--combine", o.combine, "Exported vectors: target | sum | concat")
      ->check(CLI::IsMember({"target", "sum", "concat"}));
}

void put(Json& j, const CorpusOptions& o, bool with_lines) {
  j["keep-case"] = o.keep_case;
  if (with_lines) j["lines-as-sentences"] = o.lines_as_sentences;
  j["max-bytes"] = o.max_bytes;
}
void put(Json& j, const CountFlags& o) {
  j["window"] = o.window;
  j["asymmetric"] = o.asymmetric;
  j["no-distance-weighting"] = o.no_distance_weighting;
}
void put(Json& j, const WeightingFlags& o) {
  j["weighting"] = o.weighting;
  j["x-max"] = o.x_max;
  j["alpha"] = o.alpha;
  j["lambda"] = o.lambda;
}
void put(Json& j, const TrainFlags& o) {
  j["dim"] = o.dim;
  j["epochs"] = o.epochs;
  j["lr"] = o.lr;
  j["seed"] = o.seed;
  j["threads"] = o.threads;
  j["log-smoothing"] = o.log_smoothing;
  j["max-step"] = o.max_step;
  j["combine"] = o.combine;
}

TrainConfig resolve_train(const TrainFlags& t, const WeightingSpec& w) {
  TrainConfig c;
  c.dim = t.dim;
  c.epochs = t.epochs;
  c.initial_lr = t.lr;
  c.weighting = w;
  c.seed = t.seed;
  c.threads = t.threads;
  c.log_smoothing = t.log_smoothing;
  c.max_step = t.max_step;
  return c;
}

RecordFormat parse_format(const std::string& f) {
  return f == "text" ? RecordFormat::kText : RecordFormat::kBinary;
}

// ---------------------------------------------------------------------------
// Shared helpers

void refuse_overwrite(const std::vector<fs::path>& outputs, bool force) {
  if (force) return;
  for (const auto& p : outputs)
    if (fs::exists(p))
      throw ConfigError("refusing to overwrite '" + p.string() + "' (pass --force)");
}

std::string read_corpus(const fs::path& path, std::uint64_t max_bytes) {
  std::string text = read_file(path);
  if (max_bytes > 0 && text.size() > max_bytes) {
    // Cut at the last whitespace so no word is split.
    std::size_t cut = max_bytes;
    while (cut > 0 && !std::isspace(static_cast<unsigned char>(text[cut - 1]))) --cut;
    text.resize(cut);
  }
  return text;
}

TokenizedText tokenize_corpus(const fs::path& path, const CorpusOptions& o) {
  const std::string text = read_corpus(path, o.max_bytes);
  if (o.lines_as_sentences) return tokenize_lines(text, !o.keep_case);
  return {tokenize(text, !o.keep_case), {}};
}

RunManifest start_manifest(const std::string& command, Json config, std::uint64_t seed,
                           const std::vector<fs::path>& inputs) {
  RunManifest m;
  m.command = command;
  m.config = std::move(config);
  m.seed = seed;
  m.kernels = kernels::active().name;
  for (const auto& in : inputs) m.inputs.push_back({in.string(), sha256_file(in)});
  return m;
}

void finish_manifest(RunManifest& m, const std::vector<fs::path>& outputs,
                     const fs::path& where) {
  for (const auto& o : outputs) m.outputs.push_back(o.string());
  save_manifest(m, where);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_fraction(const std::optional<double>& v) {
  return v ? fmt::format("{:.6f}", *v) : std::string("NA");
}

std::string fmt_percent(const std::optional<double>& v) {
  return v ? fmt::format("{:.2f}%", 100.0 * *v) : std::string("n/a");
}

// ---------------------------------------------------------------------------
// vocab

struct VocabCmd {
  std::string corpus, out;
  std::uint64_t min_count = 5;
  CorpusOptions corpus_opts;
  bool force = false;

  void setup(CLI::App* sub) {
    sub->add_option("--corpus", corpus, "Input text")->required();
    sub->add_option("--out", out, "Vocabulary file to write")->required();
    sub->add_option("--min-count", min_count, "Drop words rarer than this")
        ->check(CLI::PositiveNumber);
    add_corpus_flags(sub, corpus_opts, false);
    sub->add_flag("--force", force, "Overwrite existing outputs");
  }

  Json config() const {
    Json j;
    j["corpus"] = corpus;
    j["out"] = out;
    j["min-count"] = min_count;
    put(j, corpus_opts, false);
    return j;
  }

  int run(std::ostream& os) const {
    refuse_overwrite({out}, force);
    RunManifest m = start_manifest("vocab", config(), 0, {corpus});
    const auto tokens = tokenize_corpus(corpus, corpus_opts);
    const Vocabulary vocab = build_vocab(tokens.tokens, min_count);
    save_vocab(vocab, out);
    finish_manifest(m, {out}, manifest_path_for(out));
    os << fmt::format("{} tokens, {} words with count >= {} -> {}\n", tokens.tokens.size(),
                      vocab.size(), min_count, out);
    return kOk;
  }
};

// ---------------------------------------------------------------------------
// cooccur

struct CooccurCmd {
  std::string corpus, vocab, out, format = "bin";
  CorpusOptions corpus_opts;
  CountFlags count;
  std::size_t threads = 1;
  bool force = false;

  void setup(CLI::App* sub) {
    sub->add_option("--corpus", corpus, "Input text")->required();
    sub->add_option("--vocab", vocab, "Vocabulary file")->required();
    sub->add_option("--out", out, "Co-occurrence records to write")->required();
    sub->add_option("--format", format, "bin | text")->check(CLI::IsMember({"bin", "text"}));
    add_corpus_flags(sub, corpus_opts, true);
    add_count_flags(sub, count);
    sub->add_option("--threads", threads, "Counting shards")->check(CLI::PositiveNumber);
    sub->add_flag("--force", force, "Overwrite existing outputs");
  }

  Json config() const {
    Json j;
    j["corpus"] = corpus;
    j["vocab"] = vocab;
    j["out"] = out;
    j["format"] = format;
    put(j, corpus_opts, true);
    put(j, count);
    j["threads"] = threads;
    return j;
  }

  int run(std::ostream& os) const {
    refuse_overwrite({out}, force);
    RunManifest m = start_manifest("cooccur", config(), 0, {corpus, vocab});
    const Vocabulary v = load_vocab(vocab);
    const auto tokens = tokenize_corpus(corpus, corpus_opts);
    const TokenIdStream stream = encode(tokens.tokens, v, tokens.sentence_breaks);
    const CooccurSet set = count_cooccurrences_parallel(stream, count.resolve(), threads);
    save_records(set.records(), out, parse_format(format));
    finish_manifest(m, {out}, manifest_path_for(out));
    os << fmt::format("{} in-vocabulary tokens, {} co-occurrence records -> {}\n",
                      stream.ids.size(), set.size(), out);
    return kOk;
  }
};

// ---------------------------------------------------------------------------
// shuffle

struct ShuffleCmd {
  std::string in, out, format = "bin";
  std::uint64_t seed = 0;
  bool force = false;

  void setup(CLI::App* sub) {
    sub->add_option("--in", in, "Co-occurrence records")->required();
    sub->add_option("--out", out, "Shuffled records to write")->required();
    sub->add_option("--format", format, "bin | text")->check(CLI::IsMember({"bin", "text"}));
    sub->add_option("--seed", seed, "Permutation seed");
    sub->add_flag("--force", force, "Overwrite existing outputs");
  }

  Json config() const {
    Json j;
    j["in"] = in;
    j["out"] = out;
    j["format"] = format;
    j["seed"] = seed;
    return j;
  }

  int run(std::ostream& os) const {
    refuse_overwrite({out}, force);
    RunManifest m = start_manifest("shuffle", config(), seed, {in});
    const auto records = load_records(in, parse_format(format));
    const auto shuffled = shuffle(records, derive_seed(seed, kShuffleStream));
    save_records(shuffled, out, parse_format(format));
    finish_manifest(m, {out}, manifest_path_for(out));
    os << fmt::format("{} records shuffled -> {}\n", shuffled.size(), out);
    return kOk;
  }
};

// ---------------------------------------------------------------------------
// train

struct TrainCmd {
  std::string cooccur, vocab, out, loss_csv, format = "bin";
  WeightingFlags weighting;
  TrainFlags train;
  bool force = false;

  void setup(CLI::App* sub) {
    sub->add_option("--cooccur", cooccur, "Co-occurrence records")->required();
    sub->add_option("--vocab", vocab, "Vocabulary file")->required();
    sub->add_option("--out", out, "Vector file to write")->required();
    sub->add_option("--loss-csv", loss_csv, "Per-epoch loss (default: <out>.loss.csv)");
    sub->add_option("--format", format, "Record format: bin | text")
        ->check(CLI::IsMember({"bin", "text"}));
    add_weighting_flags(sub, weighting);
    add_train_flags(sub, train);
    sub->add_flag("--force", force, "Overwrite existing outputs");
  }

  fs::path loss_path() const { return loss_csv.empty() ? fs::path(out + ".loss.csv") : fs::path(loss_csv); }

  Json config() const {
    Json j;
    j["cooccur"] = cooccur;
    j["vocab"] = vocab;
    j["out"] = out;
    j["loss-csv"] = loss_path().string();
    j["format"] = format;
    put(j, weighting);
    put(j, train);
    return j;
  }

  int run(std::ostream& os) const {
    const WeightingSpec spec = weighting.resolve();
    const TrainConfig config_values = resolve_train(train, spec);
    validate(config_values);
    refuse_overwrite({out, loss_path()}, force);
    RunManifest m = start_manifest("train", config(), train.seed, {cooccur, vocab});

    const Vocabulary v = load_vocab(vocab);
    const CooccurSet set(v.size(), load_records(cooccur, parse_format(format)));
    const auto t0 = std::chrono::steady_clock::now();
    os << fmt::format("training {} records, |V|={}, d={}, {}\n", set.size(), v.size(), train.dim,
                      describe(spec));
    const TrainResult result = glove::train(set, config_values, [&](const EpochLoss& e, const ModelParams&) {
      os << fmt::format("epoch {:>3}  total {:.9g}  mean {:.9g}  skipped {}  ({:.1f}s)\n",
                        e.epoch, e.total_cost, e.mean_cost, e.skipped, seconds_since(t0));
    });
    const EmbeddingSet emb =
        export_embeddings(result.params, v, parse_combine_mode(train.combine));
    if (const auto zeros = emb.zero_rows())
      os << fmt::format("warning: {} exported vectors are all zero\n", zeros);
    save_vectors(emb, out);
    save_loss_csv(result.history, loss_path());
    finish_manifest(m, {out, loss_path()}, manifest_path_for(out));
    return kOk;
  }
};

// ---------------------------------------------------------------------------
// eval

struct EvalCmd {
  std::string vectors, questions, csv;
  std::size_t threads = 1;
  bool force = false;

  void setup(CLI::App* sub) {
    sub->add_option("--vectors", vectors, "Vector file")->required();
    sub->add_option("--questions", questions, "Analogy questions")->required();
    sub->add_option("--csv", csv, "Also write a CSV report here");
    sub->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--force", force, "Overwrite existing outputs");
  }

  Json config() const {
    Json j;
    j["vectors"] = vectors;
    j["questions"] = questions;
    j["csv"] = csv;
    j["threads"] = threads;
    return j;
  }

  int run(std::ostream& os) const {
    if (!csv.empty()) refuse_overwrite({csv}, force);
    std::optional<RunManifest> m;
    if (!csv.empty()) m = start_manifest("eval", config(), 0, {vectors, questions});
    const EmbeddingSet e = load_vectors(vectors);
    const auto qs = load_questions(questions);
    const EvalReport report = evaluate(e, qs, threads);
    write_report_text(report, os);
    if (!csv.empty()) {
      std::ofstream f(csv, std::ios::binary);
      if (!f) throw DataError("cannot open '" + csv + "' for writing");
      write_report_csv(report, f);
      finish_manifest(*m, {csv}, manifest_path_for(csv));
    }
    return kOk;
  }
};

// ---------------------------------------------------------------------------
// similar

struct SimilarCmd {
  std::string vectors, pairs, out;
  bool force = false;

  void setup(CLI::App* sub) {
    sub->add_option("--vectors", vectors, "Vector file")->required();
    sub->add_option("--pairs", pairs, "Word pairs, two per line")->required();
    sub->add_option("--out", out, "Also write the table here");
    sub->add_flag("--force", force, "Overwrite existing outputs");
  }

  Json config() const {
    Json j;
    j["vectors"] = vectors;
    j["pairs"] = pairs;
    j["out"] = out;
    return j;
  }

  int run(std::ostream& os) const {
    if (!out.empty()) refuse_overwrite({out}, force);
    const EmbeddingSet e = load_vectors(vectors);
    std::ifstream in(pairs, std::ios::binary);
    if (!in) throw DataError("cannot open '" + pairs + "'");
    const auto rows = similarity_report(e, read_word_pairs(in, pairs));
    write_similarity_table(rows, os);
    if (!out.empty()) {
      RunManifest m = start_manifest("similar", config(), 0, {vectors, pairs});
      std::ofstream f(out, std::ios::binary);
      if (!f) throw DataError("cannot open '" + out + "' for writing");
      write_similarity_table(rows, f);
      f.close();
      finish_manifest(m, {out}, manifest_path_for(out));
    }
    return kOk;
  }
};

// ---------------------------------------------------------------------------
// analogy

struct AnalogyCmd {
  std::string vectors;
  std::vector<std::string> words;
  std::size_t k = 1;

  void setup(CLI::App* sub) {
    sub->add_option("--vectors", vectors, "Vector file")->required();
    sub->add_option("words", words, "a b c: a is to b as c is to ?")->expected(3)->required();
    sub->add_option("-k,--top", k, "Number of answers")->check(CLI::PositiveNumber);
  }

  int run(std::ostream& os) const {
    const EmbeddingSet e = load_vectors(vectors);
    const auto& idx = e.words();
    const auto best = analogy_candidates(e, idx.id(words[0]), idx.id(words[1]), idx.id(words[2]), k);
    if (best.empty()) throw DataError("no candidate words outside the analogy query");
    for (const auto& n : best) os << fmt::format("{} {:.6f}\n", idx.word(n.id), n.score);
    return kOk;
  }
};

// ---------------------------------------------------------------------------
// bench-compare

struct BenchRow {
  std::string weighting;
  std::size_t epoch;
  double mean_cost;
  std::optional<double> semantic, syntactic, overall;
};

struct BenchCmd {
  std::string corpus, questions, out_dir;
  std::uint64_t min_count = 5;
  CorpusOptions corpus_opts;
  CountFlags count;
  TrainFlags train;
  WeightingFlags weighting;  // only the parameters are used; both families run
  std::size_t eval_every = 1;
  bool force = false;

  void setup(CLI::App* sub) {
    sub->add_option("--corpus", corpus, "Input text")->required();
    sub->add_option("--questions", questions, "Analogy questions")->required();
    sub->add_option("--out-dir", out_dir, "Directory for all outputs")->required();
    sub->add_option("--min-count", min_count, "Drop words rarer than this")
        ->check(CLI::PositiveNumber);
    add_corpus_flags(sub, corpus_opts, true);
    add_count_flags(sub, count);
    add_train_flags(sub, train);
    sub->add_option("--x-max", weighting.x_max, "power-clip cutoff");
    sub->add_option("--alpha", weighting.alpha, "power-clip exponent");
    sub->add_option("--lambda", weighting.lambda, "exp rate");
    sub->add_option("--eval-every", eval_every, "Evaluate analogies every N epochs (0 = final only)");
    sub->add_flag("--force", force, "Overwrite existing outputs");
  }

  Json config() const {
    Json j;
    j["corpus"] = corpus;
    j["questions"] = questions;
    j["out-dir"] = out_dir;
    j["min-count"] = min_count;
    put(j, corpus_opts, true);
    put(j, count);
    put(j, train);
    j["x-max"] = weighting.x_max;
    j["alpha"] = weighting.alpha;
    j["lambda"] = weighting.lambda;
    j["eval-every"] = eval_every;
    return j;
  }

  int run(std::ostream& os) const {
    const fs::path dir(out_dir);
    const std::vector<std::pair<std::string, WeightingSpec>> variants = {
        {"power-clip", make_power_clip(weighting.x_max, weighting.alpha)},
        {"exp", make_exp_saturating(weighting.lambda)},
    };
    std::vector<fs::path> outputs = {dir / "vocab.txt", dir / "cooccur.bin", dir / "compare.csv",
                                     dir / "compare.txt"};
    for (const auto& [name, spec] : variants) {
      outputs.push_back(dir / ("loss_" + name + ".csv"));
      outputs.push_back(dir / ("vectors_" + name + ".txt"));
      outputs.push_back(dir / ("eval_" + name + ".csv"));
    }
    refuse_overwrite(outputs, force);
    validate(resolve_train(train, variants.front().second));
    fs::create_directories(dir);
    RunManifest m = start_manifest("bench-compare", config(), train.seed, {corpus, questions});

    const auto t0 = std::chrono::steady_clock::now();
    const auto tokens = tokenize_corpus(corpus, corpus_opts);
    const Vocabulary vocab = build_vocab(tokens.tokens, min_count);
    const TokenIdStream stream = encode(tokens.tokens, vocab, tokens.sentence_breaks);
    const CooccurSet set = count_cooccurrences_parallel(stream, count.resolve(), train.threads);
    save_vocab(vocab, dir / "vocab.txt");
    save_records(set.records(), dir / "cooccur.bin");
    const auto qs = load_questions(questions);
    os << fmt::format("{} tokens, |V|={}, {} records, {} questions ({:.1f}s)\n",
                      tokens.tokens.size(), vocab.size(), set.size(), qs.size(), seconds_since(t0));

    std::vector<BenchRow> rows;
    std::map<std::string, EvalReport> finals;
    for (const auto& [name, spec] : variants) {
      const TrainConfig config_values = resolve_train(train, spec);
      const CombineMode mode = parse_combine_mode(train.combine);
      EvalReport last;
      const TrainResult result =
          glove::train(set, config_values, [&](const EpochLoss& e, const ModelParams& p) {
            BenchRow row{name, e.epoch, e.mean_cost, {}, {}, {}};
            const bool due = e.epoch == train.epochs || (eval_every > 0 && e.epoch % eval_every == 0);
            if (due) {
              last = evaluate(export_embeddings(p, vocab, mode), qs, train.threads);
              row.semantic = last.semantic.accuracy();
              row.syntactic = last.syntactic.accuracy();
              row.overall = last.overall.accuracy();
            }
            os << fmt::format("[{}] epoch {:>3}  mean {:.9g}  overall {}  ({:.1f}s)\n", name,
                              e.epoch, e.mean_cost, fmt_percent(row.overall), seconds_since(t0));
            rows.push_back(row);
          });
      save_loss_csv(result.history, dir / ("loss_" + name + ".csv"));
      save_vectors(export_embeddings(result.params, vocab, mode), dir / ("vectors_" + name + ".txt"));
      std::ofstream ecsv(dir / ("eval_" + name + ".csv"), std::ios::binary);
      write_report_csv(last, ecsv);
      finals[name] = last;
    }

    {
      std::ofstream csv(dir / "compare.csv", std::ios::binary);
      csv << "weighting,epoch,mean_cost,semantic_acc,syntactic_acc,overall_acc\n";
      for (const auto& r : rows)
        csv << fmt::format("{},{},{:.17g},{},{},{}\n", r.weighting, r.epoch, r.mean_cost,
                           fmt_fraction(r.semantic), fmt_fraction(r.syntactic),
                           fmt_fraction(r.overall));
    }

    std::string table;
    table += fmt::format("{:>5} {:>18} {:>18} {:>12} {:>12}\n", "epoch", "mean_cost[power-clip]",
                         "mean_cost[exp]", "acc[pc]", "acc[exp]");
    const std::size_t per = rows.size() / variants.size();
    for (std::size_t k = 0; k < per; ++k) {
      const auto& f = rows[k];
      const auto& g = rows[per + k];
      table += fmt::format("{:>5} {:>21.9g} {:>18.9g} {:>12} {:>12}\n", f.epoch, f.mean_cost,
                           g.mean_cost, fmt_percent(f.overall), fmt_percent(g.overall));
    }
    table += fmt::format("\n{:<28} {:>20} {:>20}\n", "final accuracy",
                         describe(variants[0].second), describe(variants[1].second));
    const auto& pc = finals["power-clip"];
    const auto& ex = finals["exp"];
    auto line = [&](const char* label, const Tally& a, const Tally& b) {
      table += fmt::format("{:<28} {:>20} {:>20}\n", label, fmt_percent(a.accuracy()),
                           fmt_percent(b.accuracy()));
    };
    line("semantic", pc.semantic, ex.semantic);
    line("syntactic", pc.syntactic, ex.syntactic);
    line("overall", pc.overall, ex.overall);
    table += fmt::format("{:<28} {:>20} {:>20}\n", "overall (all questions)",
                         fmt_percent(pc.overall.coverage_adjusted()),
                         fmt_percent(ex.overall.coverage_adjusted()));
    table += fmt::format("{:<28} {:>20} {:>20}\n", "attempted / total",
                         fmt::format("{}/{}", pc.overall.attempted, pc.overall.total),
                         fmt::format("{}/{}", ex.overall.attempted, ex.overall.total));
    {
      std::ofstream txt(dir / "compare.txt", std::ios::binary);
      txt << table;
    }
    os << '\n' << table;
    finish_manifest(m, outputs, dir / "manifest.json");
    return kOk;
  }
};

// ---------------------------------------------------------------------------
// rerun

std::vector<std::string> argv_from_manifest(const RunManifest& m) {
  std::vector<std::string> args{m.command};
  for (const auto& [key, value] : m.config.items()) {
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back("--" + key);
    } else if (value.is_string()) {
      if (!value.get<std::string>().empty()) {
        args.push_back("--" + key);
        args.push_back(value.get<std::string>());
      }
    } else if (value.is_number()) {
      args.push_back("--" + key);
      args.push_back(value.dump());
    } else {
      throw DataError("manifest config value for '" + key + "' has an unsupported type");
    }
  }
  return args;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"GloVe trainer with pluggable co-occurrence weighting", "glove"};
  app.require_subcommand(1);
  std::string kernel_choice = "auto";
  app.add_option("--kernels", kernel_choice, "Kernel set: auto | scalar | avx2 | neon")
      ->check(CLI::IsMember({"auto", "scalar", "avx2", "neon"}));

  VocabCmd vocab;
  CooccurCmd cooccur;
  ShuffleCmd shuf;
  TrainCmd train;
  EvalCmd eval;
  SimilarCmd similar;
  AnalogyCmd analogy;
  BenchCmd bench;
  std::string manifest_file;
  bool rerun_force = false;

  std::vector<std::pair<CLI::App*, std::function<int()>>> commands;
  auto add = [&](const char* name, const char* help, auto& cmd) {
    CLI::App* sub = app.add_subcommand(name, help);
    cmd.setup(sub);
    commands.emplace_back(sub, [&cmd, &out] { return cmd.run(out); });
  };
  add("vocab", "Build a vocabulary file from a corpus", vocab);
  add("cooccur", "Count co-occurrences into a record file", cooccur);
  add("shuffle", "Permute a record file", shuf);
  add("train", "Train vectors from co-occurrence records", train);
  add("eval", "Analogy accuracy by question category", eval);
  add("similar", "Cosine similarity for word pairs", similar);
  add("analogy", "Answer one analogy query", analogy);
  add("bench-compare", "Train and evaluate power-clip and exp weighting side by side", bench);
  CLI::App* rerun = app.add_subcommand("rerun", "Replay a run from its manifest");
  rerun->add_option("manifest", manifest_file, "Manifest JSON")->required();
  rerun->add_flag("--force", rerun_force, "Overwrite existing outputs");

  std::vector<std::string> argv_storage{"glove"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (kernel_choice != "auto") {
      for (auto isa : {kernels::Isa::kScalar, kernels::Isa::kAvx2, kernels::Isa::kNeon})
        if (kernels::isa_name(isa) == kernel_choice) kernels::set_active(isa);
    }
    if (rerun->parsed()) {
      const RunManifest m = load_manifest(manifest_file);
      std::vector<std::string> replay;
      if (!m.kernels.empty()) replay = {"--kernels", m.kernels};
      const auto rest = argv_from_manifest(m);
      replay.insert(replay.end(), rest.begin(), rest.end());
      if (rerun_force) replay.push_back("--force");
      return run(replay, out, err);
    }
    for (auto& [sub, fn] : commands)
      if (sub->parsed()) return fn();
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  err << app.help();
  return kUsage;
}

}  // namespace glove::cli
