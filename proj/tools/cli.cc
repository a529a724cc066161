#include "cli.h"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "authorlink/blocking.h"
#include "authorlink/checkpoint.h"
#include "authorlink/corpus_store.h"
#include "authorlink/dblp_reader.h"
#include "authorlink/disambiguator.h"
#include "authorlink/error.h"
#include "authorlink/evaluation.h"
#include "authorlink/name.h"
#include "authorlink/registry.h"
#include "authorlink/rng.h"
#include "authorlink/split.h"
#include "authorlink/synth.h"
#include "authorlink/trainer.h"
#include "authorlink/unicode.h"

namespace authorlink::cli {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

struct Options {
  std::uint64_t seed = 0;
  std::string config;
  std::string manifest = "authorlink-manifest.jsonl";

  std::string xml;
  std::string corpus;
  std::vector<std::string> blocks;
  std::string out;
  std::string kinds = "article,inproceedings";
  std::size_t top = 5;
  std::string registry_out;

  // train
  int parallel = 1;
  int max_epochs = 1000;
  int patience = 50;
  int reassign_interval = 10;
  int batch_size = 64;
  double learning_rate = 1e-3;
  double dropout = 0.5;
  bool dropout_on_branches = false;
  std::string branch1_hidden = "256";
  std::string branch2_hidden = "256";
  std::string merged_hidden = "256,128";
  int text_dim = kTextDim;
  std::string name_table;
  std::string text_table;

  // predict / evaluate
  std::string model_dir = ".";
  std::string name;
  std::string record_key;
  std::string title;
  std::string source;
  std::vector<std::string> authors;
  std::string mode = "ALL";
  std::string agg = "sum";
  std::size_t top_k = 5;

  // gen-synth
  int n_authors = 20;
  std::string variate = "Y Chen";
  int clique = 5;
  int records = 40;
  int vocab = 30;
  bool shared_full_name = false;
  bool shared_vocab = false;
  std::string truth;
};

// Flat key=value file; '#' starts a comment.
std::map<std::string, std::string> ReadConfigFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file", path);
  std::map<std::string, std::string> values;
  std::string line;
  std::int64_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string trimmed = Trim(line);
    if (trimmed.empty()) continue;
    const std::size_t eq = trimmed.find('=');
    if (eq == std::string::npos) throw FormatError("expected key=value", line_number);
    std::string key = Trim(trimmed.substr(0, eq));
    if (key.starts_with("--")) key = key.substr(2);
    values[key] = Trim(trimmed.substr(eq + 1));
  }
  return values;
}

std::vector<int> ParseWidths(const std::string &text) {
  std::vector<int> widths;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = Trim(item);
    if (item.empty()) continue;
    try {
      widths.push_back(std::stoi(item));
    } catch (const std::exception &) {
      throw InvalidArgument("bad layer width '" + item + "'");
    }
  }
  return widths;
}

std::set<RecordKind> ParseKinds(const std::string &text) {
  std::set<RecordKind> kinds;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = Trim(item);
    if (item.empty()) continue;
    const std::optional<RecordKind> kind = KindFromName(item);
    if (!kind) throw InvalidArgument("unknown record kind '" + item + "'");
    kinds.insert(*kind);
  }
  return kinds;
}

// File-system friendly name of a variate: "Y Chen" -> "y-chen".
std::string Slug(std::string_view text) {
  std::string out;
  for (char c : unicode::CaseFold(text)) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || u >= 0x80) {
      out += c;
    } else if (!out.empty() && out.back() != '-') {
      out += '-';
    }
  }
  while (!out.empty() && out.back() == '-') out.pop_back();
  return out.empty() ? "block" : out;
}

Encoders MakeEncoders(const Options &o) {
  Encoders encoders = Encoders::Default(kNameDim, o.text_dim);
  if (!o.name_table.empty()) {
    encoders.name = TableEncoder::Load(o.name_table, kNameDim, encoders.name);
  }
  if (!o.text_table.empty()) {
    encoders.text = TableEncoder::Load(o.text_table, o.text_dim, encoders.text);
  }
  return encoders;
}

ModelConfig MakeModelConfig(const Options &o) {
  ModelConfig config;
  config.branch1_hidden = ParseWidths(o.branch1_hidden);
  config.branch2_hidden = ParseWidths(o.branch2_hidden);
  config.merged_hidden = ParseWidths(o.merged_hidden);
  config.dropout_rate = o.dropout;
  config.dropout_on_branches = o.dropout_on_branches;
  return config;
}

TrainRunConfig MakeRunConfig(const Options &o) {
  TrainRunConfig config;
  config.max_epochs = o.max_epochs;
  config.patience = o.patience;
  config.reassign_interval = o.reassign_interval;
  config.batch_size = o.batch_size;
  config.adam.learning_rate = o.learning_rate;
  return config;
}

Aggregation ParseAggregation(const std::string &text) {
  return text == "max" ? Aggregation::kMax : Aggregation::kSum;
}

EvalMode ParseMode(const std::string &text) {
  return text == "ANV" ? EvalMode::kAnv : EvalMode::kAll;
}

// Split seeds depend on the master seed and the block only, so `split`,
// `train` and `evaluate` agree.
std::uint64_t SplitSeed(const Options &o, const std::string &key) {
  return StreamSeed(o.seed, "split:" + key);
}

std::ofstream OpenOutput(const std::string &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output", path);
  return out;
}

struct Context {
  const Options &options;
  std::ostream &out;
  std::ostream &err;
  ordered_json counters = ordered_json::object();
  ordered_json outputs = ordered_json::array();
};

struct LoadedCorpus {
  Corpus corpus;
  AuthorRegistry registry;
};

LoadedCorpus LoadCorpus(Context &ctx) {
  LoadedCorpus loaded;
  loaded.corpus = ReadCorpusStore(ctx.options.corpus);
  loaded.registry = AuthorRegistry::Build(loaded.corpus);
  ctx.counters["records"] = loaded.corpus.size();
  return loaded;
}

void Ingest(Context &ctx) {
  const Options &o = ctx.options;
  std::ifstream in(o.xml, std::ios::binary);
  if (!in) throw IoError("cannot open XML input", o.xml);
  DblpReader reader(in, ParseKinds(o.kinds));
  CorpusStoreWriter writer(o.out);
  while (std::optional<BibRecord> record = reader.Next()) writer.Add(*record);
  const StoreSummary summary = writer.Finish();
  ctx.out << "records\t" << summary.records << '\n'
          << "mentions\t" << summary.mentions << '\n'
          << "skipped\t" << reader.skipped() << '\n';
  ctx.counters["records"] = summary.records;
  ctx.counters["mentions"] = summary.mentions;
  ctx.counters["skipped"] = reader.skipped();
  ctx.outputs.push_back(o.out);
}

void Stats(Context &ctx) {
  const Options &o = ctx.options;
  LoadedCorpus loaded = LoadCorpus(ctx);
  const CorpusStats corpus_stats = ComputeCorpusStats(loaded.corpus, loaded.registry);
  std::vector<std::string> keys = o.blocks;
  if (keys.empty()) keys = TopVariates(loaded.registry, o.top);
  std::vector<std::pair<std::string, BlockStats>> rows;
  for (const std::string &key : keys) {
    const Block block = BuildBlock(loaded.corpus, loaded.registry, key);
    rows.emplace_back(block.variate_key, ComputeBlockStats(block));
  }
  std::ostringstream report;
  WriteCorpusStats(report, corpus_stats);
  report << '\n';
  WriteBlockStats(report, rows);
  if (o.out.empty()) {
    ctx.out << report.str();
  } else {
    OpenOutput(o.out) << report.str();
    ctx.outputs.push_back(o.out);
  }
  if (!o.registry_out.empty()) {
    std::ofstream reg = OpenOutput(o.registry_out);
    loaded.registry.Export(reg);
    ctx.outputs.push_back(o.registry_out);
  }
  ctx.counters["authors"] = corpus_stats.authors;
  ctx.counters["names"] = corpus_stats.names;
  ctx.counters["variates"] = corpus_stats.variates;
}

std::string SingleBlock(const Options &o) {
  if (o.blocks.size() != 1) throw InvalidArgument("exactly one --block expected");
  return o.blocks.front();
}

void Split(Context &ctx) {
  const Options &o = ctx.options;
  LoadedCorpus loaded = LoadCorpus(ctx);
  const std::string key = SingleBlock(o);
  const Block block = BuildBlock(loaded.corpus, loaded.registry, key);
  const SplitAssignment split = SplitPerAuthor(block, SplitSeed(o, key));
  if (o.out.empty()) {
    split.Write(ctx.out, block);
  } else {
    std::ofstream file = OpenOutput(o.out);
    split.Write(file, block);
    ctx.outputs.push_back(o.out);
  }
  const auto counts = split.Counts();
  ctx.counters["train"] = counts[0];
  ctx.counters["val"] = counts[1];
  ctx.counters["test"] = counts[2];
}

struct TrainOutcome {
  std::string key;
  std::string error;
  int classes = 0;
  std::size_t epochs = 0;
  int best_epoch = 0;
  double best_val_accuracy = 0.0;
  std::size_t unvalidated = 0;
};

TrainOutcome TrainOne(const Options &o, const LoadedCorpus &loaded,
                      const Encoders &encoders, const std::string &key) {
  TrainOutcome outcome;
  outcome.key = key;
  const Block block = BuildBlock(loaded.corpus, loaded.registry, key);
  const SplitAssignment split = SplitPerAuthor(block, SplitSeed(o, key));
  ModelConfig model_config = MakeModelConfig(o);
  model_config.seed = StreamSeed(o.seed, "init:" + key);
  TrainRunConfig run_config = MakeRunConfig(o);
  run_config.seed = StreamSeed(o.seed, "train:" + key);
  TrainResult result =
      TrainBlockModel(block, split, model_config, run_config, encoders);

  const fs::path base = fs::path(o.out) / Slug(block.variate_key);
  SaveCheckpoint(Checkpoint{block.variate_key, block.classes,
                            std::move(result.best), std::move(result.best_adam)},
                 base.string() + ".model");
  std::ofstream history = OpenOutput(base.string() + ".history.tsv");
  result.history.Write(history);
  std::ofstream split_file = OpenOutput(base.string() + ".split.tsv");
  split.Write(split_file, block);

  outcome.classes = block.classes.size();
  outcome.epochs = result.history.epochs.size();
  outcome.best_epoch = result.history.best_epoch;
  outcome.best_val_accuracy = result.history.best_val_accuracy;
  outcome.unvalidated = result.history.unvalidated.size();
  return outcome;
}

void Train(Context &ctx) {
  const Options &o = ctx.options;
  if (o.blocks.empty()) throw InvalidArgument("at least one --block is required");
  if (o.parallel < 1) throw InvalidArgument("--parallel must be >= 1");
  fs::create_directories(o.out);
  const LoadedCorpus loaded = LoadCorpus(ctx);
  const Encoders encoders = MakeEncoders(o);

  std::vector<TrainOutcome> outcomes(o.blocks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < o.blocks.size(); i = next++) {
      try {
        outcomes[i] = TrainOne(o, loaded, encoders, o.blocks[i]);
      } catch (const std::exception &e) {
        outcomes[i].key = o.blocks[i];
        outcomes[i].error = e.what();
      }
    }
  };
  const int threads = std::min<int>(o.parallel, static_cast<int>(o.blocks.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread &t : pool) t.join();

  std::string failures;
  ctx.out << "block\tclasses\tepochs\tbest_epoch\tbest_val_accuracy\tunvalidated\n";
  for (const TrainOutcome &r : outcomes) {
    if (!r.error.empty()) {
      failures += r.key + ": " + r.error + "; ";
      continue;
    }
    ctx.out << r.key << '\t' << r.classes << '\t' << r.epochs << '\t'
            << r.best_epoch << '\t' << r.best_val_accuracy << '\t'
            << r.unvalidated << '\n';
    ctx.counters[r.key] = {{"epochs", r.epochs}, {"best_epoch", r.best_epoch},
                           {"best_val_accuracy", r.best_val_accuracy}};
  }
  ctx.outputs.push_back(o.out);
  if (!failures.empty()) throw Error("training failed for " + failures);
}

std::string ModelPath(const Options &o, const std::string &variate_key) {
  return (fs::path(o.model_dir) / (Slug(variate_key) + ".model")).string();
}

void Predict(Context &ctx) {
  const Options &o = ctx.options;
  if (o.name.empty()) throw InvalidArgument("--name is required");
  const LoadedCorpus loaded = LoadCorpus(ctx);
  const Route route = RouteName(loaded.registry, o.name);

  ordered_json line;
  line["name"] = o.name;
  line["route"] = std::string(RouteKindName(route.kind));
  line["candidates"] = route.candidate_count;
  if (route.kind == Route::Kind::kUnique) line["author"] = route.author->Render();
  if (route.kind == Route::Kind::kAmbiguous) line["variate"] = route.variate_key;
  ctx.out << line.dump(-1, ' ', false, ordered_json::error_handler_t::replace) << '\n';
  ctx.counters["route"] = line["route"];
  if (route.kind != Route::Kind::kAmbiguous) return;

  BibRecord record;
  if (!o.record_key.empty()) {
    auto it = std::find_if(loaded.corpus.begin(), loaded.corpus.end(),
                           [&](const BibRecord &r) { return r.record_key == o.record_key; });
    if (it == loaded.corpus.end()) {
      throw InvalidArgument("record '" + o.record_key + "' not in corpus");
    }
    record = *it;
    // The queried name stands in for the record's mention of this variate.
    bool replaced = false;
    for (AuthorMention &a : record.authors) {
      if (replaced) break;
      try {
        if (AtomicVariateOf(NormalizeName(a.display_name)).Key() ==
            unicode::CaseFold(route.variate_key)) {
          a = AuthorMention::FromDisplay(o.name);
          replaced = true;
        }
      } catch (const InvalidArgument &) {
      }
    }
    if (!replaced) {
      record.authors.insert(record.authors.begin(), AuthorMention::FromDisplay(o.name));
    }
  } else {
    record.record_key = "query";
    record.title = o.title;
    record.source = o.source;
    const std::string target_key = NameKey(o.name);
    bool has_target = false;
    for (const std::string &a : o.authors) {
      record.authors.push_back(AuthorMention::FromDisplay(a));
      has_target = has_target || NameKey(a) == target_key;
    }
    if (!has_target) {
      record.authors.insert(record.authors.begin(), AuthorMention::FromDisplay(o.name));
    }
  }
  const Checkpoint checkpoint = LoadCheckpoint(ModelPath(o, route.variate_key));
  Options encoder_options = o;
  encoder_options.text_dim = checkpoint.params.config.x2_dim;
  const Prediction prediction = PredictAuthor(
      checkpoint.params, checkpoint.classes, record, o.name,
      o.mode == "ANV" ? NameMode::kAnv : NameMode::kFull,
      MakeEncoders(encoder_options), ParseAggregation(o.agg));
  WritePrediction(ctx.out, o.name, prediction, checkpoint.classes, o.top_k);
  ctx.counters["pair_count"] = prediction.pair_count;
}

void Evaluate(Context &ctx) {
  const Options &o = ctx.options;
  const LoadedCorpus loaded = LoadCorpus(ctx);
  const std::string key = SingleBlock(o);
  const Block block = BuildBlock(loaded.corpus, loaded.registry, key);
  const Checkpoint checkpoint = LoadCheckpoint(ModelPath(o, block.variate_key));
  CheckCompatible(checkpoint, block);

  const fs::path split_path =
      fs::path(o.model_dir) / (Slug(block.variate_key) + ".split.tsv");
  SplitAssignment split;
  if (fs::exists(split_path)) {
    std::ifstream in(split_path);
    split = ReadSplit(in, block);
  } else {
    split = SplitPerAuthor(block, SplitSeed(o, key));
  }
  Options encoder_options = o;
  encoder_options.text_dim = checkpoint.params.config.x2_dim;
  const EvalReport report =
      EvaluateBlock(checkpoint.params, block, split, ParseMode(o.mode),
                    MakeEncoders(encoder_options), ParseAggregation(o.agg));
  if (o.out.empty()) {
    report.Write(ctx.out);
  } else {
    std::ofstream file = OpenOutput(o.out);
    report.Write(file);
    ctx.outputs.push_back(o.out);
  }
  ctx.counters["instances"] = report.instances;
  ctx.counters["micro_f1"] = report.micro_f1;
  ctx.counters["macro_f1"] = report.macro_f1;
}

void GenSynth(Context &ctx) {
  const Options &o = ctx.options;
  SynthConfig config;
  config.n_authors = o.n_authors;
  config.variate_key = o.variate;
  config.clique_size = o.clique;
  config.records_per_author = o.records;
  config.vocab_size = o.vocab;
  config.seed = o.seed;
  config.shared_full_name = o.shared_full_name;
  config.shared_vocabulary = o.shared_vocab;
  const SynthCorpus synth = GenerateSynthCorpus(config);
  const StoreSummary summary = WriteCorpusStore(synth.corpus, o.out);
  const std::string truth = o.truth.empty() ? o.out + ".truth.tsv" : o.truth;
  WriteGroundTruth(synth, truth);
  ctx.out << "records\t" << summary.records << '\n'
          << "mentions\t" << summary.mentions << '\n'
          << "authors\t" << synth.authors.size() << '\n';
  ctx.counters["records"] = summary.records;
  ctx.outputs.push_back(o.out);
  ctx.outputs.push_back(truth);
}

ordered_json OptionSnapshot(const CLI::App &command) {
  ordered_json snapshot = ordered_json::object();
  for (const CLI::Option *opt : command.get_options()) {
    if (opt->get_name() == "--help" || opt->get_lnames().empty()) continue;
    const std::string name = opt->get_lnames().front();
    const std::vector<std::string> &results = opt->results();
    if (!results.empty()) {
      snapshot[name] = results.size() == 1 ? ordered_json(results.front())
                                           : ordered_json(results);
    }
  }
  return snapshot;
}

void AppendManifest(const std::string &path, const ordered_json &entry) {
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw IoError("cannot append to manifest", path);
  out << entry.dump(-1, ' ', false, ordered_json::error_handler_t::replace) << '\n';
}

bool HasFlag(const std::vector<std::string> &args, const std::string &flag) {
  for (const std::string &a : args) {
    if (a == flag || a.starts_with(flag + "=")) return true;
  }
  return false;
}

std::string FlagValue(const std::vector<std::string> &args, const std::string &flag) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == flag && i + 1 < args.size()) return args[i + 1];
    if (args[i].starts_with(flag + "=")) return args[i].substr(flag.size() + 1);
  }
  return {};
}

}  // namespace

int Run(const std::vector<std::string> &input_args, std::ostream &out,
        std::ostream &err) {
  Options o;
  CLI::App app{"Author name disambiguation over DBLP-style corpora", "authorlink"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", o.seed, "Master seed for every random stream");
  app.add_option("--config", o.config, "Flat key=value file; flags win");
  app.add_option("--manifest", o.manifest, "Run manifest (appended)");

  auto *ingest = app.add_subcommand("ingest", "Parse a DBLP XML dump into a corpus store");
  ingest->add_option("--xml", o.xml, "dblp.xml")->required();
  ingest->add_option("--out", o.out, "Corpus store to write")->required();
  ingest->add_option("--kinds", o.kinds, "Comma-separated publication kinds");

  auto *stats = app.add_subcommand("stats", "Corpus and sub-collection statistics");
  stats->add_option("--corpus", o.corpus)->required();
  stats->add_option("--block", o.blocks, "Variate key(s); default: largest");
  stats->add_option("--top", o.top, "Number of largest variates when no --block");
  stats->add_option("--out", o.out, "Report file (default stdout)");
  stats->add_option("--registry-out", o.registry_out, "Export the name registry");

  auto *split = app.add_subcommand("split", "Per-author train/validation/test split");
  split->add_option("--corpus", o.corpus)->required();
  split->add_option("--block", o.blocks)->required();
  split->add_option("--out", o.out, "Split file (default stdout)");

  auto *train = app.add_subcommand("train", "Train block models");
  train->add_option("--corpus", o.corpus)->required();
  train->add_option("--block", o.blocks)->required();
  train->add_option("--out", o.out, "Model directory")->required();
  train->add_option("--parallel", o.parallel, "Blocks trained concurrently");
  train->add_option("--max-epochs", o.max_epochs);
  train->add_option("--patience", o.patience);
  train->add_option("--reassign-interval", o.reassign_interval);
  train->add_option("--batch-size", o.batch_size);
  train->add_option("--learning-rate", o.learning_rate);
  train->add_option("--dropout", o.dropout);
  train->add_flag("--dropout-on-branches", o.dropout_on_branches);
  train->add_option("--branch1-hidden", o.branch1_hidden);
  train->add_option("--branch2-hidden", o.branch2_hidden);
  train->add_option("--merged-hidden", o.merged_hidden);
  train->add_option("--text-dim", o.text_dim);

  auto *predict = app.add_subcommand("predict", "Link one author name");
  predict->add_option("--corpus", o.corpus)->required();
  predict->add_option("--name", o.name)->required();
  predict->add_option("--model-dir", o.model_dir);
  predict->add_option("--record-key", o.record_key, "Take the record from the corpus");
  predict->add_option("--title", o.title);
  predict->add_option("--source", o.source);
  predict->add_option("--author", o.authors, "Record author (repeatable)");
  predict->add_option("--top-k", o.top_k);

  auto *evaluate = app.add_subcommand("evaluate", "Score a block model on its test split");
  evaluate->add_option("--corpus", o.corpus)->required();
  evaluate->add_option("--block", o.blocks)->required();
  evaluate->add_option("--model-dir", o.model_dir);
  evaluate->add_option("--out", o.out, "Report file (default stdout)");

  for (CLI::App *sub : {predict, evaluate}) {
    sub->add_option("--mode", o.mode)->check(CLI::IsMember({"ALL", "ANV"}));
    sub->add_option("--agg", o.agg)->check(CLI::IsMember({"sum", "max"}));
  }
  for (CLI::App *sub : {train, predict, evaluate}) {
    sub->add_option("--name-table", o.name_table, "Precomputed name vectors");
    sub->add_option("--text-table", o.text_table, "Precomputed text vectors");
  }

  auto *gen = app.add_subcommand("gen-synth", "Generate a separable homonym corpus");
  gen->add_option("--out", o.out, "Corpus store to write")->required();
  gen->add_option("--truth", o.truth, "Ground truth file (default <out>.truth.tsv)");
  gen->add_option("--authors", o.n_authors);
  gen->add_option("--variate", o.variate);
  gen->add_option("--clique", o.clique);
  gen->add_option("--records", o.records);
  gen->add_option("--vocab", o.vocab);
  gen->add_flag("--shared-full-name", o.shared_full_name);
  gen->add_flag("--shared-vocab", o.shared_vocab);

  // Config values become flags unless the command line already has them.
  std::vector<std::string> args = input_args;
  try {
    const std::string config_path = FlagValue(args, "--config");
    if (!config_path.empty() && args.size() > 1) {
      CLI::App *command = nullptr;
      std::size_t command_pos = 0;
      for (std::size_t i = 1; i < args.size() && command == nullptr; ++i) {
        for (CLI::App *sub : app.get_subcommands({})) {
          if (sub->get_name() == args[i]) {
            command = sub;
            command_pos = i;
          }
        }
      }
      if (command != nullptr) {
        std::vector<std::string> injected;
        for (const auto &[key, value] : ReadConfigFile(config_path)) {
          const std::string flag = "--" + key;
          if (HasFlag(args, flag)) continue;
          if (command->get_option_no_throw(flag) != nullptr ||
              (flag != "--config" && app.get_option_no_throw(flag) != nullptr)) {
            injected.push_back(flag + "=" + value);
            continue;
          }
          bool known = false;
          for (CLI::App *sub : app.get_subcommands({})) {
            known = known || sub->get_option_no_throw(flag) != nullptr;
          }
          if (!known) {
            err << "unknown config key '" << key << "'\n";
            return kExitUsage;
          }
        }
        args.insert(args.begin() + static_cast<std::ptrdiff_t>(command_pos) + 1,
                    injected.begin(), injected.end());
      }
    }
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App *command = app.get_subcommands().front();
  Context ctx{o, out, err};
  const auto start = std::chrono::steady_clock::now();
  int status = kExitOk;
  std::string failure;
  try {
    const std::string &name = command->get_name();
    if (name == "ingest") {
      Ingest(ctx);
    } else if (name == "stats") {
      Stats(ctx);
    } else if (name == "split") {
      Split(ctx);
    } else if (name == "train") {
      Train(ctx);
    } else if (name == "predict") {
      Predict(ctx);
    } else if (name == "evaluate") {
      Evaluate(ctx);
    } else if (name == "gen-synth") {
      GenSynth(ctx);
    }
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    failure = e.what();
    status = kExitFailure;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  ordered_json manifest;
  manifest["command"] = command->get_name();
  manifest["seed"] = o.seed;
  manifest["config_file"] = o.config;
  manifest["options"] = OptionSnapshot(*command);
  manifest["outputs"] = ctx.outputs;
  manifest["counters"] = ctx.counters;
  manifest["seconds"] = seconds;
  manifest["status"] = status;
  if (!failure.empty()) manifest["error"] = failure;
  try {
    AppendManifest(o.manifest, manifest);
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    status = kExitFailure;
  }
  return status;
}

}  // namespace authorlink::cli
