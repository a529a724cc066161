#include "authorlink/trainer.h"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "authorlink/disambiguator.h"
#include "authorlink/error.h"
#include "authorlink/rng.h"
#include "authorlink/samples.h"

namespace authorlink {
namespace {

constexpr Eigen::Index kEvalChunk = 512;

struct Scored {
  double loss = 0.0;
  double accuracy = 0.0;
};

// Unweighted mean cross-entropy and accuracy in inference mode.
Scored Score(const ModelParams &params, const std::vector<TrainingSample> &samples,
             FeatureCache &cache) {
  Scored scored;
  if (samples.empty()) return scored;
  const auto n = static_cast<Eigen::Index>(samples.size());
  std::size_t correct = 0;
  FeatureBatch batch;
  for (Eigen::Index start = 0; start < n; start += kEvalChunk) {
    const Eigen::Index cols = std::min(kEvalChunk, n - start);
    batch.x1.resize(params.config.x1_dim, cols);
    batch.x2.resize(params.config.x2_dim, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
      cache.Fill(samples[static_cast<std::size_t>(start + c)], batch.x1,
                 batch.x2, c);
    }
    const Eigen::MatrixXd probs =
        ForwardBatch(params, batch, Mode::kInfer, nullptr);
    for (Eigen::Index c = 0; c < cols; ++c) {
      const int y = samples[static_cast<std::size_t>(start + c)].label;
      scored.loss -= std::log(std::max(probs(y, c), kProbabilityFloor));
      if (ArgmaxLowest(probs.col(c)) == y) ++correct;
    }
  }
  scored.loss /= static_cast<double>(n);
  scored.accuracy = static_cast<double>(correct) / static_cast<double>(n);
  return scored;
}

void AppendSamples(const Block &block, const std::vector<std::size_t> &entries,
                   Rng &rng, std::vector<TrainingSample> &out) {
  for (std::size_t i : entries) {
    const BlockEntry &e = block.entries[i];
    std::vector<TrainingSample> samples = GenerateTrainingSamples(
        block.RecordOf(e), e.position, block.classes, rng);
    for (TrainingSample &s : samples) out.push_back(std::move(s));
  }
}

std::string Diagnostics(int epoch, std::size_t batch, double loss) {
  std::ostringstream out;
  out << "non-finite training loss " << loss << " at epoch " << epoch
      << ", batch " << batch;
  return out.str();
}

}  // namespace

void TrainRunConfig::Validate() const {
  if (max_epochs < 1) throw InvalidArgument("max_epochs must be >= 1");
  if (patience < 1) throw InvalidArgument("patience must be >= 1");
  if (reassign_interval < 1) {
    throw InvalidArgument("reassign_interval must be >= 1");
  }
  if (batch_size < 1) throw InvalidArgument("batch_size must be >= 1");
}

void TrainingHistory::Write(std::ostream &out) const {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(17);
  for (const EpochRecord &r : epochs) {
    out << r.epoch << '\t' << r.train_loss << '\t' << r.val_loss << '\t'
        << r.val_accuracy << '\t' << (r.checkpointed ? 1 : 0) << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

bool EarlyStopping::Update(double val_loss) {
  if (val_loss < best_) {
    best_ = val_loss;
    stale_ = 0;
    return false;
  }
  ++stale_;
  return stale_ >= patience_;
}

TrainResult TrainBlockModel(const Block &block, const SplitAssignment &split,
                            ModelConfig model_config,
                            const TrainRunConfig &run_config,
                            const Encoders &encoders, const TrainHooks &hooks) {
  run_config.Validate();
  if (split.per_entry.size() != block.entries.size()) {
    throw InvalidArgument("split does not belong to this block");
  }
  model_config.x1_dim = 2 * encoders.name->dim();
  model_config.x2_dim = encoders.text->dim();
  model_config.n_classes = block.classes.size();

  const std::vector<std::size_t> train_entries = split.EntriesIn(SplitSet::kTrain);
  const std::vector<std::size_t> val_entries = split.EntriesIn(SplitSet::kVal);
  if (train_entries.empty()) throw InvalidArgument("empty training split");

  TrainResult result;
  TrainingHistory &history = result.history;

  // Class weights from training records; classes without any are excluded.
  const auto n_classes = static_cast<std::size_t>(model_config.n_classes);
  std::vector<std::size_t> train_counts(n_classes, 0);
  std::vector<std::size_t> val_counts(n_classes, 0);
  std::vector<std::size_t> test_counts(n_classes, 0);
  for (std::size_t i = 0; i < block.entries.size(); ++i) {
    const auto label = static_cast<std::size_t>(block.entries[i].label);
    switch (split.per_entry[i]) {
      case SplitSet::kTrain: ++train_counts[label]; break;
      case SplitSet::kVal: ++val_counts[label]; break;
      case SplitSet::kTest: ++test_counts[label]; break;
    }
  }
  std::vector<std::size_t> present;
  for (std::size_t c = 0; c < n_classes; ++c) {
    if (train_counts[c] > 0) present.push_back(train_counts[c]);
    if (val_counts[c] == 0) history.unvalidated.push_back(block.classes.At(static_cast<int>(c)));
    if (test_counts[c] == 0) history.untested.push_back(block.classes.At(static_cast<int>(c)));
  }
  const std::vector<double> present_weights = ClassWeights(present);
  std::vector<double> class_weight(n_classes, 0.0);
  for (std::size_t c = 0, k = 0; c < n_classes; ++c) {
    if (train_counts[c] > 0) class_weight[c] = present_weights[k++];
  }

  Rng sample_rng(StreamSeed(run_config.seed, "samples"));
  Rng shuffle_rng(StreamSeed(run_config.seed, "shuffle"));
  Rng dropout_rng(StreamSeed(run_config.seed, "dropout"));
  Rng val_rng(StreamSeed(run_config.seed, "validation"));

  FeatureCache cache(encoders);
  std::vector<TrainingSample> val_samples;
  AppendSamples(block, val_entries, val_rng, val_samples);
  history.validated_on_train = val_samples.empty();

  ModelParams params = InitModel(model_config);
  AdamState adam = AdamState::For(params, run_config.adam);
  result.best = params;
  result.best_adam = adam;

  EarlyStopping stopper(run_config.patience);
  double best_accuracy = -1.0;
  std::vector<TrainingSample> train_samples;
  std::vector<std::size_t> order;
  FeatureBatch batch;
  std::vector<int> labels;
  std::vector<double> weights;

  for (int epoch = 1; epoch <= run_config.max_epochs; ++epoch) {
    if ((epoch - 1) % run_config.reassign_interval == 0) {
      train_samples.clear();
      AppendSamples(block, train_entries, sample_rng, train_samples);
      order.resize(train_samples.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    }
    shuffle_rng.Shuffle(order);

    double loss_sum = 0.0;
    const std::size_t batch_size = static_cast<std::size_t>(run_config.batch_size);
    for (std::size_t start = 0, b = 0; start < order.size(); start += batch_size, ++b) {
      const std::size_t count = std::min(batch_size, order.size() - start);
      const auto cols = static_cast<Eigen::Index>(count);
      batch.x1.resize(model_config.x1_dim, cols);
      batch.x2.resize(model_config.x2_dim, cols);
      labels.resize(count);
      weights.resize(count);
      for (std::size_t k = 0; k < count; ++k) {
        const TrainingSample &s = train_samples[order[start + k]];
        cache.Fill(s, batch.x1, batch.x2, static_cast<Eigen::Index>(k));
        labels[k] = s.label;
        weights[k] = class_weight[static_cast<std::size_t>(s.label)];
      }
      LossAndGrads step = BatchLossAndGradients(params, batch, labels, weights,
                                                Mode::kTrain, &dropout_rng);
      if (!std::isfinite(step.loss)) {
        throw Error(Diagnostics(epoch, b, step.loss));
      }
      AdamStep(params, step.grads, adam);
      loss_sum += step.loss * static_cast<double>(count);
    }

    EpochRecord record;
    record.epoch = epoch;
    record.train_loss = loss_sum / static_cast<double>(order.size());
    const Scored scored = Score(
        params, history.validated_on_train ? train_samples : val_samples, cache);
    record.val_loss = scored.loss;
    record.val_accuracy = scored.accuracy;
    if (hooks.adjust_metrics) hooks.adjust_metrics(record);
    if (!std::isfinite(record.val_loss)) {
      throw Error("non-finite validation loss at epoch " + std::to_string(epoch));
    }

    if (record.val_accuracy > best_accuracy) {
      best_accuracy = record.val_accuracy;
      result.best = params;
      result.best_adam = adam;
      history.best_epoch = epoch;
      history.best_val_accuracy = record.val_accuracy;
      record.checkpointed = true;
    }
    if (hooks.on_epoch_end) hooks.on_epoch_end(record, params);
    history.epochs.push_back(record);
    if (stopper.Update(record.val_loss)) {
      history.early_stopped = true;
      break;
    }
  }
  return result;
}

}  // namespace authorlink
