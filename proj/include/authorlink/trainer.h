#ifndef AUTHORLINK_TRAINER_H_
#define AUTHORLINK_TRAINER_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <vector>

#include "authorlink/adam.h"
#include "authorlink/blocking.h"
#include "authorlink/encoders.h"
#include "authorlink/network.h"
#include "authorlink/split.h"

namespace authorlink {

struct TrainRunConfig {
  int max_epochs = 1000;
  int patience = 50;
  int reassign_interval = 10;
  int batch_size = 64;
  std::uint64_t seed = 0;
  AdamConfig adam;

  void Validate() const;
};

struct EpochRecord {
  int epoch = 0;  // 1-based
  double train_loss = 0.0;
  double val_loss = 0.0;
  double val_accuracy = 0.0;
  bool checkpointed = false;
};

struct TrainingHistory {
  std::vector<EpochRecord> epochs;
  int best_epoch = 0;
  double best_val_accuracy = 0.0;
  bool early_stopped = false;
  // Authors with no validation or no test entries.
  std::vector<AuthorId> unvalidated;
  std::vector<AuthorId> untested;
  // True when there were no validation entries and training-set metrics
  // stood in for validation.
  bool validated_on_train = false;

  // One line per epoch: "epoch\ttrain_loss\tval_loss\tval_accuracy\tckpt".
  void Write(std::ostream &out) const;
};

// Stops after `patience` consecutive epochs without a strictly lower
// validation loss.
class EarlyStopping {
 public:
  explicit EarlyStopping(int patience) : patience_(patience) {}

  // Returns true when training should stop after this epoch.
  bool Update(double val_loss);

  double best() const { return best_; }
  int stale_epochs() const { return stale_; }

 private:
  int patience_;
  int stale_ = 0;
  double best_ = std::numeric_limits<double>::infinity();
};

// Test seams. `adjust_metrics` may rewrite an epoch's validation numbers
// before they drive stopping and checkpointing; `on_epoch_end` sees the
// parameters as they stood when the epoch was scored.
struct TrainHooks {
  std::function<void(EpochRecord &)> adjust_metrics;
  std::function<void(const EpochRecord &, const ModelParams &)> on_epoch_end;
};

struct TrainResult {
  ModelParams best;     // parameters of the best-validation-accuracy epoch
  AdamState best_adam;  // optimizer state at that epoch
  TrainingHistory history;
};

// Trains one block model. `model_config` supplies the architecture; input
// widths and class count are taken from the encoders and the block. Throws
// InvalidArgument if the training split is empty, Error if the loss goes
// non-finite.
TrainResult TrainBlockModel(const Block &block, const SplitAssignment &split,
                            ModelConfig model_config,
                            const TrainRunConfig &run_config,
                            const Encoders &encoders,
                            const TrainHooks &hooks = {});

}  // namespace authorlink

#endif  // AUTHORLINK_TRAINER_H_
