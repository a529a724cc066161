#ifndef AUTHORLINK_CHECKPOINT_H_
#define AUTHORLINK_CHECKPOINT_H_

#include <string>

#include "authorlink/adam.h"
#include "authorlink/blocking.h"
#include "authorlink/network.h"

namespace authorlink {

// Everything needed to resume or serve one block model.
//
// File layout:
//   line 1  "authorlink-model/1"
//   line 2  JSON header: variate key, model config, class index, Adam
//           hyperparameters and step, tensor sizes
//   rest    little-endian IEEE-754 doubles: parameters, first moments,
//           second moments, each in ModelParams::Tensors() order
// Values are stored as raw bits, so a reload is bit-exact.
struct Checkpoint {
  std::string variate_key;
  ClassIndex classes;
  ModelParams params;
  AdamState adam;
};

inline constexpr const char *kCheckpointHeader = "authorlink-model/1";

void SaveCheckpoint(const Checkpoint &checkpoint, const std::string &path);

// Throws FormatError on a version mismatch, truncation or trailing bytes.
Checkpoint LoadCheckpoint(const std::string &path);

// Throws InvalidArgument unless the checkpoint's classes match the block's.
void CheckCompatible(const Checkpoint &checkpoint, const Block &block);

}  // namespace authorlink

#endif  // AUTHORLINK_CHECKPOINT_H_
