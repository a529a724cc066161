#ifndef AUTHORLINK_EVALUATION_H_
#define AUTHORLINK_EVALUATION_H_

#include <cstddef>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "authorlink/blocking.h"
#include "authorlink/disambiguator.h"
#include "authorlink/encoders.h"
#include "authorlink/network.h"
#include "authorlink/split.h"

namespace authorlink {

enum class EvalMode { kAll, kAnv };

std::string_view EvalModeName(EvalMode mode);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct EvalReport {
  EvalMode mode = EvalMode::kAll;
  std::size_t instances = 0;
  std::vector<ClassMetrics> per_class;
  double micro_precision = 0.0;
  double macro_precision = 0.0;
  double micro_recall = 0.0;
  double macro_recall = 0.0;
  double micro_f1 = 0.0;
  double macro_f1 = 0.0;

  // Rows MaAP, MiAP, MaAR, MiAR, MaAF1, MiAF1, tab-separated.
  void Write(std::ostream &out) const;
};

// Per-class precision/recall/F1 from the confusion counts; macro averages
// over classes with test support, micro from pooled counts. Throws
// InvalidArgument on a length mismatch or out-of-range label.
EvalReport MicroMacroReport(std::span<const int> truths,
                            std::span<const int> preds, int n_classes);

// Predicts every TEST entry of the block: once in ANV form for kAnv, once in
// FULL and once in ANV form for kAll, all pooled into one report.
EvalReport EvaluateBlock(const ModelParams &model, const Block &block,
                         const SplitAssignment &split, EvalMode mode,
                         const Encoders &encoders,
                         Aggregation aggregation = Aggregation::kSum);

}  // namespace authorlink

#endif  // AUTHORLINK_EVALUATION_H_
