#ifndef AUTHORLINK_SAMPLES_H_
#define AUTHORLINK_SAMPLES_H_

#include <string>
#include <unordered_map>
#include <string_view>
#include <vector>

#include "authorlink/blocking.h"
#include "authorlink/encoders.h"
#include "authorlink/record.h"
#include "authorlink/rng.h"

namespace authorlink {

// FULL uses full normalized names, ANV atomic variates; a sample never mixes
// the two.
enum class NameMode { kFull, kAnv };

std::string_view NameModeName(NameMode mode);

struct TrainingSample {
  std::string target_first_name;
  std::string coauthor_p;
  std::string coauthor_j;
  std::string title;
  std::string source;
  int label = 0;
  NameMode mode = NameMode::kFull;
  std::string record_key;

  bool operator==(const TrainingSample &) const = default;
};

// Name forms used by the model for one printed author name. Names that
// normalize to nothing map to the empty sentinel.
struct NameForms {
  std::string full;        // "Lei Wang"
  std::string atomic;      // "L Wang"
  std::string first_name;  // "Lei"
  std::string initial;     // "L"

  static NameForms Of(std::string_view printed);

  const std::string &Name(NameMode mode) const {
    return mode == NameMode::kFull ? full : atomic;
  }
  const std::string &First(NameMode mode) const {
    return mode == NameMode::kFull ? first_name : initial;
  }
};

// One sample per co-author position p (the target's own position included),
// each with a partner j drawn uniformly from the record's authors, then the
// same omega samples again in ANV form: 2 * omega samples in total. A
// single-author record uses the empty name for both co-author slots.
std::vector<TrainingSample> GenerateTrainingSamples(const BibRecord &record,
                                                    int target_position,
                                                    const ClassIndex &classes,
                                                    Rng &rng);

FeaturePair FeaturesOf(const TrainingSample &sample, const Encoders &encoders);

// Memoizes encoder outputs so each distinct string is encoded once. Returned
// references stay valid for the cache's lifetime. Not thread-safe.
class FeatureCache {
 public:
  explicit FeatureCache(const Encoders &encoders) : encoders_(encoders) {}

  const Eigen::VectorXd &Name(const std::string &text);
  const Eigen::VectorXd &Text(const std::string &text);

  // Writes the features of `sample` into column `col` of the two matrices;
  // bit-identical to FeaturesOf.
  void Fill(const TrainingSample &sample, Eigen::MatrixXd &x1,
            Eigen::MatrixXd &x2, Eigen::Index col);

 private:
  const Encoders &encoders_;
  std::unordered_map<std::string, Eigen::VectorXd> names_;
  std::unordered_map<std::string, Eigen::VectorXd> texts_;
};

}  // namespace authorlink

#endif  // AUTHORLINK_SAMPLES_H_
