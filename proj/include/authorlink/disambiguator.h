#ifndef AUTHORLINK_DISAMBIGUATOR_H_
#define AUTHORLINK_DISAMBIGUATOR_H_

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "authorlink/blocking.h"
#include "authorlink/encoders.h"
#include "authorlink/network.h"
#include "authorlink/record.h"
#include "authorlink/registry.h"
#include "authorlink/samples.h"

namespace authorlink {

struct Route {
  enum class Kind { kNew, kUnique, kAmbiguous };

  Kind kind = Kind::kNew;
  std::optional<AuthorId> author;  // set for kUnique
  std::string variate_key;         // atomic variate, set for kAmbiguous
  std::size_t candidate_count = 0;
};

std::string_view RouteKindName(Route::Kind kind);

// NEW for an unknown name, UNIQUE for exactly one matching author,
// AMBIGUOUS (routed to the name's atomic variate model) otherwise.
Route RouteName(const AuthorRegistry &registry, std::string_view raw_name);

enum class Aggregation { kSum, kMax };

// Unordered index pairs (a < b) over a pool of `pool_size` names.
std::vector<std::pair<int, int>> PoolPairs(int pool_size);

// Element-wise sum (or max) of per-pair probability vectors.
Eigen::VectorXd AggregateScores(const std::vector<Eigen::VectorXd> &per_pair,
                                Aggregation aggregation);

// Index of the largest value; ties go to the lowest index.
int ArgmaxLowest(const Eigen::VectorXd &scores);

struct Prediction {
  std::vector<std::string> pool;  // record authors plus the target name
  std::size_t pair_count = 0;
  Eigen::VectorXd scores;
  std::vector<int> ranked;  // labels by non-increasing score
  int chosen = 0;
  AuthorId chosen_author;
};

// Scores every unordered pair drawn from the record's author names plus the
// target name, and sums the model's probability vectors. Throws
// InvalidArgument if the model and class index disagree on the class count
// or the record has no authors.
Prediction PredictAuthor(const ModelParams &model, const ClassIndex &classes,
                         const BibRecord &record, std::string_view target_name,
                         NameMode mode, const Encoders &encoders,
                         Aggregation aggregation = Aggregation::kSum);

// JSON line: target, pool, pair count, chosen author and top-k scores.
void WritePrediction(std::ostream &out, std::string_view target_name,
                     const Prediction &prediction, const ClassIndex &classes,
                     std::size_t top_k = 5);

}  // namespace authorlink

#endif  // AUTHORLINK_DISAMBIGUATOR_H_
