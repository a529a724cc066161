#include "authorlink/disambiguator.h"

#include <algorithm>
#include <numeric>

#include "json.hpp"

#include "authorlink/error.h"
#include "authorlink/name.h"

namespace authorlink {

std::string_view RouteKindName(Route::Kind kind) {
  switch (kind) {
    case Route::Kind::kNew:
      return "NEW";
    case Route::Kind::kUnique:
      return "UNIQUE";
    case Route::Kind::kAmbiguous:
      return "AMBIGUOUS";
  }
  return "?";
}

Route RouteName(const AuthorRegistry &registry, std::string_view raw_name) {
  const RAResult ra = registry.Resolve(raw_name);
  Route route;
  route.candidate_count = ra.count;
  if (ra.count == 0) {
    route.kind = Route::Kind::kNew;
  } else if (ra.count == 1) {
    route.kind = Route::Kind::kUnique;
    route.author = *ra.candidates.begin();
  } else {
    route.kind = Route::Kind::kAmbiguous;
    route.variate_key = AtomicVariateOf(NormalizeName(raw_name)).Render();
  }
  return route;
}

std::vector<std::pair<int, int>> PoolPairs(int pool_size) {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < pool_size; ++a) {
    for (int b = a + 1; b < pool_size; ++b) pairs.emplace_back(a, b);
  }
  return pairs;
}

Eigen::VectorXd AggregateScores(const std::vector<Eigen::VectorXd> &per_pair,
                                Aggregation aggregation) {
  if (per_pair.empty()) throw InvalidArgument("nothing to aggregate");
  const Eigen::Index n = per_pair.front().size();
  for (const Eigen::VectorXd &v : per_pair) {
    if (v.size() != n) {
      throw InvalidArgument("probability vectors of different lengths");
    }
  }
  Eigen::VectorXd scores(n);
  std::vector<double> column(per_pair.size());
  for (Eigen::Index c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < per_pair.size(); ++i) column[i] = per_pair[i][c];
    if (aggregation == Aggregation::kMax) {
      scores[c] = *std::max_element(column.begin(), column.end());
      continue;
    }
    // Summing in sorted order makes the result independent of pair order.
    std::sort(column.begin(), column.end());
    double sum = 0.0;
    for (double v : column) sum += v;
    scores[c] = sum;
  }
  return scores;
}

int ArgmaxLowest(const Eigen::VectorXd &scores) {
  int best = 0;
  for (Eigen::Index i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = static_cast<int>(i);
  }
  return best;
}

Prediction PredictAuthor(const ModelParams &model, const ClassIndex &classes,
                         const BibRecord &record, std::string_view target_name,
                         NameMode mode, const Encoders &encoders,
                         Aggregation aggregation) {
  if (model.config.n_classes != classes.size()) {
    throw InvalidArgument("model has " + std::to_string(model.config.n_classes) +
                          " classes but the class index has " +
                          std::to_string(classes.size()));
  }
  if (record.authors.empty()) throw InvalidArgument("record has no authors");

  const NameForms target = NameForms::Of(target_name);
  Prediction prediction;
  for (const AuthorMention &a : record.authors) {
    prediction.pool.push_back(NameForms::Of(a.display_name).Name(mode));
  }
  prediction.pool.push_back(target.Name(mode));

  const auto pairs = PoolPairs(static_cast<int>(prediction.pool.size()));
  prediction.pair_count = pairs.size();
  std::vector<FeaturePair> features;
  features.reserve(pairs.size());
  for (const auto &[a, b] : pairs) {
    features.push_back(AssembleFeatures(target.First(mode), prediction.pool[a],
                                        prediction.pool[b], record.title,
                                        record.source, encoders));
  }
  const Eigen::MatrixXd probs =
      ForwardBatch(model, MakeBatch(features), Mode::kInfer, nullptr);
  std::vector<Eigen::VectorXd> per_pair;
  per_pair.reserve(pairs.size());
  for (Eigen::Index c = 0; c < probs.cols(); ++c) per_pair.push_back(probs.col(c));

  prediction.scores = AggregateScores(per_pair, aggregation);
  prediction.chosen = ArgmaxLowest(prediction.scores);
  prediction.chosen_author = classes.At(prediction.chosen);
  prediction.ranked.resize(static_cast<std::size_t>(classes.size()));
  std::iota(prediction.ranked.begin(), prediction.ranked.end(), 0);
  std::stable_sort(prediction.ranked.begin(), prediction.ranked.end(),
                   [&](int a, int b) {
                     return prediction.scores[a] > prediction.scores[b];
                   });
  return prediction;
}

void WritePrediction(std::ostream &out, std::string_view target_name,
                     const Prediction &prediction, const ClassIndex &classes,
                     std::size_t top_k) {
  nlohmann::ordered_json j;
  j["target"] = std::string(target_name);
  j["pool"] = prediction.pool;
  j["pair_count"] = prediction.pair_count;
  j["chosen"] = prediction.chosen_author.Render();
  nlohmann::ordered_json top = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < prediction.ranked.size() && i < top_k; ++i) {
    const int label = prediction.ranked[i];
    top.push_back({classes.At(label).Render(), prediction.scores[label]});
  }
  j["top"] = std::move(top);
  out << j.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace)
      << '\n';
}

}  // namespace authorlink
