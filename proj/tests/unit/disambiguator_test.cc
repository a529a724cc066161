#include "doctest.h"

#include <sstream>

#include "authorlink/disambiguator.h"
#include "authorlink/error.h"
#include "authorlink/registry.h"
#include "test_util.h"

namespace authorlink {
namespace {

using testing::MakeRecord;

TEST_CASE("routing by correspondence frequency") {
  const Corpus corpus{MakeRecord("1", {"Bing Li 0001", "Wei Chen"}),
                      MakeRecord("2", {"Bing Li 0002"})};
  const AuthorRegistry registry = AuthorRegistry::Build(corpus);
  const Route unknown = RouteName(registry, "Nobody Known");
  CHECK(unknown.kind == Route::Kind::kNew);
  CHECK(unknown.candidate_count == 0);
  const Route unique = RouteName(registry, "Wei Chen");
  CHECK(unique.kind == Route::Kind::kUnique);
  CHECK(unique.author == AuthorId{"Wei Chen", 0});
  const Route ambiguous = RouteName(registry, "Bing Li");
  CHECK(ambiguous.kind == Route::Kind::kAmbiguous);
  CHECK(ambiguous.variate_key == "B Li");
  CHECK(ambiguous.candidate_count == 2);
  CHECK(RouteKindName(ambiguous.kind) == "AMBIGUOUS");
}

TEST_CASE("pair enumeration") {
  for (int omega = 1; omega <= 8; ++omega) {
    CHECK(PoolPairs(omega + 1).size() ==
          static_cast<std::size_t>((omega + 1) * omega / 2));
  }
  CHECK(PoolPairs(3) == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
}

TEST_CASE("sum aggregation and argmax") {
  Eigen::VectorXd a(2), b(2);
  a << 0.2, 0.8;
  b << 0.6, 0.4;
  const Eigen::VectorXd s = AggregateScores({a, b}, Aggregation::kSum);
  CHECK(s[0] == doctest::Approx(0.8));
  CHECK(s[1] == doctest::Approx(1.2));
  CHECK(ArgmaxLowest(s) == 1);
  const Eigen::VectorXd m = AggregateScores({a, b}, Aggregation::kMax);
  CHECK(m[0] == 0.6);
  CHECK(m[1] == 0.8);
  Eigen::VectorXd tie(3);
  tie << 0.5, 0.5, 0.1;
  CHECK(ArgmaxLowest(tie) == 0);
  CHECK_THROWS_AS(AggregateScores({}, Aggregation::kSum), InvalidArgument);
}

TEST_CASE("aggregation ignores pair order and common scaling") {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Eigen::VectorXd> vs;
    const int pairs = 1 + static_cast<int>(rng.Below(15));
    for (int i = 0; i < pairs; ++i) {
      Eigen::VectorXd v(5);
      for (auto &x : v) x = rng.Uniform();
      vs.push_back(v / v.sum());
    }
    const Eigen::VectorXd base = AggregateScores(vs, Aggregation::kSum);
    std::vector<Eigen::VectorXd> shuffled = vs;
    rng.Shuffle(shuffled);
    CHECK(AggregateScores(shuffled, Aggregation::kSum) == base);
    for (auto &v : shuffled) v *= 3.7;
    CHECK(ArgmaxLowest(AggregateScores(shuffled, Aggregation::kSum)) == ArgmaxLowest(base));
  }
}

struct Fixture {
  Encoders encoders = Encoders::Default();
  ClassIndex classes;
  ModelParams model;
  Fixture() {
    classes = ClassIndex({{"Yi Chen", 0}, {"Yu Chen", 0}, {"Yan Chen", 0}, {"Yue Chen", 0}});
    ModelConfig c;
    c.branch1_hidden = {16};
    c.branch2_hidden = {16};
    c.merged_hidden = {16};
    c.n_classes = 4;
    c.seed = 31;
    model = InitModel(c);
  }
};

// Independent enumeration: every unordered pair of pool names, one forward
// pass each, summed in enumeration order.
int BruteForce(const Fixture &f, const BibRecord &r, const std::string &target,
               NameMode mode, std::size_t *pairs) {
  std::vector<std::string> pool;
  for (const AuthorMention &a : r.authors) pool.push_back(NameForms::Of(a.display_name).Name(mode));
  pool.push_back(NameForms::Of(target).Name(mode));
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(4);
  *pairs = 0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      const FeaturePair x = AssembleFeatures(NameForms::Of(target).First(mode), pool[i],
                                             pool[j], r.title, r.source, f.encoders);
      sum += Forward(f.model, x, Mode::kInfer);
      ++*pairs;
    }
  }
  int best = 0;
  for (int c = 1; c < 4; ++c) {
    if (sum[c] > sum[best]) best = c;
  }
  return best;
}

TEST_CASE("prediction matches brute-force enumeration") {
  const Fixture f;
  Rng rng(2);
  const std::vector<std::string> names{"Yi Chen", "Yu Chen", "Anna Schmidt", "Bo Li",
                                       "Kenji Tanaka", "Luca Rossi"};
  for (int trial = 0; trial < 40; ++trial) {
    BibRecord r;
    r.record_key = "r";
    r.title = "Title " + std::to_string(trial);
    r.source = trial % 2 == 0 ? "KDD" : "";
    const int omega = 1 + static_cast<int>(rng.Below(5));
    for (int i = 0; i < omega; ++i) {
      r.authors.push_back(AuthorMention::FromDisplay(names[rng.Below(names.size())]));
    }
    const NameMode mode = trial % 3 == 0 ? NameMode::kAnv : NameMode::kFull;
    const Prediction p = PredictAuthor(f.model, f.classes, r, "Yi Chen", mode, f.encoders);
    std::size_t pairs = 0;
    CHECK(p.chosen == BruteForce(f, r, "Yi Chen", mode, &pairs));
    CHECK(p.pair_count == pairs);
    CHECK(p.pair_count == static_cast<std::size_t>((omega + 1) * omega / 2));
    CHECK(p.pool.size() == static_cast<std::size_t>(omega + 1));
    CHECK(p.chosen_author == f.classes.At(p.chosen));
    for (std::size_t k = 1; k < p.ranked.size(); ++k) {
      CHECK(p.scores[p.ranked[k - 1]] >= p.scores[p.ranked[k]]);
    }
  }
}

TEST_CASE("three co-authors give six pairs") {
  const Fixture f;
  const BibRecord r = MakeRecord("k", {"Yi Chen", "Anna Schmidt", "Bo Li"});
  CHECK(PredictAuthor(f.model, f.classes, r, "Yi Chen", NameMode::kFull, f.encoders)
            .pair_count == 6);
}

TEST_CASE("prediction errors and output") {
  const Fixture f;
  ClassIndex fewer({{"Yi Chen", 0}});
  const BibRecord r = MakeRecord("k", {"Yi Chen", "Anna Schmidt"});
  CHECK_THROWS_AS(PredictAuthor(f.model, fewer, r, "Yi Chen", NameMode::kFull, f.encoders),
                  InvalidArgument);
  BibRecord empty = r;
  empty.authors.clear();
  CHECK_THROWS_AS(PredictAuthor(f.model, f.classes, empty, "Yi Chen", NameMode::kFull,
                                f.encoders),
                  InvalidArgument);
  const Prediction p = PredictAuthor(f.model, f.classes, r, "Yi Chen", NameMode::kAnv,
                                     f.encoders, Aggregation::kMax);
  CHECK(p.pool == std::vector<std::string>{"Y Chen", "A Schmidt", "Y Chen"});
  std::ostringstream out;
  WritePrediction(out, "Yi Chen", p, f.classes, 2);
  const std::string line = out.str();
  CHECK(line.find("\"pair_count\":3") != std::string::npos);
  CHECK(line.find("\"target\":\"Yi Chen\"") != std::string::npos);
  CHECK(line.back() == '\n');
}

}  // namespace
}  // namespace authorlink
