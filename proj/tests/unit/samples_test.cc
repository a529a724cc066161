#include "doctest.h"

#include <set>

#include "authorlink/error.h"
#include "authorlink/samples.h"
#include "test_util.h"

namespace authorlink {
namespace {

using testing::MakeRecord;

ClassIndex ClassesOf(const BibRecord &r) {
  ClassIndex classes;
  for (const AuthorMention &a : r.authors) classes.Insert(a.author_id);
  return classes;
}

TEST_CASE("omega four gives eight samples") {
  const BibRecord r = MakeRecord("k", {"Lei Wang", "Anna Schmidt", "J. Lee", "Wei Zhang 0003"});
  Rng rng(1);
  const auto samples = GenerateTrainingSamples(r, 0, ClassesOf(r), rng);
  REQUIRE(samples.size() == 8);
  std::set<std::string> full{"Lei Wang", "Anna Schmidt", "J Lee", "Wei Zhang"};
  std::set<std::string> anv{"L Wang", "A Schmidt", "J Lee", "W Zhang"};
  for (int i = 0; i < 8; ++i) {
    const TrainingSample &s = samples[i];
    const bool is_full = i < 4;
    CHECK(s.mode == (is_full ? NameMode::kFull : NameMode::kAnv));
    CHECK(s.target_first_name == (is_full ? "Lei" : "L"));
    const auto &allowed = is_full ? full : anv;
    CHECK(allowed.contains(s.coauthor_p));
    CHECK(allowed.contains(s.coauthor_j));
    CHECK(s.label == 0);
    CHECK(s.title == r.title);
  }
  // Position p is walked in order; both copies share the partner draw.
  CHECK(samples[1].coauthor_p == "Anna Schmidt");
  CHECK(samples[5].coauthor_p == "A Schmidt");
  for (int p = 0; p < 4; ++p) {
    CHECK(NameForms::Of(samples[p].coauthor_j).atomic == samples[p + 4].coauthor_j);
  }
}

TEST_CASE("single-author record uses the empty sentinel") {
  const BibRecord r = MakeRecord("k", {"Lei Wang"});
  Rng rng(1);
  const auto samples = GenerateTrainingSamples(r, 0, ClassesOf(r), rng);
  REQUIRE(samples.size() == 2);
  for (const TrainingSample &s : samples) {
    CHECK(s.coauthor_p.empty());
    CHECK(s.coauthor_j.empty());
  }
  CHECK(samples[0].target_first_name == "Lei");
  CHECK(samples[1].target_first_name == "L");
}

TEST_CASE("same seed, same partners") {
  const BibRecord r = MakeRecord("k", {"A B", "C D", "E F", "G H", "I J"});
  Rng a(42), b(42);
  CHECK(GenerateTrainingSamples(r, 2, ClassesOf(r), a) ==
        GenerateTrainingSamples(r, 2, ClassesOf(r), b));
}

TEST_CASE("sample law over random records") {
  Rng rng(7);
  const std::vector<std::string> pool{"Lei Wang", "Li Wang", "Anna Schmidt", "Bo Chen",
                                      "Jang-Myung Lee", "Madonna", "R. Deriche"};
  for (int trial = 0; trial < 100; ++trial) {
    BibRecord r;
    r.record_key = "r" + std::to_string(trial);
    r.title = "T";
    const int omega = 1 + static_cast<int>(rng.Below(6));
    for (int i = 0; i < omega; ++i) {
      r.authors.push_back(AuthorMention::FromDisplay(pool[rng.Below(pool.size())]));
    }
    const int target = static_cast<int>(rng.Below(omega));
    const auto samples = GenerateTrainingSamples(r, target, ClassesOf(r), rng);
    REQUIRE(samples.size() == 2 * static_cast<std::size_t>(omega));
    std::set<std::string> full_names, anv_names;
    for (const AuthorMention &a : r.authors) {
      full_names.insert(NameForms::Of(a.display_name).full);
      anv_names.insert(NameForms::Of(a.display_name).atomic);
    }
    int full = 0, anv = 0;
    for (const TrainingSample &s : samples) {
      const bool is_full = s.mode == NameMode::kFull;
      (is_full ? full : anv) += 1;
      const auto &names = is_full ? full_names : anv_names;
      if (omega > 1) {
        CHECK(names.contains(s.coauthor_p));
        CHECK(names.contains(s.coauthor_j));
      }
      const NameForms t = NameForms::Of(r.authors[target].display_name);
      CHECK(s.target_first_name == (is_full ? t.first_name : t.initial));
    }
    CHECK(full == omega);
    CHECK(anv == omega);
  }
}

TEST_CASE("bad target position") {
  const BibRecord r = MakeRecord("k", {"A B"});
  Rng rng(1);
  CHECK_THROWS_AS(GenerateTrainingSamples(r, 1, ClassesOf(r), rng), InvalidArgument);
}

TEST_CASE("feature cache matches direct assembly") {
  const Encoders enc = Encoders::Default();
  const BibRecord r = MakeRecord("k", {"Lei Wang", "Anna Schmidt", "Bo Chen"});
  Rng rng(3);
  const auto samples = GenerateTrainingSamples(r, 1, ClassesOf(r), rng);
  FeatureCache cache(enc);
  Eigen::MatrixXd x1(400, samples.size()), x2(768, samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    cache.Fill(samples[i], x1, x2, static_cast<Eigen::Index>(i));
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const FeaturePair f = FeaturesOf(samples[i], enc);
    CHECK(x1.col(i) == f.x1);
    CHECK(x2.col(i) == f.x2);
  }
}

}  // namespace
}  // namespace authorlink
