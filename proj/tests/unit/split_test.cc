#include "doctest.h"

#include <sstream>

#include "authorlink/blocking.h"
#include "authorlink/error.h"
#include "authorlink/split.h"
#include "test_util.h"

namespace authorlink {
namespace {

using testing::MakeRecord;

// "Yi Chen" with 20 records, "Yu Chen" with 2, "Yan Chen" with 1.
Block ThreeAuthorBlock() {
  Corpus corpus;
  for (int i = 0; i < 20; ++i) {
    corpus.push_back(MakeRecord("yi/" + std::to_string(i), {"Yi Chen", "Co Author"}));
  }
  corpus.push_back(MakeRecord("yu/0", {"Yu Chen"}));
  corpus.push_back(MakeRecord("yu/1", {"A B", "Yu Chen"}));
  corpus.push_back(MakeRecord("yan/0", {"Yan Chen"}));
  const AuthorRegistry registry = AuthorRegistry::Build(corpus);
  return BuildBlock(corpus, registry, "Y Chen");
}

using Quota = std::array<std::size_t, 3>;

TEST_CASE("quotas by hand") {
  CHECK(SplitQuotas(0) == Quota{0, 0, 0});
  CHECK(SplitQuotas(1) == Quota{1, 0, 0});
  CHECK(SplitQuotas(2) == Quota{1, 0, 1});
  CHECK(SplitQuotas(3) == Quota{2, 0, 1});
  CHECK(SplitQuotas(5) == Quota{4, 1, 0});
  CHECK(SplitQuotas(6) == Quota{4, 1, 1});
  CHECK(SplitQuotas(10) == Quota{7, 2, 1});
  CHECK(SplitQuotas(20) == Quota{14, 3, 3});
  CHECK(SplitQuotas(40) == Quota{28, 6, 6});
  for (std::size_t n = 1; n < 500; ++n) {
    const Quota q = SplitQuotas(n);
    CHECK(q[0] + q[1] + q[2] == n);
    CHECK(q[0] >= 1);
  }
}

TEST_CASE("per-author split") {
  const Block block = ThreeAuthorBlock();
  const SplitAssignment split = SplitPerAuthor(block, 5);
  REQUIRE(split.per_entry.size() == block.entries.size());
  std::map<int, Quota> per_class;
  for (std::size_t i = 0; i < block.entries.size(); ++i) {
    ++per_class[block.entries[i].label][static_cast<int>(split.per_entry[i])];
  }
  const int yi = block.classes.Of({"Yi Chen", 0});
  const int yu = block.classes.Of({"Yu Chen", 0});
  const int yan = block.classes.Of({"Yan Chen", 0});
  CHECK(per_class[yi] == Quota{14, 3, 3});
  CHECK(per_class[yu] == Quota{1, 0, 1});
  CHECK(per_class[yan] == Quota{1, 0, 0});
  CHECK(split.Counts() == Quota{16, 3, 4});
  const auto all = split.EntriesIn(SplitSet::kTrain).size() +
                   split.EntriesIn(SplitSet::kVal).size() +
                   split.EntriesIn(SplitSet::kTest).size();
  CHECK(all == block.entries.size());
}

TEST_CASE("split is reproducible and seed dependent") {
  const Block block = ThreeAuthorBlock();
  CHECK(SplitPerAuthor(block, 9) == SplitPerAuthor(block, 9));
  bool differs = false;
  for (std::uint64_t s = 10; s < 20 && !differs; ++s) {
    differs = !(SplitPerAuthor(block, s) == SplitPerAuthor(block, 9));
  }
  CHECK(differs);
  std::ostringstream a, b;
  SplitPerAuthor(block, 9).Write(a, block);
  SplitPerAuthor(block, 9).Write(b, block);
  CHECK(a.str() == b.str());
}

TEST_CASE("split file round trip") {
  const Block block = ThreeAuthorBlock();
  const SplitAssignment split = SplitPerAuthor(block, 3);
  std::ostringstream out;
  split.Write(out, block);
  std::istringstream in(out.str());
  CHECK(ReadSplit(in, block) == split);
  std::istringstream partial("yi/0\tYi Chen\tTRAIN\n");
  CHECK_THROWS_AS(ReadSplit(partial, block), FormatError);
  std::istringstream bad_set(out.str() + "yi/0\tYi Chen\tHOLDOUT\n");
  CHECK_THROWS_AS(ReadSplit(bad_set, block), FormatError);
}

}  // namespace
}  // namespace authorlink
