#include "doctest.h"

#include <sstream>

#include "authorlink/dblp_reader.h"
#include "authorlink/error.h"
#include "authorlink/record.h"
#include "test_util.h"

namespace authorlink {
namespace {

std::vector<BibRecord> ParseAll(const std::string &xml, std::int64_t *skipped = nullptr) {
  std::istringstream in(xml);
  DblpReader reader(in);
  std::vector<BibRecord> out;
  while (auto r = reader.Next()) out.push_back(std::move(*r));
  if (skipped != nullptr) *skipped = reader.skipped();
  return out;
}

TEST_CASE("author ids split the homonym suffix") {
  CHECK(ParseAuthorId("Bing Li 0001") == AuthorId{"Bing Li", 1});
  CHECK(ParseAuthorId("Bing Li 0002") == AuthorId{"Bing Li", 2});
  CHECK(ParseAuthorId("Bing Li") == AuthorId{"Bing Li", 0});
  CHECK(ParseAuthorId("Bing Li 0000") == AuthorId{"Bing Li 0000", 0});
  CHECK(ParseAuthorId("Bing Li 001") == AuthorId{"Bing Li 001", 0});
  CHECK(ParseAuthorId("Bing Li 00012") == AuthorId{"Bing Li 00012", 0});
  CHECK(ParseAuthorId("0001") == AuthorId{"0001", 0});
}

TEST_CASE("suffix parse round-trips through rendering") {
  for (int i : {1, 2, 9, 10, 123, 9999}) {
    const AuthorId id{"Wei Chen", i};
    CHECK(ParseAuthorId(id.Render()) == id);
  }
  CHECK(AuthorId{"Wei Chen", 2}.Render() == "Wei Chen 0002");
}

TEST_CASE("trim handles ASCII and wide spaces") {
  CHECK(Trim("  a b \t\n") == "a b");
  CHECK(Trim("\xC2\xA0x\xE3\x80\x80") == "x");
  CHECK(Trim("   ").empty());
}

TEST_CASE("article with a suffixed author") {
  const auto records = ParseAll(
      "<dblp><article key=\"k1\"><author>Bing Li 0001</author>"
      "<author>Wei Chen</author><title>T</title><journal>J</journal>"
      "<year>2020</year></article></dblp>");
  REQUIRE(records.size() == 1);
  const BibRecord &r = records[0];
  CHECK(r.kind == RecordKind::kArticle);
  CHECK(r.source == "J");
  CHECK(r.year == 2020);
  REQUIRE(r.authors.size() == 2);
  CHECK(r.authors[0].author_id == AuthorId{"Bing Li", 1});
  CHECK(r.authors[1].author_id == AuthorId{"Wei Chen", 0});
}

TEST_CASE("empty inputs") {
  std::int64_t skipped = -1;
  CHECK(ParseAll("", &skipped).empty());
  CHECK(skipped == 0);
  CHECK(ParseAll("<dblp></dblp>", &skipped).empty());
  CHECK(skipped == 0);
}

TEST_CASE("unknown children are ignored, incomplete records skipped") {
  std::int64_t skipped = 0;
  const auto records = ParseAll(
      "<dblp>"
      "<inproceedings key=\"a\"><author>X Y</author><title>T</title>"
      "<crossref>conf/x</crossref><note type=\"n\">z</note>"
      "<booktitle>B</booktitle></inproceedings>"
      "<article key=\"b\"><title>No authors</title></article>"
      "<article key=\"c\"><author>X Y</author></article>"
      "<article><author>X Y</author><title>No key</title></article>"
      "<www key=\"homepages/x\"><author>X Y</author><title>Home</title></www>"
      "</dblp>",
      &skipped);
  REQUIRE(records.size() == 1);
  CHECK(records[0].source == "B");
  CHECK(records[0].year == 0);
  CHECK(skipped == 3);
}

TEST_CASE("entities and nested markup") {
  const auto records = ParseAll(
      "<?xml version=\"1.0\" encoding=\"ISO-8859-1\"?>"
      "<!DOCTYPE dblp SYSTEM \"dblp.dtd\">"
      "<dblp><article key=\"k\"><author>J&ouml;rg M&uuml;ller</author>"
      "<title>On <i>H</i><sub>2</sub> &amp; more</title></article></dblp>");
  REQUIRE(records.size() == 1);
  CHECK(records[0].authors[0].display_name == "J\xC3\xB6rg M\xC3\xBCller");
  CHECK(records[0].title == "On H2 & more");
}

TEST_CASE("malformed XML reports a byte offset") {
  try {
    ParseAll("<dblp><article key=\"k\"><title>x</article></dblp>");
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(std::string(e.what()).find("at byte") != std::string::npos);
  }
  CHECK_THROWS_AS(ParseAll("<dblp><article key=\"k\"><title>&bogus;</title>"
                           "</article></dblp>"),
                  ParseError);
}

TEST_CASE("kind filter") {
  const std::string xml =
      "<dblp><book key=\"b\"><author>A B</author><title>T</title></book>"
      "<article key=\"a\"><author>A B</author><title>T</title></article></dblp>";
  CHECK(ParseAll(xml).size() == 1);
  std::istringstream in(xml);
  DblpReader reader(in, {RecordKind::kBook});
  auto r = reader.Next();
  REQUIRE(r.has_value());
  CHECK(r->kind == RecordKind::kBook);
  CHECK_FALSE(reader.Next().has_value());
}

// Produces a long DBLP document on demand, without holding it in memory.
class GeneratedDblp : public std::streambuf {
 public:
  explicit GeneratedDblp(int records) : remaining_(records) {
    buffer_ = "<dblp>";
    setg(buffer_.data(), buffer_.data(), buffer_.data() + buffer_.size());
  }
  std::size_t produced() const { return produced_; }

 protected:
  int_type underflow() override {
    if (remaining_ < 0) return traits_type::eof();
    if (remaining_ == 0) {
      buffer_ = "</dblp>";
    } else {
      buffer_ = "<article key=\"g/" + std::to_string(remaining_) +
                "\"><author>Gen Author</author><title>Generated title number " +
                std::to_string(remaining_) + ".</title><journal>G</journal></article>\n";
    }
    --remaining_;
    produced_ += buffer_.size();
    setg(buffer_.data(), buffer_.data(), buffer_.data() + buffer_.size());
    return traits_type::to_int_type(buffer_[0]);
  }

 private:
  int remaining_;
  std::string buffer_;
  std::size_t produced_ = 0;
};

TEST_CASE("reader consumes input incrementally") {
  GeneratedDblp source(100000);
  std::istream in(&source);
  DblpReader reader(in);
  REQUIRE(reader.Next().has_value());
  // Only the first chunk has been pulled when the first record surfaces.
  CHECK(reader.bytes_read() <= (1 << 16));
  std::size_t count = 1;
  while (reader.Next()) ++count;
  CHECK(count == 100000);
  CHECK(source.produced() > 9'000'000);
}

}  // namespace
}  // namespace authorlink
