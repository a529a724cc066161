#ifndef AUTHORLINK_CORPUS_STORE_H_
#define AUTHORLINK_CORPUS_STORE_H_

#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_set>

#include "authorlink/record.h"

namespace authorlink {

// Corpus store layout: a header line "ndcorpus/1", then one JSON object per
// line with keys in the fixed order key, kind, title, source, year, authors.
// Authors are stored as printed (homonym suffix included).
inline constexpr std::string_view kCorpusStoreHeader = "ndcorpus/1";

struct StoreSummary {
  std::size_t records = 0;
  std::size_t mentions = 0;

  bool operator==(const StoreSummary &) const = default;
};

// Serialized form of one record, without the trailing newline.
std::string EncodeRecordLine(const BibRecord &record);

// Parses one store line; throws FormatError tagged with `line_number`.
BibRecord DecodeRecordLine(std::string_view line, std::int64_t line_number);

// Incremental writer; rejects duplicate record keys.
class CorpusStoreWriter {
 public:
  explicit CorpusStoreWriter(const std::string &path);

  void Add(const BibRecord &record);
  StoreSummary Finish();

 private:
  std::string path_;
  std::ofstream out_;
  std::unordered_set<std::string> keys_;
  StoreSummary summary_;
};

StoreSummary WriteCorpusStore(const Corpus &corpus, const std::string &path);
Corpus ReadCorpusStore(const std::string &path);
Corpus ReadCorpusStore(std::istream &in);

}  // namespace authorlink

#endif  // AUTHORLINK_CORPUS_STORE_H_
