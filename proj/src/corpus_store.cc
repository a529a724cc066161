#include "authorlink/corpus_store.h"

#include "json.hpp"

#include <sstream>

#include "authorlink/error.h"

namespace authorlink {
namespace {

using ordered_json = nlohmann::ordered_json;

}  // namespace

std::string EncodeRecordLine(const BibRecord &record) {
  ordered_json j;
  j["key"] = record.record_key;
  j["kind"] = std::string(KindName(record.kind));
  j["title"] = record.title;
  j["source"] = record.source;
  j["year"] = record.year;
  ordered_json authors = ordered_json::array();
  for (const AuthorMention &a : record.authors) authors.push_back(a.display_name);
  j["authors"] = std::move(authors);
  return j.dump(-1, ' ', false, ordered_json::error_handler_t::replace);
}

BibRecord DecodeRecordLine(std::string_view line, std::int64_t line_number) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const nlohmann::json::parse_error &e) {
    throw FormatError(std::string("corrupt record: ") + e.what(), line_number);
  }
  try {
    BibRecord record;
    record.record_key = j.at("key").get<std::string>();
    const std::string kind = j.at("kind").get<std::string>();
    const std::optional<RecordKind> parsed = KindFromName(kind);
    if (!parsed) throw FormatError("unknown kind '" + kind + "'", line_number);
    record.kind = *parsed;
    record.title = j.at("title").get<std::string>();
    record.source = j.at("source").get<std::string>();
    record.year = j.at("year").get<int>();
    for (const auto &a : j.at("authors")) {
      record.authors.push_back(AuthorMention::FromDisplay(a.get<std::string>()));
    }
    if (record.record_key.empty() || record.title.empty() ||
        record.authors.empty()) {
      throw FormatError("record lacks key, title or authors", line_number);
    }
    return record;
  } catch (const nlohmann::json::exception &e) {
    throw FormatError(std::string("bad record field: ") + e.what(),
                      line_number);
  } catch (const InvalidArgument &e) {
    throw FormatError(e.what(), line_number);
  }
}

CorpusStoreWriter::CorpusStoreWriter(const std::string &path)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw IoError("cannot open corpus store for writing", path);
  out_ << kCorpusStoreHeader << '\n';
}

void CorpusStoreWriter::Add(const BibRecord &record) {
  if (!keys_.insert(record.record_key).second) {
    throw InvalidArgument("duplicate record key '" + record.record_key +
                          "' in " + path_);
  }
  out_ << EncodeRecordLine(record) << '\n';
  if (!out_) throw IoError("write failed", path_);
  ++summary_.records;
  summary_.mentions += record.authors.size();
}

StoreSummary CorpusStoreWriter::Finish() {
  out_.flush();
  if (!out_) throw IoError("write failed", path_);
  out_.close();
  return summary_;
}

StoreSummary WriteCorpusStore(const Corpus &corpus, const std::string &path) {
  CorpusStoreWriter writer(path);
  for (const BibRecord &record : corpus) writer.Add(record);
  return writer.Finish();
}

Corpus ReadCorpusStore(std::istream &in) {
  Corpus corpus;
  std::unordered_set<std::string> keys;
  std::string line;
  std::int64_t line_number = 0;
  bool header_seen = false;
  while (true) {
    line.clear();
    if (!std::getline(in, line)) break;
    ++line_number;
    // The writer terminates every line; a missing newline means truncation.
    if (in.eof()) throw FormatError("truncated line", line_number);
    if (!header_seen) {
      if (line != kCorpusStoreHeader) {
        throw FormatError("expected header '" +
                              std::string(kCorpusStoreHeader) + "', got '" +
                              line + "'",
                          line_number);
      }
      header_seen = true;
      continue;
    }
    BibRecord record = DecodeRecordLine(line, line_number);
    if (!keys.insert(record.record_key).second) {
      throw FormatError("duplicate record key '" + record.record_key + "'",
                        line_number);
    }
    corpus.push_back(std::move(record));
  }
  if (!header_seen) throw FormatError("missing header", 1);
  return corpus;
}

Corpus ReadCorpusStore(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus store", path);
  return ReadCorpusStore(in);
}

}  // namespace authorlink
