#ifndef AUTHORLINK_DBLP_READER_H_
#define AUTHORLINK_DBLP_READER_H_

#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <set>
#include <string>

#include "authorlink/record.h"

namespace authorlink {

// Streaming reader for the DBLP XML dump. Input is consumed in fixed-size
// chunks, so memory stays bounded by the largest publication element rather
// than the document. Publication elements whose kind is not in `kinds` are
// skipped silently; matching elements lacking a title or any author are
// skipped and counted.
//
// Named entities from dblp.dtd (&auml; and friends) are decoded whether or
// not the document declares the DTD.
class DblpReader {
 public:
  explicit DblpReader(std::istream &input,
                      std::set<RecordKind> kinds = DefaultKinds());
  ~DblpReader();

  DblpReader(const DblpReader &) = delete;
  DblpReader &operator=(const DblpReader &) = delete;

  // Next record in document order, or nullopt at end of input.
  // Throws ParseError on malformed XML.
  std::optional<BibRecord> Next();

  // Matching elements dropped for missing title or authors.
  std::int64_t skipped() const;

  std::int64_t bytes_read() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Convenience: parse a whole file into memory.
Corpus ReadDblpFile(const std::string &path,
                    std::set<RecordKind> kinds = DefaultKinds(),
                    std::int64_t *skipped = nullptr);

}  // namespace authorlink

#endif  // AUTHORLINK_DBLP_READER_H_
