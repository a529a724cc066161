#ifndef AUTHORLINK_BLOCKING_H_
#define AUTHORLINK_BLOCKING_H_

#include <cstddef>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "authorlink/record.h"
#include "authorlink/registry.h"

namespace authorlink {

// Bijection between the authors of a block and class labels [0, size).
class ClassIndex {
 public:
  ClassIndex() = default;
  explicit ClassIndex(std::vector<AuthorId> authors);

  // Appends if new; returns the label either way.
  int Insert(const AuthorId &id);
  // Label of `id`, or -1.
  int Find(const AuthorId &id) const;
  // Label of `id`; throws InvalidArgument if absent.
  int Of(const AuthorId &id) const;

  const AuthorId &At(int label) const { return authors_.at(label); }
  int size() const { return static_cast<int>(authors_.size()); }
  const std::vector<AuthorId> &authors() const { return authors_; }

  bool operator==(const ClassIndex &other) const {
    return authors_ == other.authors_;
  }

 private:
  std::vector<AuthorId> authors_;
  std::map<AuthorId, int> labels_;
};

// One (record, target author) pair of a block.
struct BlockEntry {
  std::size_t record = 0;  // index into Block::records
  int position = 0;        // author position inside the record
  int label = 0;           // class of the target author
};

// The sub-collection of records whose authors can be cited under one name
// variate, together with its class index.
struct Block {
  std::string variate_key;  // as rendered, e.g. "Y Chen"
  std::vector<BibRecord> records;
  std::vector<BlockEntry> entries;
  ClassIndex classes;

  const BibRecord &RecordOf(const BlockEntry &e) const {
    return records[e.record];
  }
  const AuthorId &TargetOf(const BlockEntry &e) const {
    return records[e.record].authors[e.position].author_id;
  }
};

// Collects every (record, author) pair whose author's variate set contains
// `variate_key`. Classes are numbered in order of first appearance.
// Throws InvalidArgument when the key is not in the registry.
Block BuildBlock(const Corpus &corpus, const AuthorRegistry &registry,
                 std::string_view variate_key);

struct BlockStats {
  std::size_t uta = 0;  // unique target authors
  std::size_t rcd = 0;  // distinct records
  std::size_t uca = 0;  // unique co-author full names
  std::size_t uan = 0;  // unique full names among target authors
  std::size_t r2a = 0;  // records with >= 2 authors sharing a name/variate
  std::size_t r3a = 0;  // records with >= 3 authors sharing a name/variate

  bool operator==(const BlockStats &) const = default;
};

BlockStats ComputeBlockStats(const Block &block);

struct CorpusStats {
  std::size_t records = 0;
  std::size_t mentions = 0;
  std::size_t authors = 0;   // L
  std::size_t names = 0;     // M
  std::size_t variates = 0;  // K
};

CorpusStats ComputeCorpusStats(const Corpus &corpus,
                               const AuthorRegistry &registry);

// Atomic variates with the most authors, largest first, ties by key.
std::vector<std::string> TopVariates(const AuthorRegistry &registry,
                                     std::size_t n);

// Text tables with the row labels used for corpus and sub-collection stats.
void WriteCorpusStats(std::ostream &out, const CorpusStats &stats);
void WriteBlockStats(
    std::ostream &out,
    const std::vector<std::pair<std::string, BlockStats>> &blocks);

}  // namespace authorlink

#endif  // AUTHORLINK_BLOCKING_H_
