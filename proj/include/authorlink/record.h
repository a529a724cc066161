#ifndef AUTHORLINK_RECORD_H_
#define AUTHORLINK_RECORD_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace authorlink {

// Identity of a real-world author as DBLP encodes it: the printed name plus
// a homonym suffix ("Bing Li 0002" -> {"Bing Li", 2}). Index 0 means the
// name carries no suffix.
struct AuthorId {
  std::string base_name;
  int homonym_index = 0;

  // Reverse of ParseAuthorId: "Bing Li 0002", or just the base name.
  std::string Render() const;

  auto operator<=>(const AuthorId &) const = default;
  bool operator==(const AuthorId &) const = default;
};

// Splits a trailing " dddd" homonym suffix off a raw DBLP author string.
// The suffix must be exactly four digits and nonzero.
AuthorId ParseAuthorId(std::string_view raw);

struct AuthorMention {
  std::string display_name;  // as printed, trimmed
  AuthorId author_id;

  static AuthorMention FromDisplay(std::string_view raw);

  bool operator==(const AuthorMention &) const = default;
};

enum class RecordKind {
  kArticle,
  kInproceedings,
  kProceedings,
  kBook,
  kIncollection,
  kPhdThesis,
  kMastersThesis,
  kWww,
  kData,
};

// DBLP element name for a kind ("article", "inproceedings", ...).
std::string_view KindName(RecordKind kind);
std::optional<RecordKind> KindFromName(std::string_view name);

// Kinds ingested when the caller does not ask for more.
std::set<RecordKind> DefaultKinds();

struct BibRecord {
  std::string record_key;
  RecordKind kind = RecordKind::kArticle;
  std::string title;
  std::string source;  // journal or booktitle; may be empty
  int year = 0;        // 0 when absent
  std::vector<AuthorMention> authors;

  bool operator==(const BibRecord &) const = default;
};

using Corpus = std::vector<BibRecord>;

std::size_t CountMentions(const Corpus &corpus);

// Strips leading/trailing ASCII and Unicode whitespace.
std::string Trim(std::string_view text);

}  // namespace authorlink

#endif  // AUTHORLINK_RECORD_H_
