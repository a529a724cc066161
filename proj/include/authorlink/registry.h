#ifndef AUTHORLINK_REGISTRY_H_
#define AUTHORLINK_REGISTRY_H_

#include <cstddef>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "authorlink/name.h"
#include "authorlink/record.h"

namespace authorlink {

// Result of a correspondence-frequency (RA) query.
struct RAResult {
  std::size_t count = 0;
  std::set<AuthorId> candidates;
};

// Index from name variates (full name and atomic variate) to the authors
// who can be cited under them. Built once, then read-only.
class AuthorRegistry {
 public:
  static AuthorRegistry Build(const Corpus &corpus);

  // Indexes every author of `record`. Never removes anything.
  void Add(const BibRecord &record);

  RAResult Resolve(std::string_view raw_name) const;

  // Authors listed under an already-normalized variate key, or nullptr.
  const std::set<AuthorId> *Find(const std::string &key) const;

  // Atomic variate key of a registered author; empty if unknown.
  const std::string &AtomicKeyOf(const AuthorId &id) const;
  // Case-folded full name key of a registered author; empty if unknown.
  const std::string &FullKeyOf(const AuthorId &id) const;

  std::size_t author_count() const { return authors_.size(); }      // L
  std::size_t name_count() const { return full_names_.size(); }     // M
  std::size_t variate_count() const { return atomic_keys_.size(); } // K
  // Mentions whose name normalized to nothing; they are not indexed.
  std::size_t rejected_mentions() const { return rejected_; }

  // Atomic variate keys with their author counts.
  std::vector<std::pair<std::string, std::size_t>> AtomicVariateSizes() const;

  // Display form stored for a key (first rendering seen).
  const std::string &DisplayOf(const std::string &key) const;

  // One line per variate, sorted by key: "<variate>\t<id>|<id>|...".
  void Export(std::ostream &out) const;

 private:
  struct AuthorKeys {
    std::string full_key;
    std::string atomic_key;
  };
  struct Entry {
    std::string display;
    std::set<AuthorId> authors;
  };

  void Index(const std::string &key, const std::string &display,
             const AuthorId &id);

  std::unordered_map<std::string, Entry> by_variate_;
  std::map<AuthorId, AuthorKeys> authors_;
  std::unordered_set<std::string> full_names_;
  std::unordered_set<std::string> atomic_keys_;
  std::size_t rejected_ = 0;
};

}  // namespace authorlink

#endif  // AUTHORLINK_REGISTRY_H_
