#include "authorlink/registry.h"

#include <algorithm>

#include "authorlink/error.h"

namespace authorlink {
namespace {

const std::string kEmpty;

}  // namespace

AuthorRegistry AuthorRegistry::Build(const Corpus &corpus) {
  AuthorRegistry registry;
  for (const BibRecord &record : corpus) registry.Add(record);
  return registry;
}

void AuthorRegistry::Index(const std::string &key, const std::string &display,
                           const AuthorId &id) {
  Entry &entry = by_variate_[key];
  if (entry.display.empty()) entry.display = display;
  entry.authors.insert(id);
}

void AuthorRegistry::Add(const BibRecord &record) {
  for (const AuthorMention &mention : record.authors) {
    const AuthorId &id = mention.author_id;
    if (authors_.contains(id)) continue;
    NormalizedName name;
    try {
      name = NormalizeName(id.base_name);
    } catch (const InvalidArgument &) {
      ++rejected_;
      continue;
    }
    const AtomicVariate atomic = AtomicVariateOf(name);
    AuthorKeys keys{name.Key(), atomic.Key()};
    Index(keys.full_key, name.Render(), id);
    Index(keys.atomic_key, atomic.Render(), id);
    full_names_.insert(keys.full_key);
    atomic_keys_.insert(keys.atomic_key);
    authors_.emplace(id, std::move(keys));
  }
}

RAResult AuthorRegistry::Resolve(std::string_view raw_name) const {
  RAResult result;
  std::string key;
  try {
    key = NameKey(raw_name);
  } catch (const InvalidArgument &) {
    return result;
  }
  if (const std::set<AuthorId> *found = Find(key)) {
    result.candidates = *found;
    result.count = found->size();
  }
  return result;
}

const std::set<AuthorId> *AuthorRegistry::Find(const std::string &key) const {
  auto it = by_variate_.find(key);
  return it == by_variate_.end() ? nullptr : &it->second.authors;
}

const std::string &AuthorRegistry::AtomicKeyOf(const AuthorId &id) const {
  auto it = authors_.find(id);
  return it == authors_.end() ? kEmpty : it->second.atomic_key;
}

const std::string &AuthorRegistry::FullKeyOf(const AuthorId &id) const {
  auto it = authors_.find(id);
  return it == authors_.end() ? kEmpty : it->second.full_key;
}

std::vector<std::pair<std::string, std::size_t>>
AuthorRegistry::AtomicVariateSizes() const {
  std::vector<std::pair<std::string, std::size_t>> sizes;
  sizes.reserve(atomic_keys_.size());
  for (const std::string &key : atomic_keys_) {
    sizes.emplace_back(key, by_variate_.at(key).authors.size());
  }
  return sizes;
}

const std::string &AuthorRegistry::DisplayOf(const std::string &key) const {
  auto it = by_variate_.find(key);
  return it == by_variate_.end() ? kEmpty : it->second.display;
}

void AuthorRegistry::Export(std::ostream &out) const {
  std::vector<const std::pair<const std::string, Entry> *> rows;
  rows.reserve(by_variate_.size());
  for (const auto &row : by_variate_) rows.push_back(&row);
  std::sort(rows.begin(), rows.end(),
            [](const auto *a, const auto *b) { return a->first < b->first; });
  for (const auto *row : rows) {
    out << row->second.display << '\t';
    bool first = true;
    for (const AuthorId &id : row->second.authors) {
      if (!first) out << '|';
      out << id.Render();
      first = false;
    }
    out << '\n';
  }
}

}  // namespace authorlink
