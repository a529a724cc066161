#include "authorlink/blocking.h"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "authorlink/error.h"
#include "authorlink/name.h"

namespace authorlink {
namespace {

// Case-folded full-name and atomic keys of a printed name; empty when the
// name normalizes to nothing.
std::pair<std::string, std::string> KeysOf(const std::string &printed) {
  try {
    const NormalizedName name = NormalizeName(printed);
    return {name.Key(), AtomicVariateOf(name).Key()};
  } catch (const InvalidArgument &) {
    return {};
  }
}

}  // namespace

ClassIndex::ClassIndex(std::vector<AuthorId> authors) {
  for (AuthorId &id : authors) Insert(id);
}

int ClassIndex::Insert(const AuthorId &id) {
  auto [it, inserted] = labels_.emplace(id, size());
  if (inserted) authors_.push_back(id);
  return it->second;
}

int ClassIndex::Find(const AuthorId &id) const {
  auto it = labels_.find(id);
  return it == labels_.end() ? -1 : it->second;
}

int ClassIndex::Of(const AuthorId &id) const {
  const int label = Find(id);
  if (label < 0) {
    throw InvalidArgument("author '" + id.Render() + "' has no class");
  }
  return label;
}

Block BuildBlock(const Corpus &corpus, const AuthorRegistry &registry,
                 std::string_view variate_key) {
  std::string key;
  try {
    key = NameKey(variate_key);
  } catch (const InvalidArgument &) {
    throw InvalidArgument("empty variate key");
  }
  const std::set<AuthorId> *authors = registry.Find(key);
  if (authors == nullptr || authors->empty()) {
    throw InvalidArgument("variate '" + std::string(variate_key) +
                          "' is not in the registry; block would be empty");
  }

  Block block;
  block.variate_key = registry.DisplayOf(key);
  for (const BibRecord &record : corpus) {
    std::size_t record_index = block.records.size();
    bool taken = false;
    for (std::size_t pos = 0; pos < record.authors.size(); ++pos) {
      const AuthorId &id = record.authors[pos].author_id;
      if (!authors->contains(id)) continue;
      if (!taken) {
        block.records.push_back(record);
        taken = true;
      }
      block.entries.push_back(BlockEntry{record_index, static_cast<int>(pos),
                                         block.classes.Insert(id)});
    }
  }
  return block;
}

BlockStats ComputeBlockStats(const Block &block) {
  BlockStats stats;
  stats.uta = static_cast<std::size_t>(block.classes.size());
  stats.rcd = block.records.size();

  std::vector<std::vector<int>> targets(block.records.size());
  for (const BlockEntry &e : block.entries) {
    targets[e.record].push_back(e.position);
  }

  std::unordered_set<std::string> coauthors;
  for (std::size_t r = 0; r < block.records.size(); ++r) {
    const BibRecord &record = block.records[r];
    std::unordered_map<std::string, int> by_atomic;
    int largest = 0;
    for (std::size_t pos = 0; pos < record.authors.size(); ++pos) {
      const auto [full, atomic] = KeysOf(record.authors[pos].display_name);
      if (full.empty()) continue;
      const bool is_target =
          std::find(targets[r].begin(), targets[r].end(),
                    static_cast<int>(pos)) != targets[r].end();
      if (!is_target) coauthors.insert(full);
      // Equal full names imply equal atomic variates, so grouping by the
      // atomic key covers both kinds of collision.
      largest = std::max(largest, ++by_atomic[atomic]);
    }
    if (largest >= 2) ++stats.r2a;
    if (largest >= 3) ++stats.r3a;
  }
  stats.uca = coauthors.size();

  std::unordered_set<std::string> target_names;
  for (const AuthorId &id : block.classes.authors()) {
    const std::string full = KeysOf(id.base_name).first;
    if (!full.empty()) target_names.insert(full);
  }
  stats.uan = target_names.size();
  return stats;
}

CorpusStats ComputeCorpusStats(const Corpus &corpus,
                               const AuthorRegistry &registry) {
  CorpusStats stats;
  stats.records = corpus.size();
  stats.mentions = CountMentions(corpus);
  stats.authors = registry.author_count();
  stats.names = registry.name_count();
  stats.variates = registry.variate_count();
  return stats;
}

std::vector<std::string> TopVariates(const AuthorRegistry &registry,
                                     std::size_t n) {
  auto sizes = registry.AtomicVariateSizes();
  std::sort(sizes.begin(), sizes.end(), [](const auto &a, const auto &b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < sizes.size() && i < n; ++i) {
    out.push_back(registry.DisplayOf(sizes[i].first));
  }
  return out;
}

void WriteCorpusStats(std::ostream &out, const CorpusStats &stats) {
  out << "# of records\t" << stats.records << '\n'
      << "# of author mentions\t" << stats.mentions << '\n'
      << "# of unique authors\t" << stats.authors << '\n'
      << "# of unique author names\t" << stats.names << '\n'
      << "# of unique atomic name variates\t" << stats.variates << '\n';
}

void WriteBlockStats(
    std::ostream &out,
    const std::vector<std::pair<std::string, BlockStats>> &blocks) {
  out << "# ANV";
  for (const auto &[key, stats] : blocks) out << "\t'" << key << "'";
  out << '\n';
  auto row = [&](const char *label, std::size_t BlockStats::*field) {
    out << label;
    for (const auto &[key, stats] : blocks) out << '\t' << stats.*field;
    out << '\n';
  };
  row("# UTA", &BlockStats::uta);
  row("# RCD", &BlockStats::rcd);
  row("# UCA", &BlockStats::uca);
  row("# UAN", &BlockStats::uan);
  row("# R2A", &BlockStats::r2a);
  row("# R3A", &BlockStats::r3a);
}

}  // namespace authorlink
