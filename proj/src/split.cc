#include "authorlink/split.h"

#include <cmath>
#include <map>

#include "authorlink/error.h"
#include "authorlink/rng.h"

namespace authorlink {

std::string_view SplitSetName(SplitSet set) {
  switch (set) {
    case SplitSet::kTrain:
      return "TRAIN";
    case SplitSet::kVal:
      return "VAL";
    case SplitSet::kTest:
      return "TEST";
  }
  return "?";
}

std::array<std::size_t, 3> SplitAssignment::Counts() const {
  std::array<std::size_t, 3> counts{};
  for (SplitSet s : per_entry) ++counts[static_cast<std::size_t>(s)];
  return counts;
}

std::vector<std::size_t> SplitAssignment::EntriesIn(SplitSet set) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < per_entry.size(); ++i) {
    if (per_entry[i] == set) out.push_back(i);
  }
  return out;
}

void SplitAssignment::Write(std::ostream &out, const Block &block) const {
  for (std::size_t i = 0; i < per_entry.size(); ++i) {
    const BlockEntry &e = block.entries[i];
    out << block.RecordOf(e).record_key << '\t' << block.TargetOf(e).Render()
        << '\t' << SplitSetName(per_entry[i]) << '\n';
  }
}

SplitAssignment ReadSplit(std::istream &in, const Block &block) {
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  for (std::size_t i = 0; i < block.entries.size(); ++i) {
    const BlockEntry &e = block.entries[i];
    index.emplace(std::make_pair(block.RecordOf(e).record_key,
                                 block.TargetOf(e).Render()),
                  i);
  }
  SplitAssignment split;
  split.per_entry.assign(block.entries.size(), SplitSet::kTrain);
  std::vector<bool> seen(block.entries.size(), false);
  std::string line;
  std::int64_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const std::size_t t1 = line.find('\t');
    const std::size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) throw FormatError("expected three fields", line_number);
    auto it = index.find({line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1)});
    if (it == index.end()) throw FormatError("entry not in block", line_number);
    const std::string set = line.substr(t2 + 1);
    if (set == "TRAIN") {
      split.per_entry[it->second] = SplitSet::kTrain;
    } else if (set == "VAL") {
      split.per_entry[it->second] = SplitSet::kVal;
    } else if (set == "TEST") {
      split.per_entry[it->second] = SplitSet::kTest;
    } else {
      throw FormatError("unknown split '" + set + "'", line_number);
    }
    seen[it->second] = true;
  }
  for (bool s : seen) {
    if (!s) throw FormatError("split file does not cover every block entry", line_number);
  }
  return split;
}

std::array<std::size_t, 3> SplitQuotas(std::size_t n) {
  if (n == 0) return {0, 0, 0};
  const auto rounded = [n](double share) {
    return static_cast<std::size_t>(std::llround(share * static_cast<double>(n)));
  };
  const std::size_t train = std::min(n, std::max<std::size_t>(1, rounded(0.7)));
  const std::size_t rest = n - train;
  std::size_t val = std::min(rest, rounded(0.15));
  if (val == 0 && rest >= 2) val = 1;
  return {train, val, rest - val};
}

SplitAssignment SplitPerAuthor(const Block &block, std::uint64_t seed) {
  std::vector<std::vector<std::size_t>> by_class(
      static_cast<std::size_t>(block.classes.size()));
  for (std::size_t i = 0; i < block.entries.size(); ++i) {
    by_class[static_cast<std::size_t>(block.entries[i].label)].push_back(i);
  }
  SplitAssignment split;
  split.per_entry.assign(block.entries.size(), SplitSet::kTrain);
  Rng rng(seed);
  for (std::vector<std::size_t> &entries : by_class) {
    rng.Shuffle(entries);
    const auto [train, val, test] = SplitQuotas(entries.size());
    for (std::size_t k = 0; k < entries.size(); ++k) {
      split.per_entry[entries[k]] = k < train         ? SplitSet::kTrain
                                    : k < train + val ? SplitSet::kVal
                                                      : SplitSet::kTest;
    }
  }
  return split;
}

}  // namespace authorlink
