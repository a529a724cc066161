#ifndef AUTHORLINK_SPLIT_H_
#define AUTHORLINK_SPLIT_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "authorlink/blocking.h"

namespace authorlink {

enum class SplitSet { kTrain, kVal, kTest };

std::string_view SplitSetName(SplitSet set);

// Train/validation/test assignment of every block entry, made per target
// author. Aligned with Block::entries.
struct SplitAssignment {
  std::vector<SplitSet> per_entry;

  std::array<std::size_t, 3> Counts() const;
  std::vector<std::size_t> EntriesIn(SplitSet set) const;

  // "<record_key>\t<author_id>\t<TRAIN|VAL|TEST>" per entry, block order.
  void Write(std::ostream &out, const Block &block) const;

  bool operator==(const SplitAssignment &) const = default;
};

// Reads the format produced by SplitAssignment::Write back onto `block`.
// Throws FormatError if a line does not name an entry of the block or an
// entry is missing.
SplitAssignment ReadSplit(std::istream &in, const Block &block);

// Per-author quotas for n records: train = max(1, round(0.7 n)); validation
// = min(rest, round(0.15 n)), raised to 1 when at least two records remain
// after training; test gets whatever is left.
std::array<std::size_t, 3> SplitQuotas(std::size_t n);

// Shuffles each author's entries with `seed` and deals them by SplitQuotas.
SplitAssignment SplitPerAuthor(const Block &block, std::uint64_t seed);

}  // namespace authorlink

#endif  // AUTHORLINK_SPLIT_H_
