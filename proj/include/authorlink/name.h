#ifndef AUTHORLINK_NAME_H_
#define AUTHORLINK_NAME_H_

#include <string>
#include <string_view>
#include <vector>

namespace authorlink {

// An author name reduced to comparable tokens: NFC, no periods, hyphens
// split, single spaces, homonym suffix removed. Case is preserved for
// display; comparisons go through Key().
struct NormalizedName {
  std::vector<std::string> tokens;

  std::string Render() const;
  // Case-folded rendering; the registry and blocks are keyed on this.
  std::string Key() const;
  // Every token but the last, space-joined. Empty for single-token names.
  std::string FirstName() const;
  const std::string &Last() const { return tokens.back(); }

  bool operator==(const NormalizedName &) const = default;
};

// Throws InvalidArgument when nothing is left after normalization.
NormalizedName NormalizeName(std::string_view raw);

// Most abbreviated name form: uppercased first letter plus last token.
// A single-token name uses its only token for both roles ("M Madonna").
struct AtomicVariate {
  std::string initial;
  std::string last;

  std::string Render() const { return initial + " " + last; }
  std::string Key() const;

  bool operator==(const AtomicVariate &) const = default;
};

AtomicVariate AtomicVariateOf(const NormalizedName &name);

// Rendered {full, atomic}; a single element when they coincide.
std::vector<std::string> NameVariates(const NormalizedName &name);

// Case-folded key of normalize(raw). Throws like NormalizeName.
std::string NameKey(std::string_view raw);

}  // namespace authorlink

#endif  // AUTHORLINK_NAME_H_
