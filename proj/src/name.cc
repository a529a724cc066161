#include "authorlink/name.h"

#include "authorlink/error.h"
#include "authorlink/record.h"
#include "authorlink/unicode.h"

namespace authorlink {
namespace {

bool IsHyphen(std::string_view cp) {
  // ASCII hyphen-minus, U+2010 hyphen, U+2011 non-breaking hyphen.
  return cp == "-" || cp == "\xE2\x80\x90" || cp == "\xE2\x80\x91";
}

}  // namespace

std::string NormalizedName::Render() const {
  std::string out;
  for (const std::string &token : tokens) {
    if (!out.empty()) out += ' ';
    out += token;
  }
  return out;
}

std::string NormalizedName::Key() const { return unicode::CaseFold(Render()); }

std::string NormalizedName::FirstName() const {
  std::string out;
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    if (!out.empty()) out += ' ';
    out += tokens[i];
  }
  return out;
}

NormalizedName NormalizeName(std::string_view raw) {
  // Suffix digits identify a homonym, not part of the name.
  const std::string base = ParseAuthorId(raw).base_name;
  const std::string composed = unicode::Nfc(base);

  NormalizedName name;
  std::string token;
  auto flush = [&] {
    if (!token.empty()) name.tokens.push_back(std::move(token));
    token.clear();
  };
  for (const std::string &cp : unicode::CodePoints(composed)) {
    // A period ends a token: "R. Deriche" and "J.Lee" both split cleanly.
    if (cp == "." || IsHyphen(cp)) {
      flush();
      continue;
    }
    if (unicode::IsSpace(unicode::FirstCodePoint(cp))) {
      flush();
      continue;
    }
    token += cp;
  }
  flush();
  if (name.tokens.empty()) {
    throw InvalidArgument("name '" + std::string(raw) +
                          "' is empty after normalization");
  }
  return name;
}

std::string AtomicVariate::Key() const { return unicode::CaseFold(Render()); }

AtomicVariate AtomicVariateOf(const NormalizedName &name) {
  if (name.tokens.empty()) throw InvalidArgument("empty name");
  return AtomicVariate{unicode::UpperInitial(name.tokens.front()),
                       name.tokens.back()};
}

std::vector<std::string> NameVariates(const NormalizedName &name) {
  std::vector<std::string> out{name.Render()};
  const AtomicVariate atomic = AtomicVariateOf(name);
  if (atomic.Key() != name.Key()) out.push_back(atomic.Render());
  return out;
}

std::string NameKey(std::string_view raw) { return NormalizeName(raw).Key(); }

}  // namespace authorlink
