#include "authorlink/record.h"

#include <array>
#include <cctype>
#include <cstdio>
#include <utility>

#include "authorlink/error.h"

namespace authorlink {
namespace {

constexpr std::array<std::pair<RecordKind, std::string_view>, 9> kKindNames{{
    {RecordKind::kArticle, "article"},
    {RecordKind::kInproceedings, "inproceedings"},
    {RecordKind::kProceedings, "proceedings"},
    {RecordKind::kBook, "book"},
    {RecordKind::kIncollection, "incollection"},
    {RecordKind::kPhdThesis, "phdthesis"},
    {RecordKind::kMastersThesis, "mastersthesis"},
    {RecordKind::kWww, "www"},
    {RecordKind::kData, "data"},
}};

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

std::string AuthorId::Render() const {
  if (homonym_index == 0) return base_name;
  char suffix[8];
  std::snprintf(suffix, sizeof(suffix), " %04d", homonym_index);
  return base_name + suffix;
}

AuthorId ParseAuthorId(std::string_view raw) {
  std::string trimmed = Trim(raw);
  const std::size_t n = trimmed.size();
  if (n >= 6 && trimmed[n - 5] == ' ' && IsDigit(trimmed[n - 4]) &&
      IsDigit(trimmed[n - 3]) && IsDigit(trimmed[n - 2]) &&
      IsDigit(trimmed[n - 1])) {
    const int index = std::stoi(trimmed.substr(n - 4));
    std::string base = Trim(std::string_view(trimmed).substr(0, n - 5));
    if (index > 0 && !base.empty()) return AuthorId{std::move(base), index};
  }
  return AuthorId{std::move(trimmed), 0};
}

AuthorMention AuthorMention::FromDisplay(std::string_view raw) {
  AuthorMention mention;
  mention.display_name = Trim(raw);
  if (mention.display_name.empty()) {
    throw InvalidArgument("empty author name");
  }
  mention.author_id = ParseAuthorId(mention.display_name);
  return mention;
}

std::string_view KindName(RecordKind kind) {
  for (const auto &[k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<RecordKind> KindFromName(std::string_view name) {
  for (const auto &[k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::set<RecordKind> DefaultKinds() {
  return {RecordKind::kArticle, RecordKind::kInproceedings};
}

std::size_t CountMentions(const Corpus &corpus) {
  std::size_t total = 0;
  for (const BibRecord &r : corpus) total += r.authors.size();
  return total;
}

std::string Trim(std::string_view text) {
  static constexpr std::array<std::string_view, 5> kWideSpaces{
      "\xC2\xA0", "\xE2\x80\x87", "\xE2\x80\x89", "\xE2\x80\xAF",
      "\xE3\x80\x80"};
  bool changed = true;
  while (changed && !text.empty()) {
    changed = false;
    while (!text.empty() &&
           std::isspace(static_cast<unsigned char>(text.front()))) {
      text.remove_prefix(1);
      changed = true;
    }
    while (!text.empty() &&
           std::isspace(static_cast<unsigned char>(text.back()))) {
      text.remove_suffix(1);
      changed = true;
    }
    for (std::string_view space : kWideSpaces) {
      if (text.starts_with(space)) {
        text.remove_prefix(space.size());
        changed = true;
      }
      if (text.ends_with(space)) {
        text.remove_suffix(space.size());
        changed = true;
      }
    }
  }
  return std::string(text);
}

}  // namespace authorlink
