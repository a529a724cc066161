#include "authorlink/dblp_reader.h"

#include <expat.h>

#include <array>
#include <cctype>
#include <deque>
#include <fstream>
#include <string_view>

#include "authorlink/error.h"

namespace authorlink {
namespace {

constexpr std::size_t kChunkSize = 1 << 16;

// dblp.dtd declares the ISO-8859-1 entity set; names for U+00A0..U+00FF in
// code point order.
constexpr std::array<std::string_view, 96> kLatin1EntityNames{
    "nbsp",   "iexcl",  "cent",   "pound",  "curren", "yen",    "brvbar",
    "sect",   "uml",    "copy",   "ordf",   "laquo",  "not",    "shy",
    "reg",    "macr",   "deg",    "plusmn", "sup2",   "sup3",   "acute",
    "micro",  "para",   "middot", "cedil",  "sup1",   "ordm",   "raquo",
    "frac14", "frac12", "frac34", "iquest", "Agrave", "Aacute", "Acirc",
    "Atilde", "Auml",   "Aring",  "AElig",  "Ccedil", "Egrave", "Eacute",
    "Ecirc",  "Euml",   "Igrave", "Iacute", "Icirc",  "Iuml",   "ETH",
    "Ntilde", "Ograve", "Oacute", "Ocirc",  "Otilde", "Ouml",   "times",
    "Oslash", "Ugrave", "Uacute", "Ucirc",  "Uuml",   "Yacute", "THORN",
    "szlig",  "agrave", "aacute", "acirc",  "atilde", "auml",   "aring",
    "aelig",  "ccedil", "egrave", "eacute", "ecirc",  "euml",   "igrave",
    "iacute", "icirc",  "iuml",   "eth",    "ntilde", "ograve", "oacute",
    "ocirc",  "otilde", "ouml",   "divide", "oslash", "ugrave", "uacute",
    "ucirc",  "uuml",   "yacute", "thorn",  "yuml"};

const std::string &BuiltinEntityDtd() {
  static const std::string dtd = [] {
    std::string text;
    for (std::size_t i = 0; i < kLatin1EntityNames.size(); ++i) {
      text += "<!ENTITY ";
      text += kLatin1EntityNames[i];
      text += " \"&#" + std::to_string(0xA0 + i) + ";\">\n";
    }
    return text;
  }();
  return dtd;
}

enum class Field { kNone, kAuthor, kTitle, kJournal, kBooktitle, kYear };

Field FieldOf(std::string_view element) {
  if (element == "author") return Field::kAuthor;
  if (element == "title") return Field::kTitle;
  if (element == "journal") return Field::kJournal;
  if (element == "booktitle") return Field::kBooktitle;
  if (element == "year") return Field::kYear;
  return Field::kNone;
}

// Trims and collapses runs of ASCII whitespace, which XML pretty-printing
// can introduce inside text nodes.
std::string CollapseSpaces(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

int ParseYear(std::string_view text) {
  int year = 0;
  bool any = false;
  for (char c : text) {
    if (c < '0' || c > '9') return 0;
    year = year * 10 + (c - '0');
    any = true;
    if (year > 100000) return 0;
  }
  return any ? year : 0;
}

}  // namespace

struct DblpReader::Impl {
  std::istream &input;
  std::set<RecordKind> kinds;
  XML_Parser parser = nullptr;
  std::deque<BibRecord> ready;
  std::int64_t skipped = 0;
  std::int64_t bytes_read = 0;
  bool finished = false;
  std::string entity_error;

  // Parse state.
  int depth = 0;
  bool in_publication = false;
  Field field = Field::kNone;
  int field_depth = 0;
  std::string text;
  BibRecord current;
  bool has_key = false;

  Impl(std::istream &in, std::set<RecordKind> k)
      : input(in), kinds(std::move(k)) {
    parser = XML_ParserCreate(nullptr);
    if (parser == nullptr) throw Error("cannot allocate XML parser");
    XML_SetUserData(parser, this);
    XML_SetElementHandler(parser, &Impl::OnStart, &Impl::OnEnd);
    XML_SetCharacterDataHandler(parser, &Impl::OnText);
    XML_SetParamEntityParsing(parser, XML_PARAM_ENTITY_PARSING_ALWAYS);
    XML_UseForeignDTD(parser, XML_TRUE);
    XML_SetExternalEntityRefHandler(parser, &Impl::OnExternalEntity);
    XML_SetSkippedEntityHandler(parser, &Impl::OnSkippedEntity);
  }

  ~Impl() { XML_ParserFree(parser); }

  static int XMLCALL OnExternalEntity(XML_Parser parser,
                                      const XML_Char *context,
                                      const XML_Char *, const XML_Char *,
                                      const XML_Char *) {
    // Only the DTD (context == NULL) is resolved, always to the built-in
    // entity set; external general entities are refused.
    if (context != nullptr) return XML_STATUS_ERROR;
    XML_Parser dtd_parser =
        XML_ExternalEntityParserCreate(parser, nullptr, nullptr);
    if (dtd_parser == nullptr) return XML_STATUS_ERROR;
    const std::string &dtd = BuiltinEntityDtd();
    const XML_Status status = XML_Parse(
        dtd_parser, dtd.data(), static_cast<int>(dtd.size()), XML_TRUE);
    XML_ParserFree(dtd_parser);
    return status;
  }

  static void XMLCALL OnSkippedEntity(void *data, const XML_Char *name, int) {
    auto *self = static_cast<Impl *>(data);
    if (self->entity_error.empty()) {
      self->entity_error = std::string("undefined entity &") + name + ";";
    }
    XML_StopParser(self->parser, XML_FALSE);
  }

  static void XMLCALL OnStart(void *data, const XML_Char *name,
                              const XML_Char **attrs) {
    static_cast<Impl *>(data)->Start(name, attrs);
  }
  static void XMLCALL OnEnd(void *data, const XML_Char *name) {
    static_cast<Impl *>(data)->End(name);
  }
  static void XMLCALL OnText(void *data, const XML_Char *s, int len) {
    auto *self = static_cast<Impl *>(data);
    if (self->field != Field::kNone) self->text.append(s, len);
  }

  void Start(std::string_view name, const XML_Char **attrs) {
    ++depth;
    if (depth == 2) {
      const std::optional<RecordKind> kind = KindFromName(name);
      in_publication = kind.has_value() && kinds.contains(*kind);
      if (!in_publication) return;
      current = BibRecord{};
      current.kind = *kind;
      has_key = false;
      for (const XML_Char **a = attrs; a[0] != nullptr; a += 2) {
        if (std::string_view(a[0]) == "key") {
          current.record_key = a[1];
          has_key = !current.record_key.empty();
        }
      }
    } else if (depth == 3 && in_publication) {
      field = FieldOf(name);
      field_depth = depth;
      text.clear();
    }
  }

  void End(std::string_view) {
    if (depth == 3 && in_publication && field != Field::kNone &&
        field_depth == 3) {
      FinishField();
      field = Field::kNone;
    } else if (depth == 2 && in_publication) {
      FinishPublication();
      in_publication = false;
    }
    --depth;
  }

  void FinishField() {
    std::string value = CollapseSpaces(text);
    switch (field) {
      case Field::kAuthor:
        if (!value.empty()) {
          current.authors.push_back(AuthorMention::FromDisplay(value));
        }
        break;
      case Field::kTitle:
        current.title = std::move(value);
        break;
      case Field::kJournal:
        if (current.kind == RecordKind::kArticle || current.source.empty()) {
          current.source = std::move(value);
        }
        break;
      case Field::kBooktitle:
        if (current.kind != RecordKind::kArticle || current.source.empty()) {
          current.source = std::move(value);
        }
        break;
      case Field::kYear:
        current.year = ParseYear(value);
        break;
      case Field::kNone:
        break;
    }
  }

  void FinishPublication() {
    if (!has_key || current.title.empty() || current.authors.empty()) {
      ++skipped;
      return;
    }
    ready.push_back(std::move(current));
  }

  void Feed() {
    std::array<char, kChunkSize> buffer;
    input.read(buffer.data(), buffer.size());
    const std::streamsize n = input.gcount();
    if (input.bad()) throw Error("read failure on XML input");
    const bool last = n < static_cast<std::streamsize>(buffer.size());
    if (bytes_read == 0 && n == 0) {
      finished = true;  // zero-byte input: nothing to parse
      return;
    }
    bytes_read += n;
    if (XML_Parse(parser, buffer.data(), static_cast<int>(n),
                  last ? XML_TRUE : XML_FALSE) != XML_STATUS_OK) {
      const std::int64_t offset = XML_GetCurrentByteIndex(parser);
      if (!entity_error.empty()) throw ParseError(entity_error, offset);
      throw ParseError(XML_ErrorString(XML_GetErrorCode(parser)), offset);
    }
    if (last) finished = true;
  }
};

DblpReader::DblpReader(std::istream &input, std::set<RecordKind> kinds)
    : impl_(std::make_unique<Impl>(input, std::move(kinds))) {}

DblpReader::~DblpReader() = default;

std::optional<BibRecord> DblpReader::Next() {
  while (impl_->ready.empty() && !impl_->finished) impl_->Feed();
  if (impl_->ready.empty()) return std::nullopt;
  BibRecord record = std::move(impl_->ready.front());
  impl_->ready.pop_front();
  return record;
}

std::int64_t DblpReader::skipped() const { return impl_->skipped; }

std::int64_t DblpReader::bytes_read() const { return impl_->bytes_read; }

Corpus ReadDblpFile(const std::string &path, std::set<RecordKind> kinds,
                    std::int64_t *skipped) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open XML input", path);
  DblpReader reader(in, std::move(kinds));
  Corpus corpus;
  while (std::optional<BibRecord> record = reader.Next()) {
    corpus.push_back(std::move(*record));
  }
  if (skipped != nullptr) *skipped = reader.skipped();
  return corpus;
}

}  // namespace authorlink
