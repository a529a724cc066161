#include "authorlink/unicode.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "authorlink/error.h"

namespace authorlink::unicode {
namespace {

icu::UnicodeString FromUtf8(std::string_view text) {
  return icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
}

std::string ToUtf8(const icu::UnicodeString &text) {
  std::string out;
  text.toUTF8String(out);
  return out;
}

template <typename F>
void ForEachCodePoint(std::string_view text, F &&f) {
  const auto *bytes = reinterpret_cast<const uint8_t *>(text.data());
  const int32_t length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) c = 0xFFFD;
    f(static_cast<char32_t>(c), text.substr(start, i - start));
  }
}

void AppendUtf8(std::string &out, char32_t c) {
  char buffer[U8_MAX_LENGTH];
  int32_t n = 0;
  UBool error = false;
  U8_APPEND(buffer, n, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
  (void)error;
  out.append(buffer, n);
}

}  // namespace

std::string Nfc(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2 *nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  icu::UnicodeString normalized = nfc->normalize(FromUtf8(text), status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");
  return ToUtf8(normalized);
}

std::string CaseFold(std::string_view text) {
  icu::UnicodeString s = FromUtf8(text);
  s.foldCase();
  return ToUtf8(s);
}

std::string UpperInitial(std::string_view text) {
  std::string out;
  bool done = false;
  ForEachCodePoint(text, [&](char32_t c, std::string_view) {
    if (done) return;
    AppendUtf8(out, static_cast<char32_t>(u_toupper(static_cast<UChar32>(c))));
    done = true;
  });
  return out;
}

std::vector<std::string> CodePoints(std::string_view text) {
  std::vector<std::string> out;
  ForEachCodePoint(text, [&](char32_t c, std::string_view bytes) {
    if (c == 0xFFFD) {
      out.emplace_back("\xEF\xBF\xBD");
    } else {
      out.emplace_back(bytes);
    }
  });
  return out;
}

char32_t FirstCodePoint(std::string_view utf8) {
  char32_t first = 0;
  bool done = false;
  ForEachCodePoint(utf8, [&](char32_t c, std::string_view) {
    if (!done) first = c;
    done = true;
  });
  return first;
}

std::vector<std::string> AlnumTokens(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  ForEachCodePoint(text, [&](char32_t c, std::string_view) {
    if (u_isalnum(static_cast<UChar32>(c))) {
      AppendUtf8(current,
                 static_cast<char32_t>(u_tolower(static_cast<UChar32>(c))));
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  });
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

bool IsSpace(char32_t c) {
  return u_isUWhiteSpace(static_cast<UChar32>(c)) || c == 0x00A0 ||
         c == 0x2007 || c == 0x202F;
}

}  // namespace authorlink::unicode
