#ifndef AUTHORLINK_UNICODE_H_
#define AUTHORLINK_UNICODE_H_

#include <string>
#include <string_view>
#include <vector>

// Thin UTF-8 helpers over ICU. Invalid UTF-8 sequences become U+FFFD.
namespace authorlink::unicode {

// Canonical composition (NFC).
std::string Nfc(std::string_view text);

// Full Unicode case folding, used as the comparison key for names.
std::string CaseFold(std::string_view text);

// Simple uppercase mapping of the first code point of `text`; empty on
// empty input.
std::string UpperInitial(std::string_view text);

// Splits into code points, each returned as its UTF-8 encoding.
std::vector<std::string> CodePoints(std::string_view text);

// Value of the first code point of `utf8` (U+FFFD if invalid, 0 if empty).
char32_t FirstCodePoint(std::string_view utf8);

// Lowercased maximal runs of alphanumeric code points.
std::vector<std::string> AlnumTokens(std::string_view text);

// True for Unicode whitespace (including NBSP).
bool IsSpace(char32_t c);

}  // namespace authorlink::unicode

#endif  // AUTHORLINK_UNICODE_H_
