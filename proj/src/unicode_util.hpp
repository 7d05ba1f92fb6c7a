#ifndef REPLYWATCH_SRC_UNICODE_UTIL_HPP
#define REPLYWATCH_SRC_UNICODE_UTIL_HPP

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace replywatch::detail {

// Decodes the code point at `*pos` and advances. Ill-formed bytes decode to
// U+FFFD so scanning always makes progress.
inline UChar32 next_code_point(std::string_view s, std::size_t* pos) {
  const auto* p = reinterpret_cast<const std::uint8_t*>(s.data());
  const auto len = static_cast<std::int32_t>(s.size());
  auto i = static_cast<std::int32_t>(*pos);
  UChar32 c = 0;
  U8_NEXT(p, i, len, c);
  *pos = static_cast<std::size_t>(i);
  return c < 0 ? 0xFFFD : c;
}

inline void append_utf8(std::string* out, UChar32 c) {
  char buf[4];
  std::int32_t n = 0;
  UBool err = false;
  U8_APPEND(reinterpret_cast<std::uint8_t*>(buf), n, 4, c, err);
  if (!err) out->append(buf, static_cast<std::size_t>(n));
}

// Letters, digits, underscore and combining marks (so decomposed accents stay
// inside their word).
inline bool is_word_char(UChar32 c) {
  if (c < 0x80) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_';
  }
  if (u_isalnum(c)) return true;
  const auto type = u_charType(c);
  return type == U_NON_SPACING_MARK || type == U_COMBINING_SPACING_MARK ||
         type == U_ENCLOSING_MARK;
}

inline bool is_apostrophe(UChar32 c) { return c == '\'' || c == 0x2019; }

inline bool is_ascii(std::string_view s) {
  for (const unsigned char c : s) {
    if (c >= 0x80) return false;
  }
  return true;
}

// NFC + full lowercase. ASCII input takes a fast path.
std::string nfc_lower(std::string_view s);

}  // namespace replywatch::detail

#endif  // REPLYWATCH_SRC_UNICODE_UTIL_HPP
