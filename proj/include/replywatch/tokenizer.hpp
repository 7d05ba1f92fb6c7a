#ifndef REPLYWATCH_TOKENIZER_HPP
#define REPLYWATCH_TOKENIZER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "replywatch/lexicon.hpp"

namespace replywatch {

enum class TokenKind : std::uint8_t { word, mention, url };

struct Token {
  std::string text;  // normalized for words; verbatim for mentions and URLs
  TokenKind kind = TokenKind::word;
  std::size_t offset = 0;    // byte offset of the source token in the text
  std::size_t sentence = 0;  // index of the sentence the token belongs to
  std::optional<std::uint32_t> hashtag;  // which hashtag a segment came from

  bool matchable() const { return kind == TokenKind::word; }
};

// Splits on whitespace and punctuation. Apostrophes and asterisks stay inside
// words ("don't", "f**king"); "@name" and URLs become opaque tokens; hashtags
// are expanded in place through segment_hashtag. Terminal punctuation
// (. ! ? and the ellipsis) starts a new sentence.
std::vector<Token> tokenize(std::string_view text, const SegmentVocabulary& vocabulary);

}  // namespace replywatch

#endif  // REPLYWATCH_TOKENIZER_HPP
