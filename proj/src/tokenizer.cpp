#include "replywatch/tokenizer.hpp"

#include "unicode_util.hpp"

namespace replywatch {
namespace {

using detail::is_apostrophe;
using detail::is_word_char;
using detail::next_code_point;

bool is_space(UChar32 c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || (c >= 0x80 && u_isUWhiteSpace(c));
}

bool is_terminal(UChar32 c) { return c == '.' || c == '!' || c == '?' || c == 0x2026; }

bool starts_with_icase(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char c = s[i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
    if (c != prefix[i]) return false;
  }
  return true;
}

UChar32 peek(std::string_view s, std::size_t pos) {
  if (pos >= s.size()) return 0;
  return next_code_point(s, &pos);
}

class Scanner {
 public:
  Scanner(std::string_view text, const SegmentVocabulary& vocabulary)
      : text_(text), vocabulary_(vocabulary) {}

  std::vector<Token> run() {
    std::size_t pos = 0;
    bool at_boundary = true;  // previous code point was not part of a token
    while (pos < text_.size()) {
      const std::size_t start = pos;
      const UChar32 c = next_code_point(text_, &pos);
      if (is_space(c)) {
        at_boundary = true;
        continue;
      }
      if (at_boundary && (starts_with_icase(text_.substr(start), "http://") ||
                          starts_with_icase(text_.substr(start), "https://") ||
                          starts_with_icase(text_.substr(start), "www."))) {
        pos = consume_url(start);
        at_boundary = true;
        continue;
      }
      if (c == '@' && is_word_char(peek(text_, pos))) {
        pos = consume_word_chars(pos);
        emit({std::string(text_.substr(start, pos - start)), TokenKind::mention, start});
        at_boundary = false;
        continue;
      }
      if (c == '#' && is_word_char(peek(text_, pos))) {
        const std::size_t body = pos;
        pos = consume_word_chars(pos);
        emit_hashtag(text_.substr(body, pos - body), start);
        at_boundary = false;
        continue;
      }
      if (is_word_char(c) || is_apostrophe(c) || c == '*') {
        pos = consume_word_run(start);
        std::string norm = normalize_token(text_.substr(start, pos - start));
        if (!norm.empty()) emit({std::move(norm), TokenKind::word, start});
        at_boundary = false;
        continue;
      }
      if (is_terminal(c)) close_sentence();
      at_boundary = true;
    }
    return std::move(tokens_);
  }

 private:
  std::size_t consume_word_chars(std::size_t pos) const {
    while (pos < text_.size()) {
      std::size_t next = pos;
      if (!is_word_char(next_code_point(text_, &next))) break;
      pos = next;
    }
    return pos;
  }

  std::size_t consume_word_run(std::size_t pos) const {
    while (pos < text_.size()) {
      std::size_t next = pos;
      const UChar32 c = next_code_point(text_, &next);
      if (!is_word_char(c) && !is_apostrophe(c) && c != '*') break;
      pos = next;
    }
    return pos;
  }

  std::size_t consume_url(std::size_t start) {
    std::size_t pos = start;
    while (pos < text_.size()) {
      std::size_t next = pos;
      if (is_space(next_code_point(text_, &next))) break;
      pos = next;
    }
    // Trailing punctuation belongs to the sentence, not the URL.
    std::size_t end = pos;
    while (end > start && std::string_view(".,!?;:)\"'").find(text_[end - 1]) !=
                              std::string_view::npos) {
      --end;
    }
    emit({std::string(text_.substr(start, end - start)), TokenKind::url, start});
    for (std::size_t i = end; i < pos; ++i) {
      if (is_terminal(static_cast<unsigned char>(text_[i]))) close_sentence();
    }
    return pos;
  }

  void emit_hashtag(std::string_view body, std::size_t offset) {
    const std::uint32_t group = hashtags_++;
    std::size_t start = 0;
    while (start <= body.size()) {
      const std::size_t bar = std::min(body.find('_', start), body.size());
      const std::string_view part = body.substr(start, bar - start);
      if (!part.empty()) {
        for (std::string& seg : segment_hashtag(part, vocabulary_)) {
          Token t{std::move(seg), TokenKind::word, offset};
          t.hashtag = group;
          emit(std::move(t));
        }
      }
      start = bar + 1;
    }
  }

  void emit(Token t) {
    t.sentence = sentence_;
    tokens_.push_back(std::move(t));
  }

  void close_sentence() {
    if (!tokens_.empty() && tokens_.back().sentence == sentence_) ++sentence_;
  }

  std::string_view text_;
  const SegmentVocabulary& vocabulary_;
  std::vector<Token> tokens_;
  std::size_t sentence_ = 0;
  std::uint32_t hashtags_ = 0;
};

}  // namespace

std::vector<Token> tokenize(std::string_view text, const SegmentVocabulary& vocabulary) {
  return Scanner(text, vocabulary).run();
}

}  // namespace replywatch
