#ifndef REPLYWATCH_TOPIC_ENGINE_HPP
#define REPLYWATCH_TOPIC_ENGINE_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "replywatch/lexicon.hpp"
#include "replywatch/tokenizer.hpp"

namespace replywatch {

// Tweets with no topic term are attributed here so per-topic tables still sum
// to the totals.
inline constexpr std::string_view kOtherTopic = "other";

struct TopicMatch {
  std::string topic;
  std::string term;
  std::size_t begin;  // token span [begin, end)
  std::size_t end;
};

// Every topic-term occurrence, in token order, including terms found inside
// segmented hashtags.
std::vector<TopicMatch> detect_topics(std::span<const Token> tokens, const CompiledLexicon& lex);
std::vector<TopicMatch> detect_topics(std::string_view text, const CompiledLexicon& lex);

// Distinct topic names, sorted; {"other"} when nothing matched.
std::vector<std::string> topic_set(const std::vector<TopicMatch>& matches);

}  // namespace replywatch

#endif  // REPLYWATCH_TOPIC_ENGINE_HPP
