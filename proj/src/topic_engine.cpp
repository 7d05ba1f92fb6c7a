#include "replywatch/topic_engine.hpp"

#include <algorithm>

namespace replywatch {

std::vector<TopicMatch> detect_topics(std::span<const Token> tokens, const CompiledLexicon& lex) {
  std::vector<CompiledLexicon::TokenId> ids;
  ids.reserve(tokens.size());
  for (const Token& t : tokens) {
    ids.push_back(t.matchable() ? lex.token_id(t.text) : TokenAutomaton::kUnknown);
  }
  std::vector<TopicMatch> out;
  for (const LexiconHit& h : lex.match(ids)) {
    if (h.ref.kind != PatternRef::Kind::topic) continue;
    const TopicTerm& term = lex.topic_terms()[h.ref.index];
    out.push_back({term.topic, term.term, h.begin, h.end});
  }
  return out;
}

std::vector<TopicMatch> detect_topics(std::string_view text, const CompiledLexicon& lex) {
  return detect_topics(tokenize(text, lex.vocabulary()), lex);
}

std::vector<std::string> topic_set(const std::vector<TopicMatch>& matches) {
  std::vector<std::string> out;
  out.reserve(matches.size());
  for (const auto& m : matches) out.push_back(m.topic);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) out.emplace_back(kOtherTopic);
  return out;
}

}  // namespace replywatch
