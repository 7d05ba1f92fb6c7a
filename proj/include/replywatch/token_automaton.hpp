#ifndef REPLYWATCH_TOKEN_AUTOMATON_HPP
#define REPLYWATCH_TOKEN_AUTOMATON_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace replywatch {

// Aho-Corasick automaton whose alphabet is whole tokens rather than bytes.
// Patterns are token sequences; one left-to-right pass over a token stream
// reports every occurrence of every pattern, overlapping ones included.
class TokenAutomaton {
 public:
  using TokenId = std::uint32_t;
  static constexpr TokenId kUnknown = 0;

  struct Hit {
    std::size_t begin;  // first token
    std::size_t end;    // one past the last token
    std::uint32_t pattern;

    friend bool operator==(const Hit&, const Hit&) = default;
    friend auto operator<=>(const Hit&, const Hit&) = default;
  };

  // Patterns must all be added before build(). Pattern ids are caller-chosen
  // and may repeat across different token sequences.
  void add_pattern(std::span<const std::string> tokens, std::uint32_t pattern);
  void build();

  // kUnknown for tokens that occur in no pattern.
  TokenId id_of(std::string_view token) const;

  // Appends hits in order of their end position, then pattern length
  // descending. Tokens equal to kUnknown never match.
  void scan(std::span<const TokenId> text, std::vector<Hit>* out) const;

  std::size_t pattern_count() const { return pattern_count_; }

 private:
  struct Node {
    std::vector<std::pair<TokenId, std::uint32_t>> edges;  // sorted by token
    std::uint32_t fail = 0;
    std::uint32_t output_link = 0;  // nearest proper suffix node with outputs
    std::uint32_t depth = 0;
    std::vector<std::uint32_t> outputs;
  };

  std::uint32_t child(std::uint32_t node, TokenId t) const;
  TokenId intern(const std::string& token);

  std::vector<Node> nodes_{Node{}};
  std::unordered_map<std::string, TokenId> vocabulary_;
  std::size_t pattern_count_ = 0;
  bool built_ = false;
};

}  // namespace replywatch

#endif  // REPLYWATCH_TOKEN_AUTOMATON_HPP
