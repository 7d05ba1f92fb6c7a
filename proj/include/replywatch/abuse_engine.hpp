#ifndef REPLYWATCH_ABUSE_ENGINE_HPP
#define REPLYWATCH_ABUSE_ENGINE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "replywatch/lexicon.hpp"
#include "replywatch/tokenizer.hpp"

namespace replywatch {

enum class AbuseType : std::uint8_t {
  sexist,
  racist,
  antisemitic,
  islamophobic,
  homophobic,
  political,
  untyped,
};
inline constexpr int kAbuseTypeCount = 7;

std::string_view to_string(AbuseType t);

// Subtype -> abuse type. Every subtype maps to exactly one type.
AbuseType abuse_type_of(Subtype s);

// Small value-type set of AbuseType.
class AbuseTypes {
 public:
  void insert(AbuseType t) { bits_ |= mask(t); }
  bool contains(AbuseType t) const { return (bits_ & mask(t)) != 0; }
  bool empty() const { return bits_ == 0; }
  AbuseTypes& operator|=(AbuseTypes o) {
    bits_ |= o.bits_;
    return *this;
  }
  std::vector<AbuseType> list() const;
  friend bool operator==(AbuseTypes, AbuseTypes) = default;

 private:
  static std::uint8_t mask(AbuseType t) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(t));
  }
  std::uint8_t bits_ = 0;
};

enum class Target { recipient, third_party, untargeted_counted, not_counted };

std::string_view to_string(Target t);

struct MatchedTerm {
  std::size_t begin;  // token span [begin, end)
  std::size_t end;
  std::uint32_t entry;  // index into CompiledLexicon::entries()
  bool plural;
};

struct AbuseMatch {
  std::size_t begin;  // token span [begin, end) covering all terms
  std::size_t end;
  std::vector<MatchedTerm> terms;
  int component_count = 0;  // == terms.size()
  AbuseTypes types;
  // No composition rule is met by singular terms alone ("idiots",
  // "f**king muslims").
  bool plural = false;
};

struct Classification {
  bool abusive = false;
  std::vector<AbuseMatch> matches;
  Target target = Target::not_counted;
  int max_components = 0;

  AbuseTypes types() const;
  // Abuse that counts toward the replied-to MP's tally.
  bool counts_for_recipient() const {
    return abusive && (target == Target::recipient || target == Target::untargeted_counted);
  }
};

// Emits one match per maximal window of lexicon hits (at most one unmatched
// token between consecutive hits, same sentence) that holds a slur, or an
// offensive word plus an identity term, or two offensive words.
std::vector<AbuseMatch> find_abuse_spans(std::span<const Token> tokens,
                                         const CompiledLexicon& lex);

// Pronoun-based target resolution.
//   - A second- or third-person cue within 2 tokens of a match (same
//     sentence) is a tight phrase; otherwise the nearest cue in the sentence
//     is used at lower priority. The nearer cue wins; ties go to recipient.
//   - Mentions after the leading reply prefix are third-person cues.
//   - No cue: untargeted_counted, or not_counted when every match is plural.
Target resolve_target(std::span<const Token> tokens, std::span<const AbuseMatch> matches);

struct ClassifyOptions {
  // Off for evaluation on labeled insult data: any abusive span counts and the
  // target is reported as untargeted_counted.
  bool resolve_targets = true;
};

Classification classify(std::string_view text, const CompiledLexicon& lex,
                        ClassifyOptions options = {});

// One-line JSON: {"id","abusive","target","types","max_components","spans"}.
std::string classification_json(std::string_view id, const Classification& c,
                                const CompiledLexicon& lex);

}  // namespace replywatch

#endif  // REPLYWATCH_ABUSE_ENGINE_HPP
