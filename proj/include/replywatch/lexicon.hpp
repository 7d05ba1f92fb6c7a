#ifndef REPLYWATCH_LEXICON_HPP
#define REPLYWATCH_LEXICON_HPP

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "replywatch/token_automaton.hpp"

namespace replywatch {

enum class Category { slur, offensive, identity };

enum class Subtype {
  race,
  nationality,
  religion_jewish,
  religion_muslim,
  gender_female,
  gender_male,
  sexual_orientation,
  political,
};

std::string_view to_string(Category c);
std::string_view to_string(Subtype s);
std::optional<Category> parse_category(std::string_view s);
std::optional<Subtype> parse_subtype(std::string_view s);

struct LexiconEntry {
  std::string surface;  // normalized, 1-4 space-separated tokens
  Category category = Category::slur;
  std::optional<Subtype> subtype;
  std::vector<std::string> plural_forms;
};

// Topic name -> terms. Ordered so every consumer iterates deterministically.
using TopicMap = std::map<std::string, std::vector<std::string>>;

struct LexiconData {
  std::vector<LexiconEntry> entries;
  TopicMap topics;
};

// Abuse file header: surface,category,subtype,plural_forms (plural forms are
// '|'-separated). Topic file header: topic,term. Throws InputError on
// duplicates, unknown enum values, empty surfaces or a subtype that does not
// fit its category (identity terms need one, offensive words take none).
LexiconData load_lexicon(const std::filesystem::path& abuse_terms,
                         const std::filesystem::path& topic_terms);
std::vector<LexiconEntry> load_abuse_terms(std::istream& in);
TopicMap load_topic_terms(std::istream& in);

// Lowercase, NFC, leading and trailing punctuation removed. Internal
// apostrophes and asterisks survive, so "F**KING" -> "f**king".
std::string normalize_token(std::string_view raw);

// Words usable as hashtag segments. Membership is by normalized spelling.
class SegmentVocabulary {
 public:
  void add(std::string_view word);
  bool contains(std::string_view word) const { return words_.contains(std::string(word)); }
  std::size_t max_length() const { return max_length_; }  // in bytes
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
  std::size_t max_length_ = 0;
};

// Splits a hashtag body (no '#'). CamelCase and letter/digit boundaries split
// first; a tag with no case boundary is instead cut into the fewest
// vocabulary words (ties: longest first segment). Letter runs that cannot be
// fully covered by the vocabulary stay whole. Output is lowercased and its
// concatenation always equals the lowercased tag.
std::vector<std::string> segment_hashtag(std::string_view tag,
                                         const SegmentVocabulary& vocabulary);

// What a lexicon hit refers to.
struct PatternRef {
  enum class Kind : std::uint8_t { abuse, topic };
  Kind kind = Kind::abuse;
  std::uint32_t index = 0;  // into entries() or topic_terms()
  bool plural = false;      // matched through a plural form

  friend bool operator==(const PatternRef&, const PatternRef&) = default;
  friend auto operator<=>(const PatternRef&, const PatternRef&) = default;
};

struct LexiconHit {
  std::size_t begin;  // token span [begin, end)
  std::size_t end;
  PatternRef ref;

  friend bool operator==(const LexiconHit&, const LexiconHit&) = default;
  friend auto operator<=>(const LexiconHit&, const LexiconHit&) = default;
};

struct TopicTerm {
  std::string topic;
  std::string term;
};

// Immutable after construction; share freely across threads.
class CompiledLexicon {
 public:
  using TokenId = TokenAutomaton::TokenId;

  const std::vector<LexiconEntry>& entries() const { return entries_; }
  const std::vector<TopicTerm>& topic_terms() const { return topic_terms_; }
  const TopicMap& topics() const { return topics_; }
  const SegmentVocabulary& vocabulary() const { return vocabulary_; }

  TokenId token_id(std::string_view normalized_token) const {
    return automaton_.id_of(normalized_token);
  }

  // All hits over a token-id stream, sorted by (begin, end, ref).
  std::vector<LexiconHit> match(std::span<const TokenId> tokens) const;

  // Convenience for normalized word sequences.
  std::vector<LexiconHit> match_words(std::span<const std::string> words) const;

 private:
  friend CompiledLexicon compile(std::vector<LexiconEntry> entries, TopicMap topics);

  std::vector<LexiconEntry> entries_;
  std::vector<TopicTerm> topic_terms_;
  TopicMap topics_;
  std::vector<PatternRef> patterns_;
  TokenAutomaton automaton_;
  SegmentVocabulary vocabulary_;
};

// Entries and terms are put in canonical order first, so any permutation of
// the same input compiles to the same matcher.
CompiledLexicon compile(std::vector<LexiconEntry> entries, TopicMap topics = {});
CompiledLexicon compile(LexiconData data);

}  // namespace replywatch

#endif  // REPLYWATCH_LEXICON_HPP
