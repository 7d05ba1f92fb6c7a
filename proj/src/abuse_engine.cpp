#include "replywatch/abuse_engine.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "json.hpp"

namespace replywatch {
namespace {

constexpr std::array<std::string_view, kAbuseTypeCount> kTypeNames = {
    "sexist", "racist", "antisemitic", "islamophobic", "homophobic", "political", "untyped"};

constexpr std::array<std::string_view, 4> kTargetNames = {
    "recipient", "third_party", "untargeted_counted", "not_counted"};

constexpr std::array<std::string_view, 17> kSecondPerson = {
    "you",   "your", "yours", "yourself", "yourselves", "u",    "ur",     "ya",  "yer",
    "you're", "youre", "you've", "you'll", "you'd",     "thee", "thou", "ye"};

constexpr std::array<std::string_view, 16> kThirdPerson = {
    "he",   "him",  "his",    "himself", "she",    "her",     "hers",    "herself",
    "they", "them", "their",  "theirs",  "he's",   "she's",   "they're", "themselves"};

enum class Cue { none, second, third };

Cue cue_of(const Token& t, bool in_reply_prefix) {
  if (t.kind == TokenKind::mention) return in_reply_prefix ? Cue::none : Cue::third;
  if (t.kind != TokenKind::word) return Cue::none;
  if (std::find(kSecondPerson.begin(), kSecondPerson.end(), t.text) != kSecondPerson.end()) {
    return Cue::second;
  }
  if (std::find(kThirdPerson.begin(), kThirdPerson.end(), t.text) != kThirdPerson.end()) {
    return Cue::third;
  }
  return Cue::none;
}

std::size_t distance_to(std::size_t pos, const AbuseMatch& m) {
  if (pos < m.begin) return m.begin - pos;
  if (pos >= m.end) return pos - (m.end - 1);
  return 0;
}

// Level 2 = tight phrase, 1 = same sentence, 0 = no cue.
struct Resolution {
  int level = 0;
  Target target = Target::not_counted;
};

Resolution resolve_one(std::span<const Token> tokens, std::span<const Cue> cues,
                       const AbuseMatch& m) {
  constexpr std::size_t kTight = 2;
  constexpr std::size_t kFar = std::numeric_limits<std::size_t>::max();
  const std::size_t sentence = tokens[m.begin].sentence;
  std::size_t best_second = kFar;
  std::size_t best_third = kFar;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (cues[i] == Cue::none || tokens[i].sentence != sentence) continue;
    const std::size_t d = distance_to(i, m);
    auto& best = cues[i] == Cue::second ? best_second : best_third;
    best = std::min(best, d);
  }
  const std::size_t nearest = std::min(best_second, best_third);
  if (nearest == kFar) return {};
  Resolution r;
  r.level = nearest <= kTight ? 2 : 1;
  r.target = best_second <= best_third ? Target::recipient : Target::third_party;
  return r;
}

}  // namespace

std::string_view to_string(AbuseType t) { return kTypeNames[static_cast<int>(t)]; }
std::string_view to_string(Target t) { return kTargetNames[static_cast<int>(t)]; }

AbuseType abuse_type_of(Subtype s) {
  switch (s) {
    case Subtype::gender_female:
    case Subtype::gender_male:
      return AbuseType::sexist;
    case Subtype::race:
    case Subtype::nationality:
      return AbuseType::racist;
    case Subtype::religion_jewish:
      return AbuseType::antisemitic;
    case Subtype::religion_muslim:
      return AbuseType::islamophobic;
    case Subtype::sexual_orientation:
      return AbuseType::homophobic;
    case Subtype::political:
      return AbuseType::political;
  }
  return AbuseType::untyped;
}

std::vector<AbuseType> AbuseTypes::list() const {
  std::vector<AbuseType> out;
  for (int i = 0; i < kAbuseTypeCount; ++i) {
    if (contains(static_cast<AbuseType>(i))) out.push_back(static_cast<AbuseType>(i));
  }
  return out;
}

AbuseTypes Classification::types() const {
  AbuseTypes all;
  for (const auto& m : matches) all |= m.types;
  return all;
}

std::vector<AbuseMatch> find_abuse_spans(std::span<const Token> tokens,
                                         const CompiledLexicon& lex) {
  std::vector<CompiledLexicon::TokenId> ids;
  ids.reserve(tokens.size());
  for (const Token& t : tokens) {
    ids.push_back(t.matchable() ? lex.token_id(t.text) : TokenAutomaton::kUnknown);
  }
  std::vector<MatchedTerm> hits;
  for (const LexiconHit& h : lex.match(ids)) {
    if (h.ref.kind == PatternRef::Kind::abuse) {
      hits.push_back({h.begin, h.end, h.ref.index, h.ref.plural});
    }
  }

  std::vector<AbuseMatch> out;
  const auto& entries = lex.entries();
  auto close_window = [&](AbuseMatch&& w) {
    int slurs = 0, offensive = 0, identity = 0;
    int singular_slurs = 0, singular_identity = 0;
    for (const MatchedTerm& t : w.terms) {
      const LexiconEntry& e = entries[t.entry];
      switch (e.category) {
        case Category::slur:
          ++slurs;
          singular_slurs += !t.plural;
          break;
        case Category::offensive:
          ++offensive;
          break;
        case Category::identity:
          ++identity;
          singular_identity += !t.plural;
          break;
      }
      if (e.subtype) w.types.insert(abuse_type_of(*e.subtype));
    }
    const bool abusive = slurs > 0 || (offensive > 0 && identity > 0) || offensive >= 2;
    if (!abusive) return;
    if (w.types.empty()) w.types.insert(AbuseType::untyped);
    w.component_count = static_cast<int>(w.terms.size());
    // Plural unless some rule is satisfied by singular terms alone.
    w.plural = !(singular_slurs > 0 || (offensive > 0 && singular_identity > 0) || offensive >= 2);
    out.push_back(std::move(w));
  };

  std::optional<AbuseMatch> window;
  for (const MatchedTerm& h : hits) {
    if (window && h.begin <= window->end + 1 &&
        tokens[h.begin].sentence == tokens[window->begin].sentence) {
      window->end = std::max(window->end, h.end);
      window->terms.push_back(h);
      continue;
    }
    if (window) close_window(std::move(*window));
    window = AbuseMatch{h.begin, h.end, {h}, 0, {}, false};
  }
  if (window) close_window(std::move(*window));
  return out;
}

Target resolve_target(std::span<const Token> tokens, std::span<const AbuseMatch> matches) {
  if (matches.empty()) return Target::not_counted;
  std::vector<Cue> cues(tokens.size(), Cue::none);
  bool prefix = true;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].kind != TokenKind::mention) prefix = false;
    cues[i] = cue_of(tokens[i], prefix);
  }

  int best_level = 0;
  bool any_recipient = false;
  for (const AbuseMatch& m : matches) {
    const Resolution r = resolve_one(tokens, cues, m);
    if (r.level > best_level) {
      best_level = r.level;
      any_recipient = false;
    }
    if (r.level == best_level && r.level > 0 && r.target == Target::recipient) {
      any_recipient = true;
    }
  }
  if (best_level > 0) return any_recipient ? Target::recipient : Target::third_party;

  const bool all_plural =
      std::all_of(matches.begin(), matches.end(), [](const AbuseMatch& m) { return m.plural; });
  return all_plural ? Target::not_counted : Target::untargeted_counted;
}

Classification classify(std::string_view text, const CompiledLexicon& lex,
                        ClassifyOptions options) {
  const std::vector<Token> tokens = tokenize(text, lex.vocabulary());
  Classification c;
  c.matches = find_abuse_spans(tokens, lex);
  if (c.matches.empty()) return c;
  c.target = options.resolve_targets ? resolve_target(tokens, c.matches)
                                     : Target::untargeted_counted;
  c.abusive = c.target != Target::not_counted;
  for (const auto& m : c.matches) c.max_components = std::max(c.max_components, m.component_count);
  return c;
}

std::string classification_json(std::string_view id, const Classification& c,
                                const CompiledLexicon& lex) {
  using ojson = nlohmann::ordered_json;
  auto type_list = [](AbuseTypes types) {
    ojson arr = ojson::array();
    for (const AbuseType t : types.list()) arr.push_back(std::string(to_string(t)));
    return arr;
  };
  ojson spans = ojson::array();
  for (const AbuseMatch& m : c.matches) {
    ojson terms = ojson::array();
    for (const MatchedTerm& t : m.terms) {
      const LexiconEntry& e = lex.entries()[t.entry];
      terms.push_back(ojson{{"surface", e.surface},
                            {"category", std::string(to_string(e.category))},
                            {"plural", t.plural}});
    }
    spans.push_back(ojson{{"begin", m.begin},
                          {"end", m.end},
                          {"components", m.component_count},
                          {"types", type_list(m.types)},
                          {"terms", std::move(terms)}});
  }
  const ojson out{{"id", std::string(id)},
                  {"abusive", c.abusive},
                  {"target", std::string(to_string(c.target))},
                  {"types", type_list(c.types())},
                  {"max_components", c.max_components},
                  {"spans", std::move(spans)}};
  return out.dump();
}

}  // namespace replywatch
