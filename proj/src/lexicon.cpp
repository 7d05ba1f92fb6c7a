#include "replywatch/lexicon.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <limits>
#include <set>
#include <tuple>

#include "replywatch/csv.hpp"
#include "replywatch/errors.hpp"
#include "unicode_util.hpp"

namespace replywatch {

namespace detail {

std::string nfc_lower(std::string_view s) {
  if (is_ascii(s)) {
    std::string out(s);
    for (char& c : out) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
    }
    return out;
  }
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  icu::UnicodeString text = icu::UnicodeString::fromUTF8(
      icu::StringPiece(s.data(), static_cast<std::int32_t>(s.size())));
  if (U_SUCCESS(status)) text = nfc->normalize(text, status);
  text.toLower(icu::Locale::getRoot());
  if (U_SUCCESS(status)) text = nfc->normalize(text, status);
  std::string out;
  text.toUTF8String(out);
  return out;
}

}  // namespace detail

namespace {

constexpr std::array<std::string_view, 3> kCategoryNames = {"slur", "offensive",
                                                            "identity"};
constexpr std::array<std::string_view, 8> kSubtypeNames = {
    "race",          "nationality", "religion_jewish",    "religion_muslim",
    "gender_female", "gender_male", "sexual_orientation", "political"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_spaces(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ') ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

// Normalizes a space-separated term token by token. Returns empty when a
// token would not survive tokenization as a single word.
std::vector<std::string> term_tokens(std::string_view term) {
  std::vector<std::string> out;
  for (const std::string& raw : split_spaces(term)) {
    std::string tok = normalize_token(raw);
    if (tok.empty()) return {};
    std::size_t pos = 0;
    while (pos < tok.size()) {
      const UChar32 c = detail::next_code_point(tok, &pos);
      if (!detail::is_word_char(c) && !detail::is_apostrophe(c) && c != '*') return {};
    }
    out.push_back(std::move(tok));
  }
  return out;
}

std::string join_tokens(const std::vector<std::string>& toks) {
  std::string out;
  for (const auto& t : toks) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

std::string lower_ascii(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
  }
  return s;
}

}  // namespace

std::string_view to_string(Category c) { return kCategoryNames[static_cast<int>(c)]; }
std::string_view to_string(Subtype s) { return kSubtypeNames[static_cast<int>(s)]; }

std::optional<Category> parse_category(std::string_view s) {
  const std::string v = lower_ascii(trim(s));
  for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
    if (v == kCategoryNames[i]) return static_cast<Category>(i);
  }
  return std::nullopt;
}

std::optional<Subtype> parse_subtype(std::string_view s) {
  const std::string v = lower_ascii(trim(s));
  for (std::size_t i = 0; i < kSubtypeNames.size(); ++i) {
    if (v == kSubtypeNames[i]) return static_cast<Subtype>(i);
  }
  return std::nullopt;
}

std::string normalize_token(std::string_view raw) {
  std::size_t begin = 0;
  std::size_t end = raw.size();
  // Skip leading non-word code points.
  for (std::size_t pos = 0; pos < raw.size();) {
    const std::size_t at = pos;
    if (detail::is_word_char(detail::next_code_point(raw, &pos))) {
      begin = at;
      break;
    }
    begin = pos;
  }
  // Find the end of the last word code point.
  end = begin;
  for (std::size_t pos = begin; pos < raw.size();) {
    if (detail::is_word_char(detail::next_code_point(raw, &pos))) end = pos;
  }
  if (end <= begin) return {};
  std::string out = detail::nfc_lower(raw.substr(begin, end - begin));
  // Typographic apostrophe folds to ASCII.
  for (std::size_t p; (p = out.find("\xE2\x80\x99")) != std::string::npos;) {
    out.replace(p, 3, "'");
  }
  return out;
}

std::vector<LexiconEntry> load_abuse_terms(std::istream& in) {
  csv::Reader reader(in);
  csv::Row row;
  if (!reader.next(&row)) throw InputError("abuse lexicon is empty");
  const csv::Header header(row, {"surface", "category", "subtype", "plural_forms"});
  const std::size_t c_surface = header.at("surface");
  const std::size_t c_category = header.at("category");
  const std::size_t c_subtype = header.at("subtype");
  const std::size_t c_plural = header.at("plural_forms");
  const std::size_t width = std::max({c_surface, c_category, c_subtype, c_plural}) + 1;

  std::vector<LexiconEntry> out;
  std::set<std::pair<std::string, Category>> seen;
  while (reader.next(&row)) {
    if (row.size() == 1 && trim(row[0]).empty()) continue;
    const std::string where = " on lexicon line " + std::to_string(reader.line());
    while (row.size() < width) row.emplace_back();

    LexiconEntry e;
    const std::string raw_surface = trim(row[c_surface]);
    if (raw_surface.empty()) throw InputError("empty surface" + where);
    const auto toks = term_tokens(raw_surface);
    if (toks.empty() || toks.size() > 4) {
      throw InputError("surface '" + raw_surface + "' must be 1-4 word tokens" + where);
    }
    e.surface = join_tokens(toks);

    const auto category = parse_category(row[c_category]);
    if (!category) throw InputError("unknown category '" + row[c_category] + "'" + where);
    e.category = *category;

    if (!trim(row[c_subtype]).empty()) {
      e.subtype = parse_subtype(row[c_subtype]);
      if (!e.subtype) throw InputError("unknown subtype '" + row[c_subtype] + "'" + where);
    }
    if (e.category == Category::identity && !e.subtype) {
      throw InputError("identity term '" + e.surface + "' needs a subtype" + where);
    }
    if (e.category == Category::offensive && e.subtype) {
      throw InputError("offensive word '" + e.surface + "' cannot carry a subtype" + where);
    }

    std::string plurals = row[c_plural];
    std::replace(plurals.begin(), plurals.end(), ';', '|');
    std::size_t start = 0;
    while (start <= plurals.size()) {
      const std::size_t bar = std::min(plurals.find('|', start), plurals.size());
      const std::string p = trim(std::string_view(plurals).substr(start, bar - start));
      if (!p.empty()) {
        const auto ptoks = term_tokens(p);
        if (ptoks.empty() || ptoks.size() > 4) {
          throw InputError("plural form '" + p + "' must be 1-4 word tokens" + where);
        }
        e.plural_forms.push_back(join_tokens(ptoks));
      }
      start = bar + 1;
    }

    if (!seen.emplace(e.surface, e.category).second) {
      throw InputError("duplicate entry '" + e.surface + "' (" +
                       std::string(to_string(e.category)) + ")" + where);
    }
    out.push_back(std::move(e));
  }
  return out;
}

TopicMap load_topic_terms(std::istream& in) {
  csv::Reader reader(in);
  csv::Row row;
  if (!reader.next(&row)) throw InputError("topic lexicon is empty");
  const csv::Header header(row, {"topic", "term"});
  const std::size_t c_topic = header.at("topic");
  const std::size_t c_term = header.at("term");

  TopicMap out;
  std::set<std::pair<std::string, std::string>> seen;
  while (reader.next(&row)) {
    if (row.size() == 1 && trim(row[0]).empty()) continue;
    const std::string where = " on topic line " + std::to_string(reader.line());
    if (row.size() <= std::max(c_topic, c_term)) throw InputError("too few columns" + where);
    const std::string topic = trim(row[c_topic]);
    if (topic.empty()) throw InputError("empty topic" + where);
    const auto toks = term_tokens(trim(row[c_term]));
    if (toks.empty()) throw InputError("empty or malformed term" + where);
    std::string term = join_tokens(toks);
    if (!seen.emplace(topic, term).second) {
      throw InputError("duplicate topic term '" + term + "'" + where);
    }
    out[topic].push_back(std::move(term));
  }
  return out;
}

LexiconData load_lexicon(const std::filesystem::path& abuse_terms,
                         const std::filesystem::path& topic_terms) {
  LexiconData data;
  {
    std::ifstream in(abuse_terms);
    if (!in) throw InputError("cannot open lexicon '" + abuse_terms.string() + "'");
    data.entries = load_abuse_terms(in);
  }
  if (!topic_terms.empty()) {
    std::ifstream in(topic_terms);
    if (!in) throw InputError("cannot open topic lexicon '" + topic_terms.string() + "'");
    data.topics = load_topic_terms(in);
  }
  return data;
}

void SegmentVocabulary::add(std::string_view word) {
  if (word.empty()) return;
  max_length_ = std::max(max_length_, word.size());
  words_.emplace(word);
}

std::vector<std::string> segment_hashtag(std::string_view tag,
                                         const SegmentVocabulary& vocabulary) {
  struct CodePoint {
    UChar32 c;
    std::size_t begin;
    std::size_t end;
  };
  std::vector<CodePoint> cps;
  for (std::size_t pos = 0; pos < tag.size();) {
    const std::size_t at = pos;
    const UChar32 c = detail::next_code_point(tag, &pos);
    cps.push_back({c, at, pos});
  }
  if (cps.empty()) return {};

  auto is_digit = [](UChar32 c) { return u_isdigit(c) != 0; };
  auto is_letter = [](UChar32 c) { return u_isalpha(c) != 0; };

  // Byte offsets where a new piece starts.
  std::vector<std::size_t> digit_cuts;
  std::vector<std::size_t> case_cuts;
  for (std::size_t i = 1; i < cps.size(); ++i) {
    const UChar32 prev = cps[i - 1].c;
    const UChar32 cur = cps[i].c;
    if ((is_digit(prev) && is_letter(cur)) || (is_letter(prev) && is_digit(cur))) {
      digit_cuts.push_back(cps[i].begin);
    } else if (u_islower(prev) && u_isupper(cur)) {
      case_cuts.push_back(cps[i].begin);
    } else if (u_isupper(prev) && u_isupper(cur) && i + 1 < cps.size() &&
               u_islower(cps[i + 1].c)) {
      case_cuts.push_back(cps[i].begin);  // "NHSCrisis" -> NHS | Crisis
    }
  }

  auto pieces_at = [&](std::vector<std::size_t> cuts) {
    std::sort(cuts.begin(), cuts.end());
    std::vector<std::string> out;
    std::size_t start = 0;
    cuts.push_back(tag.size());
    for (const std::size_t cut : cuts) {
      out.push_back(detail::nfc_lower(tag.substr(start, cut - start)));
      start = cut;
    }
    return out;
  };

  if (!case_cuts.empty()) {
    std::vector<std::size_t> all = case_cuts;
    all.insert(all.end(), digit_cuts.begin(), digit_cuts.end());
    return pieces_at(std::move(all));
  }

  std::vector<std::string> out;
  for (std::string& piece : pieces_at(digit_cuts)) {
    if (vocabulary.size() == 0 || vocabulary.contains(piece)) {
      out.push_back(std::move(piece));
      continue;
    }
    // Fewest vocabulary words covering the piece; among equal counts the
    // longest first word wins, recursively.
    std::vector<std::size_t> bounds;
    for (std::size_t pos = 0; pos < piece.size();) {
      bounds.push_back(pos);
      detail::next_code_point(piece, &pos);
    }
    bounds.push_back(piece.size());
    const std::size_t n = bounds.size() - 1;
    constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> best(n + 1, kInf);
    std::vector<std::size_t> next(n + 1, n);
    best[n] = 0;
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = n; j > i; --j) {
        const std::size_t len = bounds[j] - bounds[i];
        if (len > vocabulary.max_length() || best[j] == kInf) continue;
        if (!vocabulary.contains(std::string_view(piece).substr(bounds[i], len))) continue;
        if (best[j] + 1 < best[i]) {
          best[i] = best[j] + 1;
          next[i] = j;
        }
      }
    }
    if (best[0] == kInf) {
      out.push_back(std::move(piece));
      continue;
    }
    for (std::size_t i = 0; i < n; i = next[i]) {
      out.push_back(piece.substr(bounds[i], bounds[next[i]] - bounds[i]));
    }
  }
  return out;
}

std::vector<LexiconHit> CompiledLexicon::match(std::span<const TokenId> tokens) const {
  std::vector<TokenAutomaton::Hit> raw;
  automaton_.scan(tokens, &raw);
  std::vector<LexiconHit> out;
  out.reserve(raw.size());
  for (const auto& h : raw) out.push_back({h.begin, h.end, patterns_[h.pattern]});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<LexiconHit> CompiledLexicon::match_words(std::span<const std::string> words) const {
  std::vector<TokenId> ids;
  ids.reserve(words.size());
  for (const auto& w : words) ids.push_back(token_id(w));
  return match(ids);
}

CompiledLexicon compile(std::vector<LexiconEntry> entries, TopicMap topics) {
  auto key = [](const LexiconEntry& e) {
    return std::tie(e.surface, e.category, e.subtype, e.plural_forms);
  };
  std::sort(entries.begin(), entries.end(),
            [&](const LexiconEntry& a, const LexiconEntry& b) { return key(a) < key(b); });
  for (auto& [topic, terms] : topics) {
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  }

  CompiledLexicon lex;
  auto add = [&](std::string_view text, PatternRef ref) {
    const auto toks = split_spaces(text);
    if (toks.empty()) return;
    for (const auto& t : toks) lex.vocabulary_.add(t);
    const auto id = static_cast<std::uint32_t>(lex.patterns_.size());
    lex.patterns_.push_back(ref);
    lex.automaton_.add_pattern(toks, id);
  };

  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto idx = static_cast<std::uint32_t>(i);
    add(entries[i].surface, {PatternRef::Kind::abuse, idx, false});
    for (const auto& p : entries[i].plural_forms) {
      add(p, {PatternRef::Kind::abuse, idx, true});
    }
  }
  for (const auto& [topic, terms] : topics) {
    for (const auto& term : terms) {
      const auto idx = static_cast<std::uint32_t>(lex.topic_terms_.size());
      lex.topic_terms_.push_back({topic, term});
      add(term, {PatternRef::Kind::topic, idx, false});
    }
  }
  lex.automaton_.build();
  lex.entries_ = std::move(entries);
  lex.topics_ = std::move(topics);
  return lex;
}

CompiledLexicon compile(LexiconData data) {
  return compile(std::move(data.entries), std::move(data.topics));
}

}  // namespace replywatch
