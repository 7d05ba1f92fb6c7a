#include "replywatch/corpus.hpp"

#include <algorithm>
#include <fstream>

#include "json.hpp"
#include "replywatch/csv.hpp"
#include "replywatch/errors.hpp"

namespace replywatch {
namespace {

using json = nlohmann::json;

std::string lower_handle(std::string_view raw) {
  if (!raw.empty() && raw.front() == '@') raw.remove_prefix(1);
  std::string out(raw);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(c >= 'A' && c <= 'Z' ? c + 32 : c);
  });
  return out;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
  }
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::string required_string(const json& obj, const char* field) {
  const auto it = obj.find(field);
  if (it == obj.end()) throw FieldError(field);
  if (it->is_string()) {
    std::string v = it->get<std::string>();
    if (v.empty()) throw FieldError(field);
    return v;
  }
  // Numeric ids show up in some archive exports.
  if (it->is_number_integer() || it->is_number_unsigned()) return it->dump();
  throw FieldError(field);
}

std::optional<std::string> optional_string(const json& obj, const char* field) {
  const auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (it->is_string()) {
    if (it->get_ref<const std::string&>().empty()) return std::nullopt;
    return it->get<std::string>();
  }
  if (it->is_number_integer() || it->is_number_unsigned()) return it->dump();
  throw FieldError(field);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

Tweet parse_tweet_line(std::string_view line) {
  json obj;
  try {
    obj = json::parse(line.begin(), line.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
  if (!obj.is_object()) throw ParseError("record is not a JSON object", 0);

  Tweet t;
  t.id = required_string(obj, "id");
  t.author_handle = lower_handle(required_string(obj, "author_handle"));
  if (t.author_handle.empty()) throw FieldError("author_handle");
  t.created_at = parse_rfc3339(required_string(obj, "created_at"));

  const auto text = obj.find("text");
  if (text == obj.end() || !text->is_string()) throw FieldError("text");
  t.text = text->get<std::string>();

  if (auto h = optional_string(obj, "in_reply_to_handle")) {
    t.in_reply_to_handle = lower_handle(*h);
    if (t.in_reply_to_handle->empty()) t.in_reply_to_handle.reset();
  }
  t.in_reply_to_id = optional_string(obj, "in_reply_to_id");

  if (const auto rt = obj.find("is_retweet"); rt != obj.end() && !rt->is_null()) {
    if (!rt->is_boolean()) throw FieldError("is_retweet");
    t.is_retweet = rt->get<bool>();
  }
  return t;
}

std::string_view to_string(Gender g) {
  return g == Gender::female ? "female" : "male";
}

std::string_view to_string(EthnicityGroup e) {
  return e == EthnicityGroup::white ? "white" : "minority";
}

Registry::Registry(std::vector<MPRecord> records) : records_(std::move(records)) {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (!index_.emplace(records_[i].handle, i).second) {
      throw InputError("duplicate handle '" + records_[i].handle + "' in registry");
    }
  }
}

std::optional<std::size_t> Registry::find(std::string_view handle) const {
  const auto it = index_.find(std::string(handle));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<MPRecord> load_registry(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open registry '" + path.string() + "'");
  return load_registry(in);
}

std::vector<MPRecord> load_registry(std::istream& in) {
  csv::Reader reader(in);
  csv::Row row;
  if (!reader.next(&row)) throw InputError("registry is empty");
  const csv::Header header(
      row, {"handle", "display_name", "party", "gender", "ethnicity_group"});
  const std::size_t c_handle = header.at("handle");
  const std::size_t c_name = header.at("display_name");
  const std::size_t c_party = header.at("party");
  const std::size_t c_gender = header.at("gender");
  const std::size_t c_eth = header.at("ethnicity_group");
  const std::size_t width =
      std::max({c_handle, c_name, c_party, c_gender, c_eth}) + 1;

  std::vector<MPRecord> out;
  std::unordered_set<std::string> seen;
  while (reader.next(&row)) {
    if (row.size() == 1 && trim(row[0]).empty()) continue;
    const std::string where = " on registry line " + std::to_string(reader.line());
    if (row.size() < width) throw InputError("too few columns" + where);

    MPRecord r;
    r.handle = lower_handle(trim(row[c_handle]));
    if (r.handle.empty()) throw InputError("empty handle" + where);
    r.display_name = trim(row[c_name]);
    r.party = trim(row[c_party]);

    const std::string gender = ascii_lower(trim(row[c_gender]));
    if (gender == "female") {
      r.gender = Gender::female;
    } else if (gender == "male") {
      r.gender = Gender::male;
    } else {
      throw InputError("unknown gender '" + row[c_gender] + "'" + where);
    }
    const std::string eth = ascii_lower(trim(row[c_eth]));
    if (eth == "white") {
      r.ethnicity_group = EthnicityGroup::white;
    } else if (eth == "minority") {
      r.ethnicity_group = EthnicityGroup::minority;
    } else {
      throw InputError("unknown ethnicity_group '" + row[c_eth] + "'" + where);
    }
    if (!seen.insert(r.handle).second) {
      throw InputError("duplicate handle '" + r.handle + "'" + where);
    }
    out.push_back(std::move(r));
  }
  return out;
}

LinkOutcome link_tweet(const Tweet& tweet, const Registry& registry) {
  LinkOutcome out;
  out.mp_authored = registry.find(tweet.author_handle).has_value();
  if (tweet.is_retweet) {
    out.mp_retweet = out.mp_authored;
    return out;
  }
  if (tweet.in_reply_to_handle && *tweet.in_reply_to_handle != tweet.author_handle) {
    out.recipient = registry.find(*tweet.in_reply_to_handle);
  }
  return out;
}

LinkCounters& LinkCounters::operator+=(const LinkCounters& o) {
  replies += o.replies;
  mp_authored += o.mp_authored;
  mp_retweets += o.mp_retweets;
  discarded += o.discarded;
  duplicates += o.duplicates;
  return *this;
}

LinkedCorpus link_replies(const std::vector<Tweet>& tweets,
                          const Registry& registry) {
  LinkedCorpus out;
  SeenIds seen;
  for (const Tweet& t : tweets) {
    if (!seen.insert(t.id)) {
      ++out.counters.duplicates;
      continue;
    }
    const LinkOutcome link = link_tweet(t, registry);
    if (link.discarded()) {
      ++out.counters.discarded;
      continue;
    }
    if (link.mp_authored) {
      ++out.counters.mp_authored;
      if (link.mp_retweet) ++out.counters.mp_retweets;
      out.mp_authored.push_back(t);
    }
    if (link.recipient) {
      ++out.counters.replies;
      out.replies_by_mp[registry[*link.recipient].handle].push_back(t);
    }
  }
  return out;
}

bool SeenIds::insert(std::string_view id) { return hashes_.insert(fnv1a(id)).second; }

std::size_t DateWindow::days() const {
  if (end < start) return 0;
  return static_cast<std::size_t>((end - start).count()) + 1;
}

DailySeriesBuilder::DailySeriesBuilder(const Registry& registry, DateWindow window)
    : registry_(&registry), window_(window) {
  const std::size_t d = window.days();
  if (d == 0) throw InputError("analysis window is empty");
  abuse_.assign(registry.size(), std::vector<std::int64_t>(d, 0));
  replies_.assign(registry.size(), std::vector<std::int64_t>(d, 0));
}

bool DailySeriesBuilder::add(std::size_t mp_index, Timestamp created_at,
                             bool abusive_at_recipient) {
  const Date day = utc_date(created_at);
  if (!window_.contains(day)) {
    ++dropped_;
    return false;
  }
  const auto d = static_cast<std::size_t>((day - window_.start).count());
  ++replies_[mp_index][d];
  if (abusive_at_recipient) ++abuse_[mp_index][d];
  return true;
}

void DailySeriesBuilder::merge(const DailySeriesBuilder& other) {
  for (std::size_t i = 0; i < replies_.size(); ++i) {
    for (std::size_t d = 0; d < replies_[i].size(); ++d) {
      replies_[i][d] += other.replies_[i][d];
      abuse_[i][d] += other.abuse_[i][d];
    }
  }
  dropped_ += other.dropped_;
}

std::vector<DailySeries> DailySeriesBuilder::build() const {
  std::vector<DailySeries> out;
  out.reserve(replies_.size());
  for (std::size_t i = 0; i < replies_.size(); ++i) {
    out.push_back({(*registry_)[i].handle, window_.start, abuse_[i], replies_[i]});
  }
  return out;
}

std::vector<DailySeries> build_daily_series(
    const std::map<std::string, std::vector<Tweet>>& replies_by_mp,
    const std::unordered_map<std::string, bool>& abusive_at_recipient,
    const Registry& registry, DateWindow window, std::uint64_t* dropped) {
  DailySeriesBuilder builder(registry, window);
  for (const auto& [handle, replies] : replies_by_mp) {
    const auto mp = registry.find(handle);
    if (!mp) throw InputError("reply stream for unknown MP '" + handle + "'");
    for (const Tweet& t : replies) {
      const auto verdict = abusive_at_recipient.find(t.id);
      if (verdict == abusive_at_recipient.end()) {
        throw InputError("reply '" + t.id + "' has no classification");
      }
      builder.add(*mp, t.created_at, verdict->second);
    }
  }
  if (dropped) *dropped = builder.dropped();
  return builder.build();
}

}  // namespace replywatch
