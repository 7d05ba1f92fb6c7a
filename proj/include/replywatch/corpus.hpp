#ifndef REPLYWATCH_CORPUS_HPP
#define REPLYWATCH_CORPUS_HPP

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "replywatch/civil_time.hpp"

namespace replywatch {

struct Tweet {
  std::string id;
  std::string author_handle;  // lowercase
  Timestamp created_at{};
  std::string text;
  std::optional<std::string> in_reply_to_handle;  // lowercase
  std::optional<std::string> in_reply_to_id;
  bool is_retweet = false;
};

// Parses one JSON-lines record. Throws ParseError (byte offset of the JSON
// error), FieldError (names the missing field) or TimestampError.
Tweet parse_tweet_line(std::string_view line);

enum class Gender { female, male };
enum class EthnicityGroup { white, minority };

std::string_view to_string(Gender g);
std::string_view to_string(EthnicityGroup e);

struct MPRecord {
  std::string handle;  // lowercase, unique
  std::string display_name;
  std::string party;
  Gender gender = Gender::male;
  EthnicityGroup ethnicity_group = EthnicityGroup::white;
};

// Registry rows plus a handle index. Rows keep file order.
class Registry {
 public:
  Registry() = default;
  explicit Registry(std::vector<MPRecord> records);

  const std::vector<MPRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  const MPRecord& operator[](std::size_t i) const { return records_[i]; }
  std::optional<std::size_t> find(std::string_view handle) const;

 private:
  std::vector<MPRecord> records_;
  std::unordered_map<std::string, std::size_t> index_;
};

// CSV with header handle,display_name,party,gender,ethnicity_group.
std::vector<MPRecord> load_registry(const std::filesystem::path& path);
std::vector<MPRecord> load_registry(std::istream& in);

struct LinkOutcome {
  std::optional<std::size_t> recipient;  // registry index of the replied-to MP
  bool mp_authored = false;
  bool mp_retweet = false;
  bool discarded() const { return !recipient && !mp_authored; }
};

// Stateless per-tweet linking. A reply is attributed to the MP named in
// in_reply_to_handle; retweets are never replies and MPs replying in their
// own threads are not counted as replies to themselves.
LinkOutcome link_tweet(const Tweet& tweet, const Registry& registry);

struct LinkCounters {
  std::uint64_t replies = 0;
  std::uint64_t mp_authored = 0;
  std::uint64_t mp_retweets = 0;
  std::uint64_t discarded = 0;
  std::uint64_t duplicates = 0;

  LinkCounters& operator+=(const LinkCounters& o);
};

struct LinkedCorpus {
  std::map<std::string, std::vector<Tweet>> replies_by_mp;  // keyed by handle
  std::vector<Tweet> mp_authored;
  LinkCounters counters;
};

LinkedCorpus link_replies(const std::vector<Tweet>& tweets,
                          const Registry& registry);

// Remembers 64-bit hashes of ids seen so far; a repeated id is reported as a
// duplicate. Keeps memory at a few dozen bytes per tweet.
class SeenIds {
 public:
  bool insert(std::string_view id);  // false if already seen

 private:
  std::unordered_set<std::uint64_t> hashes_;
};

struct DateWindow {
  Date start;
  Date end;  // inclusive
  std::size_t days() const;
  bool contains(Date d) const { return d >= start && d <= end; }
};

struct DailySeries {
  std::string handle;
  Date start_date;
  std::vector<std::int64_t> abuse_counts;
  std::vector<std::int64_t> reply_counts;

  std::size_t days() const { return reply_counts.size(); }
};

// Streaming accumulator behind build_daily_series. Partial builders over
// shards merge by summing counts.
class DailySeriesBuilder {
 public:
  DailySeriesBuilder(const Registry& registry, DateWindow window);

  // Returns false (and counts a drop) when the timestamp is outside the window.
  bool add(std::size_t mp_index, Timestamp created_at, bool abusive_at_recipient);
  void merge(const DailySeriesBuilder& other);

  std::vector<DailySeries> build() const;  // registry order
  std::uint64_t dropped() const { return dropped_; }
  const DateWindow& window() const { return window_; }

 private:
  const Registry* registry_;
  DateWindow window_;
  std::vector<std::vector<std::int64_t>> abuse_;
  std::vector<std::vector<std::int64_t>> replies_;
  std::uint64_t dropped_ = 0;
};

// `abusive_at_recipient` holds the verdict for every reply id (recipient or
// untargeted abuse). Throws InputError when a reply has no verdict or the
// window is empty. Series are returned for every registry MP.
std::vector<DailySeries> build_daily_series(
    const std::map<std::string, std::vector<Tweet>>& replies_by_mp,
    const std::unordered_map<std::string, bool>& abusive_at_recipient,
    const Registry& registry, DateWindow window,
    std::uint64_t* dropped = nullptr);

}  // namespace replywatch

#endif  // REPLYWATCH_CORPUS_HPP
