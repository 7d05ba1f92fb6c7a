#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <sstream>

#include "doctest.h"
#include "replywatch/corpus.hpp"
#include "replywatch/errors.hpp"
#include "synth.hpp"

using namespace replywatch;

namespace {

Registry registry_of(std::string_view csv_text) {
  std::istringstream in{std::string(csv_text)};
  return Registry(load_registry(in));
}

const char* kRegistry =
    "handle,display_name,party,gender,ethnicity_group\n"
    "mp1,One,Labour Party,female,white\n"
    "mp2,Two,Conservative,male,minority\n";

Tweet reply(std::string id, std::string to, std::string when) {
  Tweet t;
  t.id = std::move(id);
  t.author_handle = "someone";
  t.created_at = parse_rfc3339(when);
  t.text = "x";
  t.in_reply_to_handle = std::move(to);
  return t;
}

}  // namespace

TEST_SUITE("corpus") {
  TEST_CASE("minimal tweet record") {
    const Tweet t = parse_tweet_line(
        R"({"id":"1","author_handle":"A","created_at":"2019-03-01T10:00:00Z","text":"hi"})");
    CHECK(t.id == "1");
    CHECK(t.author_handle == "a");
    CHECK(t.text == "hi");
    CHECK_FALSE(t.in_reply_to_handle);
    CHECK_FALSE(t.in_reply_to_id);
    CHECK_FALSE(t.is_retweet);
    CHECK(format_timestamp(t.created_at) == "2019-03-01T10:00:00Z");
  }

  TEST_CASE("reply handle is lowercased") {
    const Tweet t = parse_tweet_line(
        R"({"id":"1","author_handle":"A","created_at":"2019-03-01T10:00:00Z","text":"hi",)"
        R"("in_reply_to_handle":"MP1","in_reply_to_id":"99","is_retweet":false})");
    REQUIRE(t.in_reply_to_handle);
    CHECK(*t.in_reply_to_handle == "mp1");
    CHECK(*t.in_reply_to_id == "99");
  }

  TEST_CASE("numeric ids and null optionals") {
    const Tweet t = parse_tweet_line(
        R"({"id":12345,"author_handle":"@A","created_at":"2019-03-01T10:00:00Z","text":"hi",)"
        R"("in_reply_to_handle":null,"in_reply_to_id":777})");
    CHECK(t.id == "12345");
    CHECK(t.author_handle == "a");
    CHECK_FALSE(t.in_reply_to_handle);
    CHECK(*t.in_reply_to_id == "777");
  }

  TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_tweet_line(R"({"id":"1","author_handle":"a","created_at":"not-a-date","text":"x"})"),
                    TimestampError);
    try {
      parse_tweet_line(R"({"id":"1","author_handle":"a",)");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.offset() > 0);
    }
    try {
      parse_tweet_line(R"({"id":"1","created_at":"2019-03-01T10:00:00Z","text":"x"})");
      FAIL("expected FieldError");
    } catch (const FieldError& e) {
      CHECK(e.field() == "author_handle");
    }
    CHECK_THROWS_AS(parse_tweet_line(R"({"id":"","author_handle":"a","created_at":"2019-03-01T10:00:00Z","text":"x"})"),
                    FieldError);
  }

  TEST_CASE("registry rows") {
    std::istringstream in(
        "handle,display_name,party,gender,ethnicity_group\n"
        "dlammy,David Lammy,Labour Party,male,minority\n"
        "XY,\"Name, With Comma\",Green,FEMALE,White\n");
    const auto rows = load_registry(in);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].handle == "dlammy");
    CHECK(rows[0].gender == Gender::male);
    CHECK(rows[0].ethnicity_group == EthnicityGroup::minority);
    CHECK(rows[1].handle == "xy");
    CHECK(rows[1].display_name == "Name, With Comma");
    CHECK(rows[1].gender == Gender::female);
  }

  TEST_CASE("registry errors") {
    std::istringstream dup(
        "handle,display_name,party,gender,ethnicity_group\nx,A,P,male,white\nx,B,P,male,white\n");
    CHECK_THROWS_WITH_AS(load_registry(dup), doctest::Contains("duplicate"), InputError);
    std::istringstream gender(
        "handle,display_name,party,gender,ethnicity_group\nx,A,P,unknown,white\n");
    CHECK_THROWS_AS(load_registry(gender), InputError);
    std::istringstream missing("handle,display_name,party,gender\nx,A,P,male\n");
    CHECK_THROWS_WITH_AS(load_registry(missing), doctest::Contains("ethnicity_group"),
                         InputError);
  }

  TEST_CASE("linking") {
    const Registry reg = registry_of(kRegistry);
    Tweet t = reply("1", "mp1", "2019-03-01T10:00:00Z");
    CHECK(link_tweet(t, reg).recipient == 0u);

    t.in_reply_to_handle = "nobody";
    CHECK(link_tweet(t, reg).discarded());

    Tweet rt = reply("2", "mp2", "2019-03-01T10:00:00Z");
    rt.author_handle = "mp1";
    rt.is_retweet = true;
    const LinkOutcome o = link_tweet(rt, reg);
    CHECK(o.mp_authored);
    CHECK(o.mp_retweet);
    CHECK_FALSE(o.recipient);

    Tweet self = reply("3", "mp1", "2019-03-01T10:00:00Z");
    self.author_handle = "mp1";
    CHECK_FALSE(link_tweet(self, reg).recipient);
  }

  TEST_CASE("link_replies counters and order independence") {
    const Registry reg = registry_of(kRegistry);
    std::vector<Tweet> tweets;
    for (int i = 0; i < 40; ++i) {
      tweets.push_back(reply(std::to_string(i), i % 3 == 0 ? "mp1" : (i % 3 == 1 ? "mp2" : "zz"),
                             "2019-03-01T10:00:00Z"));
    }
    tweets.push_back(tweets[0]);  // duplicate id
    const LinkedCorpus a = link_replies(tweets, reg);
    CHECK(a.counters.duplicates == 1);
    CHECK(a.counters.discarded == 13);
    CHECK(a.counters.replies == 27);

    std::mt19937_64 rng(3);
    std::shuffle(tweets.begin(), tweets.end(), rng);
    const LinkedCorpus b = link_replies(tweets, reg);
    for (const auto& [mp, list] : a.replies_by_mp) {
      std::vector<std::string> x, y;
      for (const auto& t : list) x.push_back(t.id);
      for (const auto& t : b.replies_by_mp.at(mp)) y.push_back(t.id);
      std::sort(x.begin(), x.end());
      std::sort(y.begin(), y.end());
      CHECK(x == y);
    }
  }

  TEST_CASE("daily series examples") {
    const Registry reg = registry_of(kRegistry);
    const DateWindow w{parse_date("2019-03-01"), parse_date("2019-03-02")};
    std::map<std::string, std::vector<Tweet>> replies;
    replies["mp1"] = {reply("a", "mp1", "2019-03-01T01:00:00Z"),
                      reply("b", "mp1", "2019-03-01T12:00:00Z"),
                      reply("c", "mp1", "2019-03-01T23:59:59Z")};
    const std::unordered_map<std::string, bool> verdicts{{"a", true}, {"b", false}, {"c", false}};
    const auto s = build_daily_series(replies, verdicts, reg, w);
    REQUIRE(s.size() == 2);
    CHECK(s[0].abuse_counts == std::vector<std::int64_t>{1, 0});
    CHECK(s[0].reply_counts == std::vector<std::int64_t>{3, 0});
    CHECK(s[1].reply_counts == std::vector<std::int64_t>{0, 0});

    const DateWindow five{parse_date("2019-03-01"), parse_date("2019-03-05")};
    const auto empty = build_daily_series({}, {}, reg, five);
    CHECK(empty[0].abuse_counts == std::vector<std::int64_t>(5, 0));
    CHECK(empty[0].reply_counts == std::vector<std::int64_t>(5, 0));
  }

  TEST_CASE("out of window replies are dropped and missing verdicts rejected") {
    const Registry reg = registry_of(kRegistry);
    const DateWindow w{parse_date("2019-03-01"), parse_date("2019-03-01")};
    std::map<std::string, std::vector<Tweet>> replies;
    replies["mp2"] = {reply("a", "mp2", "2019-02-28T23:59:59Z"),
                      reply("b", "mp2", "2019-03-01T00:00:00Z"),
                      reply("c", "mp2", "2019-03-02T00:00:00Z")};
    std::uint64_t dropped = 0;
    const auto s = build_daily_series(replies, {{"a", true}, {"b", true}, {"c", true}}, reg, w,
                                      &dropped);
    CHECK(dropped == 2);
    CHECK(s[1].abuse_counts == std::vector<std::int64_t>{1});
    CHECK_THROWS_AS(build_daily_series(replies, {{"a", true}}, reg, w), InputError);
  }

  TEST_CASE("10k uniform replies match a naive day counter") {
    const Registry reg = registry_of(kRegistry);
    const Date start = parse_date("2019-01-01");
    const DateWindow w{start, parse_date("2019-01-31")};
    std::mt19937_64 rng(11);
    std::map<std::string, std::vector<Tweet>> replies;
    std::unordered_map<std::string, bool> verdicts;
    // oracle: day index straight from seconds since the window start
    std::map<std::pair<std::string, std::int64_t>, std::array<std::int64_t, 2>> naive;
    std::uint64_t naive_dropped = 0;
    const std::int64_t origin = std::chrono::sys_seconds(start).time_since_epoch().count();
    for (int i = 0; i < 10000; ++i) {
      const std::string mp = i % 2 ? "mp1" : "mp2";
      // a few replies fall a day either side of the window
      const std::int64_t secs = static_cast<std::int64_t>(synth::uniform(rng, 0, 33 * 86400 - 1)) - 86400;
      Tweet t;
      t.id = std::to_string(i);
      t.created_at = Timestamp(std::chrono::seconds(origin + secs));
      const bool abusive = synth::unit(rng) < 0.1;
      verdicts[t.id] = abusive;
      replies[mp].push_back(t);
      const std::int64_t day = secs >= 0 ? secs / 86400 : -1;
      if (day < 0 || day >= 31) {
        ++naive_dropped;
        continue;
      }
      auto& cell = naive[{mp, day}];
      ++cell[0];
      cell[1] += abusive;
    }
    std::uint64_t dropped = 0;
    const auto series = build_daily_series(replies, verdicts, reg, w, &dropped);
    CHECK(dropped == naive_dropped);
    std::int64_t total = 0;
    for (const DailySeries& s : series) {
      for (std::size_t d = 0; d < s.days(); ++d) {
        const auto it = naive.find({s.handle, static_cast<std::int64_t>(d)});
        const std::array<std::int64_t, 2> want = it == naive.end() ? std::array<std::int64_t, 2>{0, 0} : it->second;
        CHECK(s.reply_counts[d] == want[0]);
        CHECK(s.abuse_counts[d] == want[1]);
        CHECK(s.abuse_counts[d] <= s.reply_counts[d]);
        total += s.reply_counts[d];
      }
    }
    CHECK(total == 10000 - static_cast<std::int64_t>(naive_dropped));
  }

  TEST_CASE("builder shards merge to the same series") {
    const Registry reg = registry_of(kRegistry);
    const DateWindow w{parse_date("2019-03-01"), parse_date("2019-03-10")};
    DailySeriesBuilder whole(reg, w), left(reg, w), right(reg, w);
    std::mt19937_64 rng(5);
    const auto t0 = std::chrono::sys_seconds(w.start);
    for (int i = 0; i < 500; ++i) {
      const auto ts = t0 + std::chrono::seconds(synth::uniform(rng, 0, 12 * 86400));
      const std::size_t mp = i % 2;
      const bool abusive = i % 7 == 0;
      whole.add(mp, ts, abusive);
      (i < 250 ? left : right).add(mp, ts, abusive);
    }
    left.merge(right);
    CHECK(left.dropped() == whole.dropped());
    const auto a = left.build();
    const auto b = whole.build();
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].reply_counts == b[i].reply_counts);
      CHECK(a[i].abuse_counts == b[i].abuse_counts);
    }
  }

  TEST_CASE("seen ids") {
    SeenIds s;
    CHECK(s.insert("1"));
    CHECK(s.insert("2"));
    CHECK_FALSE(s.insert("1"));
  }
}
