#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "replywatch/temporal.hpp"
#include "synth.hpp"

using namespace replywatch;

namespace {

FocusResult focus_of(const std::vector<double>& v) { return focus(std::span<const double>(v)); }

std::vector<double> as_double(const std::vector<std::int64_t>& v) {
  return std::vector<double>(v.begin(), v.end());
}

DailySeries series(std::string handle, std::vector<std::int64_t> abuse,
                   std::vector<std::int64_t> replies = {}) {
  DailySeries s;
  s.handle = std::move(handle);
  s.start_date = parse_date("2019-01-01");
  if (replies.empty()) {
    replies = abuse;
    for (auto& r : replies) r *= 10;
  }
  s.abuse_counts = std::move(abuse);
  s.reply_counts = std::move(replies);
  return s;
}

}  // namespace

TEST_SUITE("temporal") {
  TEST_CASE("focus fixtures") {
    const auto flat = focus_of({2, 2, 2, 2});
    CHECK(flat.window_start == 0);
    CHECK(flat.window_end == 3);
    CHECK(flat.focus == 1.0);
    CHECK(flat.normalized_focus == 1.0);

    const auto two = focus_of({3, 0, 0, 0, 0, 9});
    CHECK(two.window_start == 2);
    CHECK(two.window_end == 5);
    CHECK(two.focus == 0.75);
    CHECK(two.normalized_focus == 1.125);

    const auto mid = focus_of({0, 0, 6, 6, 0, 0});
    CHECK(mid.window_start == 0);
    CHECK(mid.window_end == 4);
    CHECK(mid.focus == 1.0);
    CHECK(mid.normalized_focus == 1.2);

    CHECK_THROWS_AS(focus_of({0, 0, 0}), FocusUndefined);
    CHECK_THROWS_AS(focus_of({}), InputError);
    CHECK_THROWS_AS(focus_of({1, -1}), InputError);
  }

  TEST_CASE("focus agrees with window enumeration") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 1000; ++round) {
      const std::size_t d = synth::uniform(rng, 1, 60);
      const bool sparse = round % 2 == 0;
      std::vector<std::int64_t> v(d);
      for (auto& x : v) {
        x = sparse ? (synth::unit(rng) < 0.15 ? std::int64_t(synth::uniform(rng, 1, 30)) : 0)
                   : std::int64_t(synth::uniform(rng, 0, 9));
      }
      const auto want = oracle::focus(v);
      if (!want) {
        CHECK_THROWS_AS(focus_of(as_double(v)), FocusUndefined);
        continue;
      }
      const auto got = focus_of(as_double(v));
      CHECK(got.window_start == want->start);
      CHECK(got.window_end == want->end);
      CHECK(got.focus == doctest::Approx(want->focus).epsilon(1e-12));
      CHECK(got.normalized_focus == doctest::Approx(want->normalized).epsilon(1e-12));
      CHECK(got.focus > 0.0);
      CHECK(got.focus <= 1.0);
      CHECK(got.normalized_focus >= 1.0);
    }
  }

  TEST_CASE("focus is scale invariant") {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 200; ++round) {
      std::vector<double> v(synth::uniform(rng, 2, 40));
      for (auto& x : v) x = double(synth::uniform(rng, 0, 5));
      if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0; })) continue;
      const auto base = focus_of(v);
      for (const double k : {0.0123, 3.0, 1e6}) {
        std::vector<double> w(v);
        for (auto& x : w) x *= k;
        const auto scaled = focus(std::span<const double>(w), 1e-9);
        CHECK(scaled.window_start == base.window_start);
        CHECK(scaled.window_end == base.window_end);
        CHECK(scaled.focus == doctest::Approx(base.focus).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("corrected channel follows all replies") {
    const auto s = series("a", {0, 1, 0, 0}, {5, 3, 90, 7});
    const double p = 0.0371;
    const auto corrected = focus(s, Channel::corrected_replies, p);
    const auto all = focus(s, Channel::all_replies, p);
    CHECK(corrected.window_start == all.window_start);
    CHECK(corrected.window_end == all.window_end);
    CHECK(corrected.normalized_focus == doctest::Approx(all.normalized_focus));
  }

  TEST_CASE("churn") {
    const std::vector<std::string> ab{"A", "B"}, bc{"B", "C"}, none;
    CHECK(churn(ab, bc) == doctest::Approx(2.0 / 3.0));
    CHECK(churn(bc, ab) == churn(ab, bc));
    CHECK(churn(ab, ab) == 0.0);
    CHECK(churn(ab, none) == 1.0);
    CHECK(churn(none, none) == 0.0);

    std::mt19937_64 rng(2);
    for (int round = 0; round < 200; ++round) {
      std::vector<std::string> x, y;
      for (int i = 0; i < 12; ++i) {
        if (synth::unit(rng) < 0.5) x.push_back("mp" + std::to_string(10 + i));
        if (synth::unit(rng) < 0.5) y.push_back("mp" + std::to_string(10 + i));
      }
      const double c = churn(x, y);
      CHECK(c >= 0.0);
      CHECK(c <= 1.0);
      CHECK(c == churn(y, x));
    }
  }

  TEST_CASE("slices") {
    const auto tiled = slices(10, 3, SliceMode::tiled);
    REQUIRE(tiled.size() == 4);
    CHECK(tiled.back() == std::pair<std::size_t, std::size_t>{9, 9});
    CHECK(slices(10, 3, SliceMode::sliding).size() == 8);
    CHECK_THROWS_AS(slices(10, 11, SliceMode::tiled), InputError);
    CHECK_THROWS_AS(slices(10, 0, SliceMode::tiled), InputError);
  }

  TEST_CASE("churn series against oracle windows") {
    std::mt19937_64 rng(21);
    for (int round = 0; round < 50; ++round) {
      const std::size_t days = synth::uniform(rng, 10, 40);
      std::vector<DailySeries> s;
      std::vector<std::optional<oracle::Focus>> want;
      for (int i = 0; i < 8; ++i) {
        std::vector<std::int64_t> v(days, 0);
        for (auto& x : v) x = synth::unit(rng) < 0.2 ? std::int64_t(synth::uniform(rng, 1, 20)) : 0;
        want.push_back(oracle::focus(v));
        s.push_back(series("mp" + std::to_string(i), v));
      }
      for (const std::size_t k : {std::size_t{1}, std::size_t{3}, std::size_t{7}}) {
        for (const SliceMode mode : {SliceMode::tiled, SliceMode::sliding}) {
          const auto pts = churn_series(s, k, Channel::abuse, mode);
          const std::size_t step = mode == SliceMode::tiled ? k : 1;
          for (const auto& p : pts) {
            const std::size_t b0 = p.slice_index * step;
            const std::size_t a0 = b0 + k;
            auto active = [&](std::size_t first) {
              std::vector<std::string> out;
              const std::size_t last = std::min(first + k, days) - 1;
              for (std::size_t i = 0; i < want.size(); ++i) {
                if (want[i] && want[i]->start <= last && want[i]->end >= first) out.push_back(s[i].handle);
              }
              return out;
            };
            CHECK(p.active_before == active(b0));
            CHECK(p.active_after == active(a0));
          }
          const std::size_t expected = mode == SliceMode::tiled ? (days + k - 1) / k - 1 : days + 1 - 2 * k;
          CHECK(pts.size() == (mode == SliceMode::sliding && 2 * k > days ? 0 : expected));
        }
      }
    }
    std::vector<DailySeries> s{series("a", {1, 2, 3})};
    CHECK_THROWS_AS(churn_series(s, 4), InputError);
  }

  TEST_CASE("uniform corpus has no churn") {
    std::vector<DailySeries> uniform;
    for (int i = 0; i < 5; ++i) uniform.push_back(series("u" + std::to_string(i), std::vector<std::int64_t>(30, 3)));
    for (std::size_t k = 1; k <= 10; ++k) {
      for (const auto& p : churn_series(uniform, k)) CHECK(p.churn == 0.0);
      for (const auto& p : churn_series(uniform, k, Channel::abuse, SliceMode::sliding)) CHECK(p.churn == 0.0);
    }
  }

  TEST_CASE("gini") {
    CHECK(gini_slice(std::vector<double>{5, 5, 5}) == 0.0);
    CHECK(gini_slice(std::vector<double>{0, 0, 10}) == doctest::Approx(2.0 / 3.0));
    CHECK(gini_slice(std::vector<double>{1, 2, 3}) == doctest::Approx(2.0 / 9.0));
    CHECK(gini_slice(std::vector<double>{0, 0}) == 0.0);
    CHECK_THROWS_AS(gini_slice(std::vector<double>{}), InputError);
    CHECK_THROWS_AS(gini_slice(std::vector<double>{1, -2}), InputError);

    std::mt19937_64 rng(9);
    for (int round = 0; round < 500; ++round) {
      std::vector<double> x(synth::uniform(rng, 1, 30));
      for (auto& v : x) v = double(synth::uniform(rng, 0, 50));
      const double g = gini_slice(x);
      CHECK(std::fabs(g - oracle::gini(x)) <= 1e-12);
      CHECK(g >= 0.0);
      CHECK(g <= 1.0);
      std::vector<double> y(x);
      for (auto& v : y) v *= 7.25;
      CHECK(std::fabs(gini_slice(y) - g) <= 1e-12);
      std::shuffle(y.begin(), y.end(), rng);
      CHECK(std::fabs(gini_slice(y) - g) <= 1e-12);
    }
  }

  TEST_CASE("gini series separates bursty from uniform populations") {
    std::mt19937_64 rng(3);
    std::vector<DailySeries> bursty, flat;
    for (int i = 0; i < 30; ++i) {
      std::vector<std::int64_t> b(60, 0), f(60, 2);
      const auto day = synth::uniform(rng, 0, 59);
      b[day] = 120;
      bursty.push_back(series("b" + std::to_string(i), b));
      flat.push_back(series("f" + std::to_string(i), f));
    }
    for (std::size_t k : {1, 5, 10}) {
      for (const auto& g : gini_series(flat, k)) CHECK(g.gini == 0.0);
      const auto gs = gini_series(bursty, k);
      const auto ranges = slices(60, k, SliceMode::tiled);
      REQUIRE(gs.size() == ranges.size());
      double high = 0;
      for (std::size_t r = 0; r < gs.size(); ++r) {
        std::vector<double> sums;
        for (const auto& s : bursty) {
          double v = 0;
          for (std::size_t d = ranges[r].first; d <= ranges[r].second; ++d) v += double(s.abuse_counts[d]);
          sums.push_back(v);
        }
        CHECK(std::fabs(gs[r].gini - oracle::gini(sums)) <= 1e-12);
        high = std::max(high, gs[r].gini);
      }
      CHECK(high > 0.5);
    }
  }

  TEST_CASE("gini population excludes silent MPs") {
    const std::vector<DailySeries> s{series("a", {1, 1}), series("b", {3, 3}), series("z", {0, 0})};
    const auto g = gini_series(s, 1);
    REQUIRE(g.size() == 2);
    CHECK(g[0].gini == doctest::Approx(oracle::gini({1, 3})));
  }

  TEST_CASE("five number summary") {
    const auto s = five_number_summary({1, 0});
    CHECK(s.count == 2);
    CHECK(s.median == 0.5);
    CHECK(s.q1 == 0.25);
    const auto t = five_number_summary({7, 1, 3, 5, 9});
    CHECK(t.min == 1);
    CHECK(t.q1 == 3);
    CHECK(t.median == 5);
    CHECK(t.q3 == 7);
    CHECK(t.max == 9);
    CHECK(five_number_summary({}).count == 0);
  }

  TEST_CASE("burstiness report") {
    const std::vector<DailySeries> s{series("a", {9, 9, 0, 0, 0, 0}), series("b", {0, 0, 0, 0, 9, 9}),
                                     series("c", {1, 1, 1, 1, 1, 1})};
    const auto rows = burstiness_report(s, 1, 10);
    REQUIRE_FALSE(rows.empty());
    CHECK(rows.front().channel == Channel::abuse);
    CHECK(rows.front().metric == "churn");
    CHECK(rows.back().channel == Channel::corrected_replies);
    CHECK(rows.back().metric == "gini");
    for (const auto& r : rows) CHECK(r.slice_days <= 6);

    const std::vector<DailySeries> lonely{series("a", {1, 0}), series("b", {0, 0}, {4, 4})};
    CHECK_THROWS_AS(burstiness_report(lonely), InputError);
  }
}
