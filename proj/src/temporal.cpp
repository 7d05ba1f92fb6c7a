#include "replywatch/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace replywatch {
namespace {

// Relative slack used for the scaled (non-integer) corrected channel.
constexpr double kScaledTolerance = 1e-9;

double interpolate(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

bool overlaps(const FocusResult& w, std::size_t first, std::size_t last) {
  return w.window_start <= last && w.window_end >= first;
}

std::vector<std::string> active_in(std::span<const MPWindow> windows, std::size_t first,
                                   std::size_t last) {
  std::vector<std::string> out;
  for (const MPWindow& w : windows) {
    if (w.window && overlaps(*w.window, first, last)) out.push_back(w.handle);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double tolerance_for(Channel c) {
  return c == Channel::corrected_replies ? kScaledTolerance : 0.0;
}

}  // namespace

std::string_view to_string(Channel c) {
  switch (c) {
    case Channel::abuse:
      return "abuse";
    case Channel::all_replies:
      return "all_replies";
    case Channel::corrected_replies:
      return "corrected_replies";
  }
  return "abuse";
}

std::optional<Channel> parse_channel(std::string_view s) {
  for (const Channel c : {Channel::abuse, Channel::all_replies, Channel::corrected_replies}) {
    if (s == to_string(c)) return c;
  }
  return std::nullopt;
}

FocusResult focus(std::span<const double> values, double relative_tolerance) {
  const std::size_t days = values.size();
  if (days == 0) throw InputError("focus: empty series");
  double total = 0.0;
  for (const double v : values) {
    if (v < 0.0 || !std::isfinite(v)) throw InputError("focus: negative or non-finite volume");
    total += v;
  }
  if (total == 0.0) throw FocusUndefined("focus: series has no volume");

  const double d = static_cast<double>(days);
  const double tol = relative_tolerance * d * total;

  // Excess prefix sums: a run [i, j) qualifies iff prefix[j] - prefix[i] > tol,
  // i.e. D * sum > total * length.
  std::vector<double> prefix(days + 1, 0.0);
  for (std::size_t k = 0; k < days; ++k) prefix[k + 1] = prefix[k] + (d * values[k] - total);

  std::vector<double> left_min(days + 1);
  std::vector<double> right_max(days + 1);
  left_min[0] = prefix[0];
  for (std::size_t k = 1; k <= days; ++k) left_min[k] = std::min(left_min[k - 1], prefix[k]);
  right_max[days] = prefix[days];
  for (std::size_t k = days; k-- > 0;) right_max[k] = std::max(right_max[k + 1], prefix[k]);

  std::size_t longest = 0;
  for (std::size_t i = 0, j = 0; i <= days && j <= days;) {
    if (right_max[j] - left_min[i] > tol) {
      if (j > i) longest = std::max(longest, j - i);
      ++j;
    } else {
      ++i;
    }
  }

  FocusResult out;
  out.threshold = total / d;
  if (longest == 0) {
    out.window_start = 0;
    out.window_end = days - 1;
    out.focus = 1.0;
    out.normalized_focus = 1.0;
    return out;
  }
  for (std::size_t i = 0; i + longest <= days; ++i) {
    if (prefix[i + longest] - prefix[i] > tol) {
      out.window_start = i;
      break;
    }
  }
  out.window_end = out.window_start + longest - 1;
  double inside = 0.0;
  for (std::size_t k = out.window_start; k <= out.window_end; ++k) inside += values[k];
  out.focus = inside / total;
  out.normalized_focus = out.focus * d / static_cast<double>(longest);
  return out;
}

double corpus_abuse_proportion(std::span<const DailySeries> series) {
  std::int64_t abuse = 0;
  std::int64_t replies = 0;
  for (const DailySeries& s : series) {
    abuse += std::accumulate(s.abuse_counts.begin(), s.abuse_counts.end(), std::int64_t{0});
    replies += std::accumulate(s.reply_counts.begin(), s.reply_counts.end(), std::int64_t{0});
  }
  return replies == 0 ? 0.0 : static_cast<double>(abuse) / static_cast<double>(replies);
}

std::vector<double> channel_values(const DailySeries& s, Channel channel,
                                   double abuse_proportion) {
  std::vector<double> out(s.days());
  for (std::size_t d = 0; d < s.days(); ++d) {
    switch (channel) {
      case Channel::abuse:
        out[d] = static_cast<double>(s.abuse_counts[d]);
        break;
      case Channel::all_replies:
        out[d] = static_cast<double>(s.reply_counts[d]);
        break;
      case Channel::corrected_replies:
        out[d] = static_cast<double>(s.reply_counts[d]) * abuse_proportion;
        break;
    }
  }
  return out;
}

FocusResult focus(const DailySeries& s, Channel channel, double abuse_proportion) {
  return focus(channel_values(s, channel, abuse_proportion), tolerance_for(channel));
}

double churn(std::span<const std::string> before, std::span<const std::string> after) {
  std::vector<std::string> uni;
  std::vector<std::string> diff;
  std::set_union(before.begin(), before.end(), after.begin(), after.end(),
                 std::back_inserter(uni));
  if (uni.empty()) return 0.0;
  std::set_symmetric_difference(before.begin(), before.end(), after.begin(), after.end(),
                                std::back_inserter(diff));
  return static_cast<double>(diff.size()) / static_cast<double>(uni.size());
}

std::vector<std::pair<std::size_t, std::size_t>> slices(std::size_t days, std::size_t slice_days,
                                                        SliceMode mode) {
  if (slice_days == 0) throw InputError("slice length must be at least one day");
  if (slice_days > days) {
    throw InputError("slice length " + std::to_string(slice_days) + " exceeds period of " +
                     std::to_string(days) + " days");
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (mode == SliceMode::tiled) {
    for (std::size_t first = 0; first < days; first += slice_days) {
      out.emplace_back(first, std::min(first + slice_days, days) - 1);
    }
  } else {
    for (std::size_t first = 0; first + slice_days <= days; ++first) {
      out.emplace_back(first, first + slice_days - 1);
    }
  }
  return out;
}

std::vector<MPWindow> focus_windows(std::span<const DailySeries> series, Channel channel,
                                    double abuse_proportion) {
  std::vector<MPWindow> out;
  out.reserve(series.size());
  for (const DailySeries& s : series) {
    MPWindow w{s.handle, std::nullopt};
    try {
      w.window = focus(s, channel, abuse_proportion);
    } catch (const FocusUndefined&) {
    }
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<ChurnPoint> churn_series(std::span<const MPWindow> windows, std::size_t days,
                                     std::size_t slice_days, SliceMode mode) {
  const auto ranges = slices(days, slice_days, mode);
  // Tiled: each tile against the next. Sliding: the window at t against the
  // window at t + slice_days.
  const std::size_t step = mode == SliceMode::tiled ? 1 : slice_days;
  std::vector<ChurnPoint> out;
  for (std::size_t k = 0; k + step < ranges.size(); ++k) {
    ChurnPoint p;
    p.slice_index = k;
    p.active_before = active_in(windows, ranges[k].first, ranges[k].second);
    p.active_after = active_in(windows, ranges[k + step].first, ranges[k + step].second);
    p.churn = churn(p.active_before, p.active_after);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<ChurnPoint> churn_series(std::span<const DailySeries> series, std::size_t slice_days,
                                     Channel channel, SliceMode mode) {
  if (series.empty()) return {};
  const double p = corpus_abuse_proportion(series);
  const auto windows = focus_windows(series, channel, p);
  return churn_series(windows, series.front().days(), slice_days, mode);
}

double gini_slice(std::span<const double> values) {
  if (values.empty()) throw InputError("gini: no values");
  std::vector<double> sorted(values.begin(), values.end());
  double total = 0.0;
  for (const double v : sorted) {
    if (v < 0.0 || !std::isfinite(v)) throw InputError("gini: negative or non-finite value");
    total += v;
  }
  if (total == 0.0) return 0.0;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double weighted = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    weighted += (2.0 * static_cast<double>(i + 1) - n - 1.0) * sorted[i];
  }
  return weighted / (n * total);
}

std::vector<GiniPoint> gini_series(std::span<const DailySeries> series, std::size_t slice_days,
                                   Channel channel, SliceMode mode) {
  if (series.empty()) return {};
  const double p = corpus_abuse_proportion(series);
  std::vector<std::vector<double>> population;
  for (const DailySeries& s : series) {
    auto v = channel_values(s, channel, p);
    if (std::any_of(v.begin(), v.end(), [](double x) { return x > 0.0; })) {
      population.push_back(std::move(v));
    }
  }
  const auto ranges = slices(series.front().days(), slice_days, mode);
  std::vector<GiniPoint> out;
  if (population.empty()) return out;
  std::vector<double> sums(population.size());
  for (std::size_t k = 0; k < ranges.size(); ++k) {
    for (std::size_t i = 0; i < population.size(); ++i) {
      double sum = 0.0;
      for (std::size_t d = ranges[k].first; d <= ranges[k].second; ++d) sum += population[i][d];
      sums[i] = sum;
    }
    out.push_back({k, gini_slice(sums)});
  }
  return out;
}

FiveNumber five_number_summary(std::vector<double> values) {
  FiveNumber out;
  out.count = values.size();
  if (values.empty()) return out;
  std::sort(values.begin(), values.end());
  out.min = values.front();
  out.q1 = interpolate(values, 0.25);
  out.median = interpolate(values, 0.5);
  out.q3 = interpolate(values, 0.75);
  out.max = values.back();
  return out;
}

std::vector<BoxRow> burstiness_report(std::span<const DailySeries> series, std::size_t min_slice,
                                      std::size_t max_slice, SliceMode mode) {
  const auto with_abuse = std::count_if(series.begin(), series.end(), [](const DailySeries& s) {
    return std::any_of(s.abuse_counts.begin(), s.abuse_counts.end(),
                       [](std::int64_t v) { return v > 0; });
  });
  if (with_abuse < 2) throw InputError("burstiness report needs at least two MPs with abuse");
  if (min_slice == 0 || min_slice > max_slice) throw InputError("invalid slice range");

  const std::size_t days = series.front().days();
  const double p = corpus_abuse_proportion(series);
  std::vector<BoxRow> out;
  for (const Channel channel : {Channel::abuse, Channel::corrected_replies}) {
    const auto windows = focus_windows(series, channel, p);
    std::vector<BoxRow> gini_rows;
    for (std::size_t s = min_slice; s <= max_slice && s <= days; ++s) {
      std::vector<double> churns;
      for (const auto& c : churn_series(windows, days, s, mode)) churns.push_back(c.churn);
      if (!churns.empty()) {
        out.push_back({channel, "churn", s, five_number_summary(std::move(churns))});
      }
      std::vector<double> ginis;
      for (const auto& g : gini_series(series, s, channel, mode)) ginis.push_back(g.gini);
      if (!ginis.empty()) {
        gini_rows.push_back({channel, "gini", s, five_number_summary(std::move(ginis))});
      }
    }
    out.insert(out.end(), gini_rows.begin(), gini_rows.end());
  }
  return out;
}

}  // namespace replywatch
