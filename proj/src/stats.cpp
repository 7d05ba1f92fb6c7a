#include "replywatch/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "replywatch/errors.hpp"

namespace replywatch {
namespace {

double log_factorial(std::int64_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

// Midranks doubled so they stay integral: a tie block occupying 1-based
// positions s..e gets s + e.
std::vector<std::int64_t> doubled_midranks(std::span<const double> pooled,
                                           std::int64_t* tie_term) {
  std::vector<std::size_t> order(pooled.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return pooled[x] < pooled[y]; });
  std::vector<std::int64_t> ranks(pooled.size());
  *tie_term = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    const auto s = static_cast<std::int64_t>(i + 1);
    const auto e = static_cast<std::int64_t>(j + 1);
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = s + e;
    const std::int64_t t = e - s + 1;
    *tie_term += t * t * t - t;
    i = j + 1;
  }
  return ranks;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (const double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

ClassifiedReply make_classified_reply(const Tweet& reply, const Classification& c,
                                      std::vector<std::string> topics) {
  ClassifiedReply r;
  r.recipient = reply.in_reply_to_handle.value_or("");
  r.created_at = reply.created_at;
  r.abusive = c.counts_for_recipient();
  r.types = c.types();
  r.max_components = c.max_components;
  r.topics = std::move(topics);
  return r;
}

std::int64_t MPSummary::count(AbuseType t) const {
  for (std::size_t i = 0; i < kTalliedTypes.size(); ++i) {
    if (kTalliedTypes[i] == t) return type_counts[i];
  }
  return 0;
}

void SummaryAccumulator::add(std::size_t mp_index, bool abusive, AbuseTypes types,
                             int max_components) {
  MPSummary& row = rows_[mp_index];
  ++row.replies_total;
  if (!abusive) return;
  ++row.abusive_total;
  for (std::size_t i = 0; i < kTalliedTypes.size(); ++i) {
    if (types.contains(kTalliedTypes[i])) ++row.type_counts[i];
  }
  if (types.contains(AbuseType::racist) && max_components >= kStrongRacistComponents) {
    ++row.strong_racist_count;
  }
  if (max_components >= kStrongAnyComponents) ++row.strong_any_count;
}

void SummaryAccumulator::merge(const SummaryAccumulator& other) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    MPSummary& r = rows_[i];
    const MPSummary& o = other.rows_[i];
    r.replies_total += o.replies_total;
    r.abusive_total += o.abusive_total;
    for (std::size_t t = 0; t < r.type_counts.size(); ++t) r.type_counts[t] += o.type_counts[t];
    r.strong_racist_count += o.strong_racist_count;
    r.strong_any_count += o.strong_any_count;
  }
}

std::vector<MPSummary> SummaryAccumulator::build(const Registry& registry) const {
  std::vector<MPSummary> out = rows_;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].handle = registry[i].handle;
    out[i].abuse_pct = out[i].replies_total == 0
                           ? 0.0
                           : static_cast<double>(out[i].abusive_total) /
                                 static_cast<double>(out[i].replies_total);
  }
  return out;
}

std::vector<MPSummary> summarize(std::span<const ClassifiedReply> replies,
                                 const Registry& registry) {
  SummaryAccumulator acc(registry.size());
  for (const ClassifiedReply& r : replies) {
    const auto mp = registry.find(r.recipient);
    if (!mp) throw InputError("reply to unknown MP '" + r.recipient + "'");
    acc.add(*mp, r.abusive, r.types, r.max_components);
  }
  return acc.build(registry);
}

std::string_view to_string(TestKind t) {
  return t == TestKind::mann_whitney ? "mann_whitney" : "fisher_exact";
}

GroupComparison mann_whitney(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InputError("mann_whitney: empty sample");
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  const std::size_t total = m + n;

  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::int64_t tie_term = 0;
  const std::vector<std::int64_t> ranks = doubled_midranks(pooled, &tie_term);

  std::int64_t rank_sum2_a = 0;
  for (std::size_t i = 0; i < m; ++i) rank_sum2_a += ranks[i];

  GroupComparison out;
  out.test = TestKind::mann_whitney;
  const double mm = static_cast<double>(m);
  const double nn = static_cast<double>(n);
  out.statistic = static_cast<double>(rank_sum2_a) / 2.0 - mm * (mm + 1.0) / 2.0;

  if (std::min(m, n) <= kExactMannWhitneyMax) {
    // Null distribution of the smaller sample's doubled rank sum: count the
    // subsets of size k with each sum.
    const bool a_small = m <= n;
    const std::size_t k = a_small ? m : n;
    std::int64_t observed = rank_sum2_a;
    if (!a_small) {
      observed = 0;
      for (std::size_t i = m; i < total; ++i) observed += ranks[i];
    }
    const std::int64_t max_sum = static_cast<std::int64_t>(k) * 2 * static_cast<std::int64_t>(total);
    const auto width = static_cast<std::size_t>(max_sum + 1);
    std::vector<std::vector<double>> ways(k + 1, std::vector<double>(width, 0.0));
    ways[0][0] = 1.0;
    for (std::size_t item = 0; item < total; ++item) {
      const auto r = static_cast<std::size_t>(ranks[item]);
      const std::size_t top = std::min(k, item + 1);
      for (std::size_t j = top; j >= 1; --j) {
        const auto& from = ways[j - 1];
        auto& to = ways[j];
        for (std::size_t s = 0; s + r < width; ++s) {
          if (from[s] != 0.0) to[s + r] += from[s];
        }
      }
    }
    const std::int64_t expected2 = static_cast<std::int64_t>(k) * static_cast<std::int64_t>(total + 1);
    const std::int64_t dev = std::llabs(observed - expected2);
    double tail = 0.0;
    double all = 0.0;
    for (std::size_t s = 0; s < width; ++s) {
      const double w = ways[k][s];
      if (w == 0.0) continue;
      all += w;
      if (std::llabs(static_cast<std::int64_t>(s) - expected2) >= dev) tail += w;
    }
    out.p_value = std::min(1.0, tail / all);
    return out;
  }

  const double big_n = static_cast<double>(total);
  const double mu = mm * nn / 2.0;
  const double var = mm * nn / 12.0 *
                     ((big_n + 1.0) - static_cast<double>(tie_term) / (big_n * (big_n - 1.0)));
  if (var <= 0.0) {
    out.p_value = 1.0;
    return out;
  }
  const double z = std::max(0.0, std::fabs(out.statistic - mu) - 0.5) / std::sqrt(var);
  out.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
  return out;
}

GroupComparison fisher_exact(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  if (a < 0 || b < 0 || c < 0 || d < 0) throw InputError("fisher_exact: negative count");
  const std::int64_t n = a + b + c + d;
  if (n == 0) throw InputError("fisher_exact: all-zero table");
  const std::int64_t row1 = a + b;
  const std::int64_t row2 = c + d;
  const std::int64_t col1 = a + c;

  GroupComparison out;
  out.test = TestKind::fisher_exact;
  const double num = static_cast<double>(a) * static_cast<double>(d);
  const double den = static_cast<double>(b) * static_cast<double>(c);
  out.statistic = den == 0.0 ? (num == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                           : std::numeric_limits<double>::infinity())
                             : num / den;

  const double log_norm = log_factorial(row1) + log_factorial(row2) + log_factorial(col1) +
                          log_factorial(n - col1) - log_factorial(n);
  auto log_p = [&](std::int64_t k) {
    return log_norm - log_factorial(k) - log_factorial(row1 - k) - log_factorial(col1 - k) -
           log_factorial(row2 - col1 + k);
  };
  const std::int64_t lo = std::max<std::int64_t>(0, col1 - row2);
  const std::int64_t hi = std::min(row1, col1);
  // Relative slack so tables tied with the observed one in exact arithmetic
  // are not lost to rounding.
  const double cutoff = log_p(a) + std::log1p(1e-7);
  double p = 0.0;
  for (std::int64_t k = lo; k <= hi; ++k) {
    const double lp = log_p(k);
    if (lp <= cutoff) p += std::exp(lp);
  }
  out.p_value = std::min(1.0, p);
  return out;
}

Heatmap make_heatmap(const std::map<std::string, std::map<std::string, std::int64_t>>& counts,
                     std::span<const std::string> months) {
  Heatmap out;
  out.months.assign(months.begin(), months.end());
  for (const auto& [topic, by_month] : counts) {
    HeatmapRow row{topic, std::vector<std::int64_t>(months.size(), 0), 0};
    for (std::size_t i = 0; i < months.size(); ++i) {
      const auto it = by_month.find(months[i]);
      if (it != by_month.end()) row.counts[i] = it->second;
      row.total += row.counts[i];
    }
    if (row.total > 0) out.rows.push_back(std::move(row));
  }
  std::sort(out.rows.begin(), out.rows.end(), [](const HeatmapRow& x, const HeatmapRow& y) {
    if (x.total != y.total) return x.total > y.total;
    return x.topic < y.topic;
  });
  return out;
}

Heatmap topic_heatmap(std::span<const ClassifiedReply> replies,
                      std::span<const std::string> months) {
  const std::set<std::string> wanted(months.begin(), months.end());
  std::map<std::string, std::map<std::string, std::int64_t>> counts;
  for (const ClassifiedReply& r : replies) {
    if (!r.abusive) continue;
    const std::string month = format_month(utc_date(r.created_at));
    if (!wanted.contains(month)) continue;
    for (const std::string& topic : r.topics) ++counts[topic][month];
  }
  return make_heatmap(counts, months);
}

std::vector<MonthTrend> monthly_trend_from_counts(
    std::vector<std::pair<std::string, std::array<std::int64_t, 2>>> months) {
  if (months.size() < 2) throw InputError("monthly trend needs at least two months");
  std::vector<MonthTrend> out;
  for (std::size_t i = 0; i < months.size(); ++i) {
    MonthTrend t;
    t.month = months[i].first;
    t.replies = months[i].second[0];
    t.abusive = months[i].second[1];
    t.abuse_pct = t.replies == 0 ? 0.0
                                 : static_cast<double>(t.abusive) / static_cast<double>(t.replies);
    if (i > 0) {
      const MonthTrend& prev = out.back();
      if (prev.replies + t.replies > 0) {
        t.p_value = fisher_exact(prev.abusive, prev.replies - prev.abusive, t.abusive,
                                 t.replies - t.abusive)
                        .p_value;
        // Rate comparison by cross-multiplication keeps it exact.
        const bool increased = static_cast<double>(t.abusive) * static_cast<double>(prev.replies) >
                               static_cast<double>(prev.abusive) * static_cast<double>(t.replies);
        t.significant_increase = increased && *t.p_value < kTrendAlpha;
      } else {
        t.p_value = 1.0;
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<MonthTrend> monthly_trend(std::span<const DailySeries> series) {
  std::map<std::string, std::array<std::int64_t, 2>> by_month;
  for (const DailySeries& s : series) {
    for (std::size_t d = 0; d < s.days(); ++d) {
      auto& cell = by_month[format_month(s.start_date + std::chrono::days{d})];
      cell[0] += s.reply_counts[d];
      cell[1] += s.abuse_counts[d];
    }
  }
  return monthly_trend_from_counts({by_month.begin(), by_month.end()});
}

std::vector<std::string> months_in(const DateWindow& window) {
  std::vector<std::string> out;
  for (Date d = window.start; d <= window.end; d += std::chrono::days{1}) {
    std::string m = format_month(d);
    if (out.empty() || out.back() != m) out.push_back(std::move(m));
  }
  return out;
}

std::vector<GroupTestRow> compare_groups(std::span<const MPSummary> summaries,
                                         const Registry& registry) {
  struct Metric {
    std::string name;
    std::optional<AbuseType> type;
  };
  std::vector<Metric> metrics = {{"abuse_pct", std::nullopt}};
  for (const AbuseType t : kTalliedTypes) {
    metrics.push_back({std::string(to_string(t)) + "_pct", t});
  }

  // dimension -> group label -> MP indices with at least one reply
  std::map<std::string, std::map<std::string, std::vector<std::size_t>>> groups;
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    if (summaries[i].replies_total == 0) continue;
    const auto mp = registry.find(summaries[i].handle);
    if (!mp) continue;
    const MPRecord& rec = registry[*mp];
    groups["gender"][std::string(to_string(rec.gender))].push_back(i);
    groups["ethnicity"][std::string(to_string(rec.ethnicity_group))].push_back(i);
    groups["party"][rec.party].push_back(i);
  }

  auto rate = [&](std::size_t i, const Metric& metric) {
    const MPSummary& s = summaries[i];
    const double num = metric.type ? static_cast<double>(s.count(*metric.type))
                                   : static_cast<double>(s.abusive_total);
    return num / static_cast<double>(s.replies_total);
  };

  std::vector<GroupTestRow> out;
  for (const auto& [dimension, by_label] : groups) {
    std::vector<std::string> labels;
    for (const auto& [label, members] : by_label) labels.push_back(label);
    for (std::size_t x = 0; x < labels.size(); ++x) {
      for (std::size_t y = x + 1; y < labels.size(); ++y) {
        for (const Metric& metric : metrics) {
          std::vector<double> va, vb;
          for (const std::size_t i : by_label.at(labels[x])) va.push_back(rate(i, metric));
          for (const std::size_t i : by_label.at(labels[y])) vb.push_back(rate(i, metric));
          GroupTestRow row;
          row.dimension = dimension;
          row.metric = metric.name;
          row.n_a = va.size();
          row.n_b = vb.size();
          row.mean_a = mean_of(va);
          row.sd_a = sd_of(va);
          row.mean_b = mean_of(vb);
          row.sd_b = sd_of(vb);
          row.comparison = mann_whitney(va, vb);
          row.comparison.group_a = labels[x];
          row.comparison.group_b = labels[y];
          out.push_back(std::move(row));
        }
      }
    }
  }
  return out;
}

}  // namespace replywatch
