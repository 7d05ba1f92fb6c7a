#ifndef REPLYWATCH_STATS_HPP
#define REPLYWATCH_STATS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "replywatch/abuse_engine.hpp"
#include "replywatch/civil_time.hpp"
#include "replywatch/corpus.hpp"

namespace replywatch {

// Abuse types tallied per MP (untyped is not tallied separately).
inline constexpr std::array<AbuseType, 6> kTalliedTypes = {
    AbuseType::sexist,     AbuseType::racist,     AbuseType::antisemitic,
    AbuseType::islamophobic, AbuseType::homophobic, AbuseType::political};

// A reply reduced to what aggregation needs.
struct ClassifiedReply {
  std::string recipient;  // MP handle
  Timestamp created_at{};
  bool abusive = false;  // counts toward the recipient
  AbuseTypes types;
  int max_components = 0;
  std::vector<std::string> topics;  // inherited from the parent MP tweet
};

ClassifiedReply make_classified_reply(const Tweet& reply, const Classification& c,
                                      std::vector<std::string> topics = {});

struct MPSummary {
  std::string handle;
  std::int64_t replies_total = 0;
  std::int64_t abusive_total = 0;
  double abuse_pct = 0.0;  // ratio in [0, 1]
  std::array<std::int64_t, kTalliedTypes.size()> type_counts{};
  std::int64_t strong_racist_count = 0;  // racist, >= 3 components
  std::int64_t strong_any_count = 0;     // any type, >= 4 components

  std::int64_t count(AbuseType t) const;
};

inline constexpr int kStrongRacistComponents = 3;
inline constexpr int kStrongAnyComponents = 4;

// Mergeable per-MP tallies; registry order.
class SummaryAccumulator {
 public:
  explicit SummaryAccumulator(std::size_t mp_count) : rows_(mp_count) {}
  void add(std::size_t mp_index, bool abusive, AbuseTypes types, int max_components);
  void merge(const SummaryAccumulator& other);
  std::vector<MPSummary> build(const Registry& registry) const;

 private:
  std::vector<MPSummary> rows_;
};

// Per-MP summaries in registry order. Throws InputError for a reply whose
// recipient is not in the registry.
std::vector<MPSummary> summarize(std::span<const ClassifiedReply> replies,
                                 const Registry& registry);

enum class TestKind { mann_whitney, fisher_exact };
std::string_view to_string(TestKind t);

struct GroupComparison {
  std::string group_a;
  std::string group_b;
  double statistic = 0.0;  // U of sample a, or the sample odds ratio
  double p_value = 1.0;
  TestKind test = TestKind::mann_whitney;
};

// Two-sided. Exact (full null distribution over all labelings, computed by
// counting rank-sum subsets) when the smaller sample has at most 8 values;
// otherwise normal approximation with tie and continuity correction.
// Throws InputError on an empty sample.
inline constexpr std::size_t kExactMannWhitneyMax = 8;
GroupComparison mann_whitney(std::span<const double> a, std::span<const double> b);

// Two-sided Fisher exact test on [[a, b], [c, d]]: sums the hypergeometric
// probabilities no larger than that of the observed table.
// Throws InputError on an all-zero table or negative counts.
GroupComparison fisher_exact(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

// Abusive replies per topic per month.
struct HeatmapRow {
  std::string topic;
  std::vector<std::int64_t> counts;  // aligned with Heatmap::months
  std::int64_t total = 0;
};
struct Heatmap {
  std::vector<std::string> months;  // YYYY-MM
  std::vector<HeatmapRow> rows;     // total descending, ties by topic name
};

// Each abusive reply adds 1 to every topic it inherited. Replies outside
// `months` are ignored; topics with no abuse are omitted.
Heatmap topic_heatmap(std::span<const ClassifiedReply> replies,
                      std::span<const std::string> months);
Heatmap make_heatmap(const std::map<std::string, std::map<std::string, std::int64_t>>& counts,
                     std::span<const std::string> months);

struct MonthTrend {
  std::string month;  // YYYY-MM
  std::int64_t replies = 0;
  std::int64_t abusive = 0;
  double abuse_pct = 0.0;          // ratio
  std::optional<double> p_value;   // vs previous month; none for the first
  bool significant_increase = false;
};

inline constexpr double kTrendAlpha = 0.001;

// Sums all series per calendar month; consecutive months are compared with a
// two-sided Fisher exact test. Flagged when p < 0.001 and the rate rose.
// Throws InputError when the series span fewer than two months.
std::vector<MonthTrend> monthly_trend(std::span<const DailySeries> series);

// Same comparison on pre-aggregated monthly counts.
std::vector<MonthTrend> monthly_trend_from_counts(
    std::vector<std::pair<std::string, std::array<std::int64_t, 2>>> months);

std::vector<std::string> months_in(const DateWindow& window);

// Group tests over per-MP rates, one row per (dimension, metric, pair).
struct GroupTestRow {
  std::string dimension;  // gender | ethnicity | party
  std::string metric;     // abuse_pct | sexist_pct | ...
  std::size_t n_a = 0, n_b = 0;
  double mean_a = 0, sd_a = 0, mean_b = 0, sd_b = 0;
  GroupComparison comparison;
};

std::vector<GroupTestRow> compare_groups(std::span<const MPSummary> summaries,
                                         const Registry& registry);

}  // namespace replywatch

#endif  // REPLYWATCH_STATS_HPP
