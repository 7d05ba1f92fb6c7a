#ifndef REPLYWATCH_TEMPORAL_HPP
#define REPLYWATCH_TEMPORAL_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "replywatch/corpus.hpp"
#include "replywatch/errors.hpp"

namespace replywatch {

enum class Channel { abuse, all_replies, corrected_replies };
std::string_view to_string(Channel c);
std::optional<Channel> parse_channel(std::string_view s);

// Thrown by focus() on a series with no volume at all.
class FocusUndefined : public InputError {
 public:
  using InputError::InputError;
};

struct FocusResult {
  std::size_t window_start = 0;  // inclusive day index
  std::size_t window_end = 0;    // inclusive day index
  double focus = 1.0;            // share of volume inside the window
  double normalized_focus = 1.0; // focus * D / |window|
  double threshold = 0.0;        // per-day average volume

  std::size_t window_length() const { return window_end - window_start + 1; }
};

// The focus window is the longest run of days whose volume strictly exceeds
// the per-day average times the run length; ties go to the earliest start.
// A constant series has no such run and gets the whole period with focus and
// normalized focus of exactly 1. Linear time.
//
// `relative_tolerance` is slack on the excess (sum - threshold * length),
// relative to D * total, for real-valued series. Integer-valued series use 0
// and are compared exactly.
FocusResult focus(std::span<const double> values, double relative_tolerance = 0.0);

// Corpus-wide abusive share of all replies; scales the corrected channel.
double corpus_abuse_proportion(std::span<const DailySeries> series);

std::vector<double> channel_values(const DailySeries& s, Channel channel,
                                   double abuse_proportion);

FocusResult focus(const DailySeries& s, Channel channel, double abuse_proportion = 1.0);

enum class SliceMode { tiled, sliding };

struct ChurnPoint {
  std::size_t slice_index = 0;
  double churn = 0.0;
  std::vector<std::string> active_before;  // sorted handles
  std::vector<std::string> active_after;
};

struct GiniPoint {
  std::size_t slice_index = 0;
  double gini = 0.0;
};

// |A xor B| / |A u B|, 0 when both are empty. Inputs sorted and unique.
double churn(std::span<const std::string> before, std::span<const std::string> after);

// Day ranges [first, last] of the slices. Tiled slices cover the period
// back to back (the last may be short); sliding slices start every day.
std::vector<std::pair<std::size_t, std::size_t>> slices(std::size_t days, std::size_t slice_days,
                                                        SliceMode mode);

// One per-MP focus window (absent for MPs with no volume on the channel).
struct MPWindow {
  std::string handle;
  std::optional<FocusResult> window;
};

std::vector<MPWindow> focus_windows(std::span<const DailySeries> series, Channel channel,
                                    double abuse_proportion);

// Churn of the active set (MPs whose focus window overlaps the slice) between
// each slice R and the slice that follows it (tiled: the next tile; sliding:
// the window starting slice_days later). Throws InputError when slice_days is
// 0 or exceeds the period.
std::vector<ChurnPoint> churn_series(std::span<const MPWindow> windows, std::size_t days,
                                     std::size_t slice_days, SliceMode mode = SliceMode::tiled);
std::vector<ChurnPoint> churn_series(std::span<const DailySeries> series, std::size_t slice_days,
                                     Channel channel = Channel::abuse,
                                     SliceMode mode = SliceMode::tiled);

// Sum |x_i - x_j| over all ordered pairs / (2 n^2 mean); 0 when the mean is
// 0. Throws InputError on an empty or negative input.
double gini_slice(std::span<const double> values);

// Gini across MPs with non-zero channel volume, one value per slice.
std::vector<GiniPoint> gini_series(std::span<const DailySeries> series, std::size_t slice_days,
                                   Channel channel = Channel::abuse,
                                   SliceMode mode = SliceMode::tiled);

struct FiveNumber {
  std::size_t count = 0;
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

// Linear-interpolation quantiles (position q * (n - 1)).
FiveNumber five_number_summary(std::vector<double> values);

struct BoxRow {
  Channel channel = Channel::abuse;
  std::string metric;  // churn | gini
  std::size_t slice_days = 0;
  FiveNumber summary;
};

// Churn and Gini distributions per slice size for the abuse and corrected
// replies channels. Slice sizes longer than the period are skipped, as are
// empty distributions. Throws InputError with fewer than two MPs carrying
// abuse.
std::vector<BoxRow> burstiness_report(std::span<const DailySeries> series,
                                      std::size_t min_slice = 1, std::size_t max_slice = 10,
                                      SliceMode mode = SliceMode::tiled);

}  // namespace replywatch

#endif  // REPLYWATCH_TEMPORAL_HPP
