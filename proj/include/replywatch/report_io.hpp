#ifndef REPLYWATCH_REPORT_IO_HPP
#define REPLYWATCH_REPORT_IO_HPP

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "replywatch/csv.hpp"
#include "replywatch/eval_harness.hpp"
#include "replywatch/stats.hpp"
#include "replywatch/temporal.hpp"

namespace replywatch {

// Six decimals, never "-0.000000".
std::string fixed6(double v);

// Writes to a sibling temp file and renames it over `path`. Throws
// OutputError when the directory is missing or unwritable.
void write_atomic(const std::filesystem::path& path, std::string_view content);

// Streaming variant for large outputs: content goes to the temp file as it is
// produced and only appears under the final name on commit().
class AtomicFile {
 public:
  explicit AtomicFile(std::filesystem::path path);
  ~AtomicFile();
  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;

  void write(std::string_view s);
  void commit();

 private:
  std::filesystem::path path_;
  std::filesystem::path tmp_;
  std::ofstream out_;
  bool committed_ = false;
};

std::string csv_document(const csv::Row& header, const std::vector<csv::Row>& rows);

std::string mp_summary_csv(std::span<const MPSummary> rows);
std::string heatmap_csv(const Heatmap& h);
std::string trends_csv(std::span<const MonthTrend> rows);
std::string group_tests_csv(std::span<const GroupTestRow> rows);

// Day indices are written as calendar dates counted from `start`.
std::string focus_csv(std::span<const MPWindow> rows, Date start);

struct SliceChurn {
  std::size_t slice_days = 0;
  std::vector<ChurnPoint> points;
};
struct SliceGini {
  std::size_t slice_days = 0;
  std::vector<GiniPoint> points;
};
std::string churn_csv(std::span<const SliceChurn> rows);
std::string gini_csv(std::span<const SliceGini> rows);
std::string boxplot_csv(std::span<const BoxRow> rows);

std::string eval_report_csv(const EvalReport& r);
std::string eval_verdicts_csv(std::span<const EvalVerdict> rows);

}  // namespace replywatch

#endif  // REPLYWATCH_REPORT_IO_HPP
