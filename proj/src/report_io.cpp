#include "replywatch/report_io.hpp"

#include <charconv>
#include <system_error>

#include "replywatch/errors.hpp"

namespace replywatch {
namespace fs = std::filesystem;

std::string fixed6(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
  std::string out(buf, res.ptr);
  if (out == "-0.000000") out.erase(0, 1);
  return out;
}

AtomicFile::AtomicFile(fs::path path) : path_(std::move(path)), tmp_(path_.string() + ".tmp") {
  out_.open(tmp_, std::ios::binary | std::ios::trunc);
  if (!out_) throw OutputError("cannot write " + tmp_.string());
}

AtomicFile::~AtomicFile() {
  if (!committed_) {
    out_.close();
    std::error_code ec;
    fs::remove(tmp_, ec);
  }
}

void AtomicFile::write(std::string_view s) {
  out_.write(s.data(), static_cast<std::streamsize>(s.size()));
}

void AtomicFile::commit() {
  out_.flush();
  if (!out_) throw OutputError("write failed: " + tmp_.string());
  out_.close();
  std::error_code ec;
  fs::rename(tmp_, path_, ec);
  if (ec) throw OutputError("cannot rename into " + path_.string());
  committed_ = true;
}

void write_atomic(const fs::path& path, std::string_view content) {
  AtomicFile f(path);
  f.write(content);
  f.commit();
}

std::string csv_document(const csv::Row& header, const std::vector<csv::Row>& rows) {
  std::string out = csv::join(header);
  out += '\n';
  for (const auto& r : rows) {
    out += csv::join(r);
    out += '\n';
  }
  return out;
}

std::string mp_summary_csv(std::span<const MPSummary> rows) {
  csv::Row header{"handle", "replies_total", "abusive_total", "abuse_pct"};
  for (const AbuseType t : kTalliedTypes) header.emplace_back(to_string(t));
  header.emplace_back("strong_racist");
  header.emplace_back("strong_any");
  std::vector<csv::Row> out;
  for (const MPSummary& s : rows) {
    csv::Row r{s.handle, std::to_string(s.replies_total), std::to_string(s.abusive_total),
               fixed6(s.abuse_pct)};
    for (const auto c : s.type_counts) r.push_back(std::to_string(c));
    r.push_back(std::to_string(s.strong_racist_count));
    r.push_back(std::to_string(s.strong_any_count));
    out.push_back(std::move(r));
  }
  return csv_document(header, out);
}

std::string heatmap_csv(const Heatmap& h) {
  csv::Row header{"topic"};
  header.insert(header.end(), h.months.begin(), h.months.end());
  header.emplace_back("total");
  std::vector<csv::Row> out;
  for (const HeatmapRow& row : h.rows) {
    csv::Row r{row.topic};
    for (const auto c : row.counts) r.push_back(std::to_string(c));
    r.push_back(std::to_string(row.total));
    out.push_back(std::move(r));
  }
  return csv_document(header, out);
}

std::string trends_csv(std::span<const MonthTrend> rows) {
  std::vector<csv::Row> out;
  for (const MonthTrend& m : rows) {
    out.push_back({m.month, std::to_string(m.replies), std::to_string(m.abusive),
                   fixed6(m.abuse_pct), m.p_value ? fixed6(*m.p_value) : "",
                   m.significant_increase ? "***" : ""});
  }
  return csv_document({"month", "replies", "abusive", "abuse_pct", "p_value", "sig_inc"}, out);
}

std::string group_tests_csv(std::span<const GroupTestRow> rows) {
  std::vector<csv::Row> out;
  for (const GroupTestRow& g : rows) {
    out.push_back({g.dimension, g.metric, g.comparison.group_a, g.comparison.group_b,
                   std::to_string(g.n_a), std::to_string(g.n_b), fixed6(g.mean_a), fixed6(g.sd_a),
                   fixed6(g.mean_b), fixed6(g.sd_b), std::string(to_string(g.comparison.test)),
                   fixed6(g.comparison.statistic), fixed6(g.comparison.p_value)});
  }
  return csv_document({"dimension", "metric", "group_a", "group_b", "n_a", "n_b", "mean_a", "sd_a",
                       "mean_b", "sd_b", "test", "statistic", "p_value"},
                      out);
}

std::string focus_csv(std::span<const MPWindow> rows, Date start) {
  std::vector<csv::Row> out;
  for (const MPWindow& w : rows) {
    if (!w.window) {
      out.push_back({w.handle, "", "", "", ""});
      continue;
    }
    const auto& f = *w.window;
    out.push_back({w.handle, format_date(start + std::chrono::days(f.window_start)),
                   format_date(start + std::chrono::days(f.window_end)), fixed6(f.focus),
                   fixed6(f.normalized_focus)});
  }
  return csv_document({"handle", "window_start", "window_end", "focus", "normalized_focus"}, out);
}

std::string churn_csv(std::span<const SliceChurn> rows) {
  std::vector<csv::Row> out;
  for (const SliceChurn& s : rows) {
    for (const ChurnPoint& p : s.points) {
      out.push_back({std::to_string(s.slice_days), std::to_string(p.slice_index), fixed6(p.churn),
                     std::to_string(p.active_before.size()),
                     std::to_string(p.active_after.size())});
    }
  }
  return csv_document({"slice_days", "slice_index", "churn", "active_before", "active_after"}, out);
}

std::string gini_csv(std::span<const SliceGini> rows) {
  std::vector<csv::Row> out;
  for (const SliceGini& s : rows) {
    for (const GiniPoint& p : s.points) {
      out.push_back({std::to_string(s.slice_days), std::to_string(p.slice_index), fixed6(p.gini)});
    }
  }
  return csv_document({"slice_days", "slice_index", "gini"}, out);
}

std::string boxplot_csv(std::span<const BoxRow> rows) {
  std::vector<csv::Row> out;
  for (const BoxRow& b : rows) {
    const FiveNumber& f = b.summary;
    out.push_back({std::string(to_string(b.channel)), b.metric, std::to_string(b.slice_days),
                   std::to_string(f.count), fixed6(f.min), fixed6(f.q1), fixed6(f.median),
                   fixed6(f.q3), fixed6(f.max)});
  }
  return csv_document(
      {"channel", "metric", "slice_days", "count", "min", "q1", "median", "q3", "max"}, out);
}

std::string eval_report_csv(const EvalReport& r) {
  return csv_document({"tp", "fp", "tn", "fn", "accuracy", "precision", "recall", "f1"},
                      {{std::to_string(r.tp), std::to_string(r.fp), std::to_string(r.tn),
                        std::to_string(r.fn), fixed6(r.accuracy), fixed6(r.precision),
                        fixed6(r.recall), fixed6(r.f1)}});
}

std::string eval_verdicts_csv(std::span<const EvalVerdict> rows) {
  std::vector<csv::Row> out;
  for (const EvalVerdict& v : rows) {
    out.push_back({std::to_string(v.line), v.label ? "1" : "0", v.predicted ? "1" : "0"});
  }
  return csv_document({"line", "label", "predicted"}, out);
}

}  // namespace replywatch
