#include "replywatch/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <deque>
#include <exception>
#include <fstream>
#include <map>
#include <thread>
#include <unordered_map>

#include "CLI11.hpp"
#include "replywatch/abuse_engine.hpp"
#include "replywatch/bounded_queue.hpp"
#include "replywatch/corpus.hpp"
#include "replywatch/errors.hpp"
#include "replywatch/lexicon.hpp"
#include "replywatch/report_io.hpp"
#include "replywatch/stats.hpp"
#include "replywatch/topic_engine.hpp"

namespace replywatch {
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

class StageLog {
 public:
  StageLog(std::ostream& log, bool quiet) : log_(log), quiet_(quiet) {}

  void report(std::string_view stage, double secs, std::uint64_t items, std::string_view unit) {
    if (quiet_) return;
    log_ << "[" << stage << "] " << fixed6(secs).substr(0, fixed6(secs).size() - 3) << " s";
    if (items > 0) {
      const double rate = secs > 0 ? static_cast<double>(items) / secs : 0.0;
      log_ << ", " << items << " " << unit << " (" << static_cast<std::uint64_t>(rate) << " "
           << unit << "/s)";
    }
    log_ << "\n";
  }
  void note(std::string_view msg) {
    if (!quiet_) log_ << msg << "\n";
  }
  void warn(std::string_view msg) { log_ << "warning: " << msg << "\n"; }

 private:
  std::ostream& log_;
  bool quiet_;
};

CompiledLexicon load_compiled(const RunConfig& c) {
  return compile(load_lexicon(c.lexicon, c.topics));
}

std::vector<std::string> topic_names(const CompiledLexicon& lex) {
  std::vector<std::string> out;
  for (const auto& [topic, terms] : lex.topics()) out.push_back(topic);
  out.emplace_back(kOtherTopic);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint16_t topic_index(const std::vector<std::string>& names, std::string_view topic) {
  return static_cast<std::uint16_t>(std::lower_bound(names.begin(), names.end(), topic) -
                                    names.begin());
}

// What one pass over the tweet file must produce.
struct PassNeeds {
  bool json = false;        // classifications.jsonl rows
  bool link = false;        // reply linking, tallies and series
  bool topics = false;      // topic sets of MP-authored tweets
  bool topic_rows = false;  // tweet_topics.csv rows
};

struct Item {
  std::string id;
  Timestamp created_at{};
  LinkOutcome link;
  std::optional<std::string> parent;
  bool counts = false;
  AbuseTypes types;
  int max_components = 0;
  std::vector<std::uint16_t> topics;  // MP-authored tweets only
  std::string json;
  std::string topic_row;
};

struct Chunk {
  std::size_t first_line = 0;
  std::vector<std::string> lines;
};

struct ChunkResult {
  std::vector<Item> items;
  std::string error;  // first failure, already prefixed with its line
};

struct Context {
  const CompiledLexicon* lex = nullptr;
  const Registry* registry = nullptr;
  const std::vector<std::string>* topic_names = nullptr;
  PassNeeds needs;
};

bool blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

ChunkResult process_chunk(const Chunk& chunk, const Context& ctx) {
  ChunkResult out;
  out.items.reserve(chunk.lines.size());
  for (std::size_t k = 0; k < chunk.lines.size(); ++k) {
    const std::string& line = chunk.lines[k];
    if (blank(line)) continue;
    try {
      Tweet t = parse_tweet_line(line);
      Item it;
      it.created_at = t.created_at;
      it.parent = t.in_reply_to_id;
      if (ctx.registry) {
        it.link = link_tweet(t, *ctx.registry);
      } else {
        it.link.mp_authored = true;  // without a registry every author is scanned
      }
      const bool reply = it.link.recipient.has_value();
      if (ctx.needs.json || (ctx.needs.link && reply)) {
        const Classification c = classify(t.text, *ctx.lex);
        if (ctx.needs.json) {
          it.json = classification_json(t.id, c, *ctx.lex);
          it.json += '\n';
        }
        it.counts = c.counts_for_recipient();
        it.types = c.types();
        it.max_components = c.max_components;
      }
      if (ctx.needs.topics && it.link.mp_authored && !t.is_retweet) {
        const auto topics = topic_set(detect_topics(t.text, *ctx.lex));
        for (const auto& name : topics) it.topics.push_back(topic_index(*ctx.topic_names, name));
        if (ctx.needs.topic_rows) {
          std::string joined;
          for (const auto& name : topics) {
            if (!joined.empty()) joined += ';';
            joined += name;
          }
          it.topic_row = csv::join({t.id, t.author_handle, joined});
          it.topic_row += '\n';
        }
      }
      it.id = std::move(t.id);
      out.items.push_back(std::move(it));
    } catch (const ParseError& e) {
      out.error = "line " + std::to_string(chunk.first_line + k) + ", byte " +
                  std::to_string(e.offset()) + ": " + e.what();
      return out;
    } catch (const InputError& e) {
      out.error = "line " + std::to_string(chunk.first_line + k) + ": " + e.what();
      return out;
    }
  }
  return out;
}

// Replies grouped by the MP tweet they answer.
struct ParentTally {
  std::int64_t replies = 0;
  std::int64_t abusive = 0;
  std::vector<std::int64_t> abusive_by_month;
};

int month_index(Date d, Date start) {
  const std::chrono::year_month_day a{d};
  const std::chrono::year_month_day b{start};
  return (int(a.year()) - int(b.year())) * 12 +
         (int(unsigned(a.month())) - int(unsigned(b.month())));
}

class Aggregator {
 public:
  Aggregator(const RunConfig& config, const Registry& registry, PassNeeds needs)
      : needs_(needs), summary_(registry.size()) {
    if (config.start && config.end) {
      window_ = DateWindow{*config.start, *config.end};
      daily_.emplace(registry, *window_);
      months_ = months_in(*window_);
    }
    if (needs.json) jsonl_.emplace(config.out / "classifications.jsonl");
    if (needs.topic_rows) {
      topic_file_.emplace(config.out / "tweet_topics.csv");
      topic_file_->write("id,author_handle,topics\n");
    }
  }

  void consume(Item& it) {
    ++records_;
    if (!seen_.insert(it.id)) {
      ++counters_.duplicates;
      return;
    }
    if (jsonl_) jsonl_->write(it.json);
    if (topic_file_) topic_file_->write(it.topic_row);
    if (needs_.topics && !it.topics.empty()) parent_topics_[it.id] = std::move(it.topics);
    if (!needs_.link) return;
    const LinkOutcome& link = it.link;
    if (link.discarded()) ++counters_.discarded;
    if (link.mp_authored) ++counters_.mp_authored;
    if (link.mp_retweet) ++counters_.mp_retweets;
    if (!link.recipient) return;
    ++counters_.replies;
    if (!daily_ || !daily_->add(*link.recipient, it.created_at, it.counts)) return;
    summary_.add(*link.recipient, it.counts, it.types, it.max_components);
    ParentTally& tally = tallies_[{static_cast<std::uint32_t>(*link.recipient),
                                   it.parent.value_or(std::string())}];
    if (tally.abusive_by_month.empty()) tally.abusive_by_month.assign(months_.size(), 0);
    ++tally.replies;
    if (it.counts) {
      ++tally.abusive;
      ++tally.abusive_by_month[month_index(utc_date(it.created_at), window_->start)];
    }
  }

  void commit() {
    if (jsonl_) jsonl_->commit();
    if (topic_file_) topic_file_->commit();
  }

  std::uint64_t records() const { return records_; }
  const LinkCounters& counters() const { return counters_; }
  std::uint64_t dropped() const { return daily_ ? daily_->dropped() : 0; }
  const SummaryAccumulator& summary() const { return summary_; }
  std::vector<DailySeries> series() const {
    return daily_ ? daily_->build() : std::vector<DailySeries>{};
  }
  const std::vector<std::string>& months() const { return months_; }

  // Calls fn(mp, topic indices, tally) per replied-to tweet. Replies whose
  // parent was not seen as an MP tweet are attributed to `other`.
  template <typename F>
  void for_each_attribution(std::uint16_t other, F&& fn) const {
    const std::vector<std::uint16_t> fallback{other};
    for (const auto& [key, tally] : tallies_) {
      const auto it = key.second.empty() ? parent_topics_.end() : parent_topics_.find(key.second);
      fn(key.first, it == parent_topics_.end() ? fallback : it->second, tally);
    }
  }

 private:
  PassNeeds needs_;
  LinkCounters counters_;
  SeenIds seen_;
  std::uint64_t records_ = 0;
  SummaryAccumulator summary_;
  std::optional<DateWindow> window_;
  std::optional<DailySeriesBuilder> daily_;
  std::vector<std::string> months_;
  std::map<std::pair<std::uint32_t, std::string>, ParentTally> tallies_;
  std::unordered_map<std::string, std::vector<std::uint16_t>> parent_topics_;
  std::optional<AtomicFile> jsonl_;
  std::optional<AtomicFile> topic_file_;
};

// Reads the tweet file in chunks; workers parse and classify while this thread
// folds finished chunks into the aggregator strictly in file order. At most
// 2 * workers chunks are in flight, so memory does not grow with the corpus.
void corpus_pass(const RunConfig& c, const Context& ctx, Aggregator& agg, StageLog& log) {
  std::ifstream in(c.tweets, std::ios::binary);
  if (!in) throw InputError("cannot open tweets file " + c.tweets.string());

  const auto t0 = Clock::now();
  const std::size_t max_inflight = 2 * c.workers;
  WorkerPool pool(c.workers, max_inflight);
  std::deque<std::future<ChunkResult>> inflight;
  auto drain_one = [&] {
    ChunkResult r = inflight.front().get();
    inflight.pop_front();
    if (!r.error.empty()) throw InputError(r.error);
    for (Item& it : r.items) agg.consume(it);
  };

  std::size_t line_no = 0;
  std::string line;
  bool more = true;
  while (more) {
    auto chunk = std::make_shared<Chunk>();
    chunk->first_line = line_no + 1;
    chunk->lines.reserve(c.chunk_lines);
    while (chunk->lines.size() < c.chunk_lines) {
      if (!std::getline(in, line)) {
        more = false;
        break;
      }
      ++line_no;
      chunk->lines.push_back(std::move(line));
    }
    if (chunk->lines.empty()) break;
    inflight.push_back(pool.submit([chunk, &ctx] { return process_chunk(*chunk, ctx); }));
    while (inflight.size() >= max_inflight) drain_one();
  }
  while (!inflight.empty()) drain_one();
  agg.commit();
  log.report("ingest+classify", seconds_since(t0), agg.records(), "tweets");
}

void log_counters(StageLog& log, const Aggregator& agg) {
  const LinkCounters& k = agg.counters();
  log.note("replies " + std::to_string(k.replies) + ", mp_authored " +
           std::to_string(k.mp_authored) + ", mp_retweets " + std::to_string(k.mp_retweets) +
           ", discarded " + std::to_string(k.discarded) + ", duplicates " +
           std::to_string(k.duplicates) + ", out_of_window " + std::to_string(agg.dropped()));
}

Registry load_registry_if(const fs::path& p) {
  return p.empty() ? Registry{} : Registry(load_registry(p));
}

void prepare_out_dir(const fs::path& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (!fs::is_directory(out, ec)) {
    throw OutputError("cannot create output directory " + out.string());
  }
}

void run_classify(const RunConfig& c, StageLog& log) {
  const CompiledLexicon lex = load_compiled(c);
  const auto names = topic_names(lex);
  Context ctx{&lex, nullptr, &names, PassNeeds{.json = true}};
  const Registry none;
  Aggregator agg(c, none, ctx.needs);
  corpus_pass(c, ctx, agg, log);
  if (agg.counters().duplicates) {
    log.note("duplicates skipped " + std::to_string(agg.counters().duplicates));
  }
}

void run_topics(const RunConfig& c, StageLog& log) {
  const CompiledLexicon lex = load_compiled(c);
  const auto names = topic_names(lex);
  const Registry registry = load_registry_if(c.registry);
  Context ctx{&lex, c.registry.empty() ? nullptr : &registry, &names,
              PassNeeds{.topics = true, .topic_rows = true}};
  Aggregator agg(c, registry, ctx.needs);
  corpus_pass(c, ctx, agg, log);
}

std::string mp_topic_tests_csv(const Aggregator& agg, const Registry& registry,
                               const std::vector<std::string>& names) {
  // (mp, topic) -> {replies, abusive}; topic -> corpus totals
  std::map<std::pair<std::uint32_t, std::uint16_t>, std::array<std::int64_t, 2>> cells;
  std::vector<std::array<std::int64_t, 2>> totals(names.size(), {0, 0});
  agg.for_each_attribution(topic_index(names, kOtherTopic),
                           [&](std::uint32_t mp, const std::vector<std::uint16_t>& topics,
                               const ParentTally& t) {
                             for (const auto topic : topics) {
                               auto& cell = cells[{mp, topic}];
                               cell[0] += t.replies;
                               cell[1] += t.abusive;
                               totals[topic][0] += t.replies;
                               totals[topic][1] += t.abusive;
                             }
                           });
  std::vector<csv::Row> rows;
  for (const auto& [key, cell] : cells) {
    const auto [mp, topic] = key;
    const std::int64_t n = cell[0], a = cell[1];
    const std::int64_t rest_n = totals[topic][0] - n, rest_a = totals[topic][1] - a;
    const double rate = n ? double(a) / double(n) : 0.0;
    const double rest_rate = rest_n ? double(rest_a) / double(rest_n) : 0.0;
    const GroupComparison g = fisher_exact(a, n - a, rest_a, rest_n - rest_a);
    const bool higher = double(a) * double(rest_n) > double(rest_a) * double(n);
    rows.push_back({registry[mp].handle, names[topic], std::to_string(n), std::to_string(a),
                    fixed6(rate), fixed6(rest_rate), fixed6(g.statistic), fixed6(g.p_value),
                    higher && g.p_value < kTrendAlpha ? "***" : ""});
  }
  std::sort(rows.begin(), rows.end());
  return csv_document({"handle", "topic", "replies", "abusive", "abuse_pct", "rest_abuse_pct",
                       "odds_ratio", "p_value", "sig_high"},
                      rows);
}

void run_stats(const RunConfig& c, StageLog& log) {
  const CompiledLexicon lex = load_compiled(c);
  const auto names = topic_names(lex);
  const Registry registry(load_registry(c.registry));
  Context ctx{&lex, &registry, &names, PassNeeds{.link = true, .topics = true}};
  Aggregator agg(c, registry, ctx.needs);
  corpus_pass(c, ctx, agg, log);
  log_counters(log, agg);

  const auto t0 = Clock::now();
  const auto summaries = agg.summary().build(registry);
  std::int64_t replies = 0;
  for (const auto& s : summaries) replies += s.replies_total;

  std::map<std::string, std::map<std::string, std::int64_t>> heat;
  agg.for_each_attribution(topic_index(names, kOtherTopic),
                           [&](std::uint32_t, const std::vector<std::uint16_t>& topics,
                               const ParentTally& t) {
                             for (const auto topic : topics) {
                               for (std::size_t m = 0; m < t.abusive_by_month.size(); ++m) {
                                 if (t.abusive_by_month[m]) {
                                   heat[names[topic]][agg.months()[m]] += t.abusive_by_month[m];
                                 }
                               }
                             }
                           });

  std::vector<MonthTrend> trends;
  if (replies > 0) {
    if (agg.months().size() >= 2) {
      trends = monthly_trend(agg.series());
    } else {
      log.warn("analysis window covers one month; trends.csv has no rows");
    }
  }

  write_atomic(c.out / "mp_summary.csv", mp_summary_csv(summaries));
  write_atomic(c.out / "heatmap.csv", heatmap_csv(make_heatmap(heat, agg.months())));
  write_atomic(c.out / "trends.csv", trends_csv(trends));
  write_atomic(c.out / "group_tests.csv", group_tests_csv(compare_groups(summaries, registry)));
  write_atomic(c.out / "mp_topic_tests.csv", mp_topic_tests_csv(agg, registry, names));
  log.report("stats", seconds_since(t0), summaries.size(), "MPs");
}

void run_temporal(const RunConfig& c, StageLog& log) {
  const CompiledLexicon lex = load_compiled(c);
  const auto names = topic_names(lex);
  const Registry registry(load_registry(c.registry));
  Context ctx{&lex, &registry, &names, PassNeeds{.link = true}};
  Aggregator agg(c, registry, ctx.needs);
  const std::size_t days = DateWindow{*c.start, *c.end}.days();
  if (c.slice_max > days) {
    throw InputError("slice length " + std::to_string(c.slice_max) + " exceeds the " +
                     std::to_string(days) + "-day window");
  }
  corpus_pass(c, ctx, agg, log);
  log_counters(log, agg);

  const auto t0 = Clock::now();
  const auto series = agg.series();
  const double p = corpus_abuse_proportion(series);
  const auto windows = focus_windows(series, c.channel, p);
  const bool any_window = std::any_of(windows.begin(), windows.end(),
                                      [](const MPWindow& w) { return w.window.has_value(); });
  std::vector<MPWindow> defined;
  for (const auto& w : windows) {
    if (w.window) defined.push_back(w);
  }

  std::vector<SliceChurn> churns;
  std::vector<SliceGini> ginis;
  if (any_window) {
    for (std::size_t s = c.slice_min; s <= c.slice_max; ++s) {
      churns.push_back({s, churn_series(windows, days, s, c.slice_mode)});
      ginis.push_back({s, gini_series(series, s, c.channel, c.slice_mode)});
    }
  }
  std::vector<BoxRow> box;
  try {
    box = burstiness_report(series, c.slice_min, c.slice_max, c.slice_mode);
  } catch (const InputError& e) {
    log.warn(std::string(e.what()) + "; boxplot.csv has no rows");
  }

  write_atomic(c.out / "focus.csv", focus_csv(defined, *c.start));
  write_atomic(c.out / "churn.csv", churn_csv(churns));
  write_atomic(c.out / "gini.csv", gini_csv(ginis));
  write_atomic(c.out / "boxplot.csv", boxplot_csv(box));
  log.report("temporal", seconds_since(t0), series.size(), "series");
}

void run_eval(const RunConfig& c, StageLog& log) {
  const CompiledLexicon lex = load_compiled(c);
  std::ifstream in(c.labeled, std::ios::binary);
  if (!in) throw InputError("cannot open labeled file " + c.labeled.string());
  const auto t0 = Clock::now();
  const auto rows = read_labeled(in, c.format);
  std::vector<EvalVerdict> verdicts;
  const EvalReport r = evaluate(rows, lex, c.workers, c.dump_verdicts ? &verdicts : nullptr);
  write_atomic(c.out / "eval_report.csv", eval_report_csv(r));
  if (c.dump_verdicts) write_atomic(c.out / "eval_verdicts.csv", eval_verdicts_csv(verdicts));
  log.report("eval", seconds_since(t0), rows.size(), "rows");
}

std::size_t parse_count(std::string_view s) {
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) {
    throw InputError("invalid slice size '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::pair<std::size_t, std::size_t> parse_slice_range(std::string_view s) {
  const auto dots = s.find("..");
  std::pair<std::size_t, std::size_t> r;
  if (dots == std::string_view::npos) {
    r.first = r.second = parse_count(s);
  } else {
    r.first = parse_count(s.substr(0, dots));
    r.second = parse_count(s.substr(dots + 2));
  }
  if (r.first == 0 || r.first > r.second) {
    throw InputError("invalid slice range '" + std::string(s) + "'");
  }
  return r;
}

void RunConfig::validate() const {
  auto need = [&](const fs::path& p, std::string_view flag) {
    if (p.empty()) throw InputError("missing required option " + std::string(flag));
  };
  switch (command) {
    case Command::classify:
      need(tweets, "--tweets");
      need(lexicon, "--lexicon");
      break;
    case Command::stats:
    case Command::temporal:
      need(tweets, "--tweets");
      need(registry, "--registry");
      need(lexicon, "--lexicon");
      if (!start || !end) throw InputError("missing required option --start/--end");
      break;
    case Command::topics:
      need(tweets, "--tweets");
      need(lexicon, "--lexicon");
      need(topics, "--topics");
      break;
    case Command::eval:
      need(labeled, "--labeled");
      need(lexicon, "--lexicon");
      break;
  }
  if (start && end && *end < *start) throw InputError("--start is after --end");
  if (workers == 0) throw InputError("--workers must be at least 1");
  if (chunk_lines == 0) throw InputError("--chunk-lines must be at least 1");
  if (slice_min == 0 || slice_min > slice_max) throw InputError("invalid slice range");
}

void run(const RunConfig& config, std::ostream& log_stream) {
  config.validate();
  prepare_out_dir(config.out);
  StageLog log(log_stream, config.quiet);
  const auto t0 = Clock::now();
  switch (config.command) {
    case Command::classify:
      run_classify(config, log);
      break;
    case Command::stats:
      run_stats(config, log);
      break;
    case Command::temporal:
      run_temporal(config, log);
      break;
    case Command::topics:
      run_topics(config, log);
      break;
    case Command::eval:
      run_eval(config, log);
      break;
  }
  log.report("total", seconds_since(t0), 0, "");
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"replywatch: abuse detection and burstiness analytics for reply corpora"};
  app.set_config("--config", "", "key=value file supplying option defaults");
  app.require_subcommand(1, 1);

  RunConfig c;
  std::string start, end, slices = "1..10", channel = "abuse", mode = "tiled",
                          format = "labeled";
  c.workers = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--tweets", c.tweets, "tweet archive, JSON lines");
  app.add_option("--registry", c.registry, "MP registry CSV");
  app.add_option("--lexicon", c.lexicon, "abuse lexicon CSV");
  app.add_option("--topics", c.topics, "topic lexicon CSV");
  app.add_option("--labeled", c.labeled, "labeled insult CSV for eval");
  app.add_option("--out,-o", c.out, "output directory")->capture_default_str();
  app.add_option("--start", start, "first day of the analysis window (YYYY-MM-DD)");
  app.add_option("--end", end, "last day of the analysis window (YYYY-MM-DD)");
  app.add_option("--slices", slices, "slice size or range, e.g. 1..10")->capture_default_str();
  app.add_option("--channel", channel, "abuse | all_replies | corrected_replies")
      ->capture_default_str();
  app.add_option("--slice-mode", mode, "tiled | sliding")->capture_default_str();
  app.add_option("--format", format, "eval input layout: labeled | kaggle")
      ->capture_default_str();
  app.add_option("--workers", c.workers, "classifier threads")->capture_default_str();
  app.add_option("--chunk-lines", c.chunk_lines, "lines per work unit")->capture_default_str();
  app.add_flag("--verdicts", c.dump_verdicts, "eval: also write per-row verdicts");
  app.add_flag("--quiet", c.quiet, "no stage timings");

  const std::pair<const char*, Command> commands[] = {
      {"classify", Command::classify}, {"stats", Command::stats},
      {"temporal", Command::temporal}, {"eval", Command::eval},
      {"topics", Command::topics}};
  const char* help[] = {
      "classify every tweet, write classifications.jsonl",
      "per-MP tallies, topic heatmap, monthly trends and group tests",
      "focus windows, churn, Gini and box-plot summaries",
      "score the classifier on labeled insult data",
      "topic sets of MP-authored tweets"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    subs.push_back(app.add_subcommand(commands[i].first, help[i]));
    subs.back()->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (subs[i]->parsed()) c.command = commands[i].second;
    }
    if (!start.empty()) c.start = parse_date(start);
    if (!end.empty()) c.end = parse_date(end);
    std::tie(c.slice_min, c.slice_max) = parse_slice_range(slices);
    const auto ch = parse_channel(channel);
    if (!ch) throw InputError("unknown channel '" + channel + "'");
    c.channel = *ch;
    if (mode == "tiled") {
      c.slice_mode = SliceMode::tiled;
    } else if (mode == "sliding") {
      c.slice_mode = SliceMode::sliding;
    } else {
      throw InputError("unknown slice mode '" + mode + "'");
    }
    if (format == "labeled") {
      c.format = EvalFormat::labeled;
    } else if (format == "kaggle") {
      c.format = EvalFormat::kaggle;
    } else {
      throw InputError("unknown format '" + format + "'");
    }
    c.validate();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    run(c, err);
    return 0;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const OutputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace replywatch
