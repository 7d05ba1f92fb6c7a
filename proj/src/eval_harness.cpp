#include "replywatch/eval_harness.hpp"

#include <algorithm>
#include <future>

#include "replywatch/abuse_engine.hpp"
#include "replywatch/csv.hpp"
#include "replywatch/errors.hpp"
#include "unicode_util.hpp"

namespace replywatch {
namespace {

double ratio(std::int64_t num, std::int64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Reads `n` hex digits at s[i]; -1 if they are not all there.
long read_hex(std::string_view s, std::size_t i, std::size_t n) {
  if (i + n > s.size()) return -1;
  long v = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const int h = hex_value(s[i + k]);
    if (h < 0) return -1;
    v = v * 16 + h;
  }
  return v;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_label(std::string_view raw, std::size_t line) {
  const std::string v = trim(raw);
  if (v == "1") return true;
  if (v == "0") return false;
  throw InputError("line " + std::to_string(line) + ": malformed label '" + v + "'");
}

}  // namespace

EvalReport make_report(std::int64_t tp, std::int64_t fp, std::int64_t tn, std::int64_t fn) {
  EvalReport r;
  r.tp = tp;
  r.fp = fp;
  r.tn = tn;
  r.fn = fn;
  r.accuracy = ratio(tp + tn, tp + fp + tn + fn);
  r.precision = ratio(tp, tp + fp);
  r.recall = ratio(tp, tp + fn);
  r.f1 = r.precision + r.recall == 0.0
             ? 0.0
             : 2.0 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

std::string decode_escapes(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\' || i + 1 == s.size()) {
      out.push_back(s[i]);
      continue;
    }
    const char c = s[i + 1];
    switch (c) {
      case 'n':
        out.push_back('\n');
        ++i;
        continue;
      case 't':
        out.push_back('\t');
        ++i;
        continue;
      case 'r':
        out.push_back('\r');
        ++i;
        continue;
      case '\\':
      case '\'':
      case '"':
        out.push_back(c);
        ++i;
        continue;
      case 'x':
      case 'u': {
        const std::size_t n = c == 'x' ? 2 : 4;
        const long cp = read_hex(s, i + 2, n);
        if (cp >= 0) {
          detail::append_utf8(&out, static_cast<UChar32>(cp));
          i += 1 + n;
          continue;
        }
        break;
      }
      default:
        break;
    }
    out.push_back(s[i]);
  }
  return out;
}

std::vector<LabeledText> read_labeled(std::istream& in, EvalFormat format) {
  csv::Reader reader(in);
  csv::Row row;
  if (!reader.next(&row)) throw InputError("labeled file is empty");
  const bool kaggle = format == EvalFormat::kaggle;
  const std::string_view label_col = kaggle ? "Insult" : "label";
  const std::string_view text_col = kaggle ? "Comment" : "text";
  const csv::Header header(row, {label_col, text_col});
  const std::size_t li = header.at(label_col);
  const std::size_t ti = header.at(text_col);

  std::vector<LabeledText> out;
  while (reader.next(&row)) {
    if (row.size() == 1 && row[0].empty()) continue;  // blank line
    const std::size_t line = reader.line();
    if (row.size() <= std::max(li, ti)) {
      throw InputError("line " + std::to_string(line) + ": too few fields");
    }
    LabeledText t;
    t.line = line;
    t.label = parse_label(row[li], line);
    t.text = kaggle ? decode_escapes(row[ti]) : row[ti];
    out.push_back(std::move(t));
  }
  if (out.empty()) throw InputError("labeled file has no rows");
  return out;
}

EvalReport evaluate(const std::vector<LabeledText>& rows, const CompiledLexicon& lex,
                    std::size_t workers, std::vector<EvalVerdict>* verdicts) {
  workers = std::max<std::size_t>(1, std::min(workers, rows.size()));
  std::vector<char> predicted(rows.size(), 0);
  const ClassifyOptions options{.resolve_targets = false};
  auto run = [&](std::size_t first, std::size_t last) {
    for (std::size_t i = first; i < last; ++i) {
      predicted[i] = classify(rows[i].text, lex, options).abusive ? 1 : 0;
    }
  };
  const std::size_t chunk = (rows.size() + workers - 1) / std::max<std::size_t>(workers, 1);
  std::vector<std::future<void>> jobs;
  for (std::size_t first = chunk; first < rows.size(); first += chunk) {
    jobs.push_back(std::async(std::launch::async, run, first, std::min(first + chunk, rows.size())));
  }
  run(0, std::min(chunk, rows.size()));
  for (auto& j : jobs) j.get();

  std::int64_t tp = 0, fp = 0, tn = 0, fn = 0;
  if (verdicts) verdicts->clear();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const bool p = predicted[i] != 0;
    const bool l = rows[i].label;
    if (p && l) ++tp;
    else if (p) ++fp;
    else if (l) ++fn;
    else ++tn;
    if (verdicts) verdicts->push_back({rows[i].line, l, p});
  }
  return make_report(tp, fp, tn, fn);
}

}  // namespace replywatch
