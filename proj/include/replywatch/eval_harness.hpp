#ifndef REPLYWATCH_EVAL_HARNESS_HPP
#define REPLYWATCH_EVAL_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "replywatch/lexicon.hpp"

namespace replywatch {

struct EvalReport {
  std::int64_t tp = 0, fp = 0, tn = 0, fn = 0;
  double accuracy = 0, precision = 0, recall = 0, f1 = 0;

  std::int64_t total() const { return tp + fp + tn + fn; }
  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

// Ratios from confusion counts; zero denominators give 0.
EvalReport make_report(std::int64_t tp, std::int64_t fp, std::int64_t tn, std::int64_t fn);

enum class EvalFormat {
  labeled,  // header label,text
  kaggle,   // header Insult,Date,Comment with backslash-escaped comments
};

struct LabeledText {
  std::size_t line = 0;  // 1-based line where the record starts
  bool label = false;
  std::string text;
};

// Throws InputError naming the line for a label other than 0/1, and for a
// file without rows.
std::vector<LabeledText> read_labeled(std::istream& in, EvalFormat format);

// Decodes \n, \t, \\, \', \", \xHH and \uHHHH as found in the insult corpus.
std::string decode_escapes(std::string_view s);

struct EvalVerdict {
  std::size_t line = 0;
  bool label = false;
  bool predicted = false;
};

// Classifies every row with target resolution off. Rows are split across
// `workers` threads; tallies do not depend on the split.
EvalReport evaluate(const std::vector<LabeledText>& rows, const CompiledLexicon& lex,
                    std::size_t workers = 1, std::vector<EvalVerdict>* verdicts = nullptr);

}  // namespace replywatch

#endif  // REPLYWATCH_EVAL_HARNESS_HPP
