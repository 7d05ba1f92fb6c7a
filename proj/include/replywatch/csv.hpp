#ifndef REPLYWATCH_CSV_HPP
#define REPLYWATCH_CSV_HPP

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace replywatch::csv {

using Row = std::vector<std::string>;

// RFC 4180 reader: quoted fields may contain commas, doubled quotes and
// newlines. A trailing '\r' before the newline is dropped.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // Returns false at end of input. Throws ParseError on an unterminated quote.
  bool next(Row* row);

  // 1-based line on which the most recently returned record started.
  std::size_t line() const { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  std::size_t record_line_ = 0;
};

// Maps header names to column indices; throws InputError naming the first
// missing column.
class Header {
 public:
  Header(const Row& names, const std::vector<std::string_view>& required);
  std::size_t at(std::string_view name) const;
  std::optional<std::size_t> find(std::string_view name) const;

 private:
  std::unordered_map<std::string, std::size_t> index_;
};

std::string escape(std::string_view field);
std::string join(const Row& fields);

}  // namespace replywatch::csv

#endif  // REPLYWATCH_CSV_HPP
