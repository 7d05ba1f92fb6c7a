#include "replywatch/csv.hpp"

#include "replywatch/errors.hpp"

namespace replywatch::csv {

bool Reader::next(Row* row) {
  row->clear();
  std::string line;
  if (!std::getline(in_, line)) return false;
  ++line_;
  record_line_ = line_;

  std::string field;
  bool quoted = false;
  bool field_was_quoted = false;
  for (;;) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            field.push_back('"');
            ++i;
          } else {
            quoted = false;
          }
        } else {
          field.push_back(c);
        }
      } else if (c == '"' && field.empty() && !field_was_quoted) {
        quoted = true;
        field_was_quoted = true;
      } else if (c == ',') {
        row->push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
      } else {
        field.push_back(c);
      }
    }
    if (!quoted) break;
    // Quoted field continues on the next physical line.
    if (!std::getline(in_, line)) {
      throw ParseError("unterminated quoted field starting on line " +
                           std::to_string(record_line_),
                       record_line_);
    }
    ++line_;
    field.push_back('\n');
  }
  row->push_back(std::move(field));
  return true;
}

Header::Header(const Row& names, const std::vector<std::string_view>& required) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::string name = names[i];
    // Tolerate a UTF-8 byte order mark on the first column.
    if (i == 0 && name.rfind("\xEF\xBB\xBF", 0) == 0) name.erase(0, 3);
    index_.emplace(std::move(name), i);
  }
  for (const auto name : required) {
    if (!index_.contains(std::string(name))) {
      throw InputError("missing column '" + std::string(name) + "'");
    }
  }
}

std::size_t Header::at(std::string_view name) const {
  return index_.at(std::string(name));
}

std::optional<std::size_t> Header::find(std::string_view name) const {
  const auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string join(const Row& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += escape(fields[i]);
  }
  return out;
}

}  // namespace replywatch::csv
