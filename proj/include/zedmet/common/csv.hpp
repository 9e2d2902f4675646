// csv.hpp - minimal CSV writer/reader for the metric tables.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "zedmet/common/error.hpp"
#include "zedmet/common/text.hpp"

namespace zedmet::csv {

inline std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos)
    return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string join_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += escape(fields[i]);
  }
  out += '\n';
  return out;
}

inline std::vector<std::string> parse_row(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline Table parse(std::string_view content) {
  Table t;
  bool first = true;
  for (const auto& line : text::split_lines(content)) {
    if (text::trim(line).empty()) continue;
    auto fields = parse_row(line);
    if (first) {
      t.header = std::move(fields);
      first = false;
    } else {
      if (fields.size() != t.header.size())
        throw Error(ErrorKind::io, "csv row has " +
                                       std::to_string(fields.size()) +
                                       " fields, header has " +
                                       std::to_string(t.header.size()));
      t.rows.push_back(std::move(fields));
    }
  }
  if (first) throw Error(ErrorKind::io, "csv input is empty");
  return t;
}

inline double to_double(const std::string& field, const std::string& what) {
  try {
    std::size_t used = 0;
    double v = std::stod(field, &used);
    if (used != field.size())
      throw Error(ErrorKind::io, "bad numeric field for " + what + ": '" + field + "'");
    return v;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(ErrorKind::io, "bad numeric field for " + what + ": '" + field + "'");
  }
}

}  // namespace zedmet::csv
