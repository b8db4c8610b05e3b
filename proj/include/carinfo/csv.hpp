#pragma once

#include <istream>
#include <string>
#include <vector>

namespace carinfo::csv {

/// One parsed data row together with its 1-based line number in the source.
struct Row {
  std::size_t line;
  std::vector<std::string> fields;
};

struct Table {
  std::vector<std::string> header;
  std::vector<Row> rows;

  /// Index of `name` in the header, or throws ValidationError mentioning `source`.
  std::size_t column(const std::string& name, const std::string& source) const;
};

/// RFC 4180-style reader: comma separated, optional double quotes, CRLF tolerated,
/// blank lines skipped, a UTF-8 BOM on the first line ignored.
Table read(std::istream& in, const std::string& source);
Table read_file(const std::string& path);

/// Quotes a field when it contains a comma, quote or newline.
std::string escape(const std::string& field);

/// Fixed "%.17g" rendering, the format of every machine-readable float we write.
std::string format_double(double x);

}  // namespace carinfo::csv
