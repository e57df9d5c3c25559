#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace respond {

/// Shortest-safe decimal form: 17 significant digits, so values parse back
/// to the same double.
std::string format_double(double value);

/// Comma-separated rows with a header line and LF endings.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  void row(std::span<const double> values);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

}  // namespace respond
