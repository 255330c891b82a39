#ifndef HSBD_REPORT_HPP
#define HSBD_REPORT_HPP

#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "hsbd/rational.hpp"

namespace hsbd {

using Cell = std::variant<std::string, long long, Int, Rational, bool>;

enum class Format { Table, Csv, Jsonl };

// Command echo, a column-row body, summary key/value pairs and free-form
// notes. Exact rational values are authoritative; decimal columns are
// annotations only.
struct Report {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, std::string>> summary;
  std::vector<std::string> notes;
};

std::string cell_str(const Cell& cell);

void render(const Report& report, Format format, std::optional<int> decimals, std::ostream& out);

}  // namespace hsbd

#endif
