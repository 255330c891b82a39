#include "hsbd/report.hpp"

#include <algorithm>
#include <iomanip>

#include <json.hpp>

namespace hsbd {

std::string cell_str(const Cell& cell) {
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  if (const auto* z = std::get_if<Int>(&cell)) return z->get_str();
  if (const auto* q = std::get_if<Rational>(&cell)) return q->str();
  return std::get<bool>(cell) ? "true" : "false";
}

namespace {

bool is_rational(const Cell& c) { return std::holds_alternative<Rational>(c); }

std::string cell_decimal(const Cell& cell, int digits) {
  return std::get<Rational>(cell).decimal(digits);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

// Columns that hold a rational anywhere get a decimal twin.
std::vector<bool> decimal_columns(const Report& r) {
  std::vector<bool> flags(r.columns.size(), false);
  for (const auto& row : r.rows)
    for (std::size_t i = 0; i < row.size() && i < flags.size(); ++i)
      if (is_rational(row[i])) flags[i] = true;
  return flags;
}

void render_table(const Report& r, std::optional<int> decimals, std::ostream& out) {
  out << "command: " << r.command << "\n";
  if (!r.columns.empty()) {
    std::vector<std::string> header = r.columns;
    std::vector<bool> dec = decimal_columns(r);
    if (decimals)
      for (std::size_t i = 0; i < r.columns.size(); ++i)
        if (dec[i]) header.push_back(r.columns[i] + "_dec");
    std::vector<std::vector<std::string>> body;
    for (const auto& row : r.rows) {
      std::vector<std::string> cells;
      for (const auto& c : row) cells.push_back(cell_str(c));
      if (decimals)
        for (std::size_t i = 0; i < row.size(); ++i)
          if (dec[i]) cells.push_back(is_rational(row[i]) ? cell_decimal(row[i], *decimals) : "");
      body.push_back(std::move(cells));
    }
    std::vector<std::size_t> width(header.size(), 0);
    for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
    for (const auto& row : body)
      for (std::size_t i = 0; i < row.size() && i < width.size(); ++i)
        width[i] = std::max(width[i], row[i].size());
    auto emit_row = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i)
        out << (i ? "  " : "") << std::left << std::setw(static_cast<int>(width[i])) << cells[i];
      out << "\n";
    };
    emit_row(header);
    for (const auto& row : body) emit_row(row);
  }
  for (const auto& [key, value] : r.summary) out << key << ": " << value << "\n";
  for (const auto& note : r.notes) out << "note: " << note << "\n";
}

void render_csv(const Report& r, std::optional<int> decimals, std::ostream& out) {
  out << "# command: " << r.command << "\n";
  std::vector<bool> dec = decimal_columns(r);
  if (!r.columns.empty()) {
    std::string header;
    for (std::size_t i = 0; i < r.columns.size(); ++i)
      header += (i ? "," : "") + csv_escape(r.columns[i]);
    if (decimals)
      for (std::size_t i = 0; i < r.columns.size(); ++i)
        if (dec[i]) header += "," + csv_escape(r.columns[i] + "_dec");
    out << header << "\n";
    for (const auto& row : r.rows) {
      std::string line;
      for (std::size_t i = 0; i < row.size(); ++i)
        line += (i ? "," : "") + csv_escape(cell_str(row[i]));
      if (decimals)
        for (std::size_t i = 0; i < row.size(); ++i)
          if (dec[i])
            line += "," + (is_rational(row[i]) ? cell_decimal(row[i], *decimals) : std::string());
      out << line << "\n";
    }
  }
  for (const auto& [key, value] : r.summary) out << "# " << key << ": " << value << "\n";
  for (const auto& note : r.notes) out << "# note: " << note << "\n";
}

void render_jsonl(const Report& r, std::optional<int> decimals, std::ostream& out) {
  using nlohmann::json;
  out << json{{"command", r.command}}.dump() << "\n";
  std::vector<bool> dec = decimal_columns(r);
  for (const auto& row : r.rows) {
    json obj;
    for (std::size_t i = 0; i < row.size() && i < r.columns.size(); ++i) {
      const Cell& c = row[i];
      if (const auto* b = std::get_if<bool>(&c))
        obj[r.columns[i]] = *b;
      else if (const auto* v = std::get_if<long long>(&c))
        obj[r.columns[i]] = *v;
      else
        obj[r.columns[i]] = cell_str(c);
      if (decimals && dec[i] && is_rational(c))
        obj[r.columns[i] + "_dec"] = cell_decimal(c, *decimals);
    }
    out << obj.dump() << "\n";
  }
  if (!r.summary.empty() || !r.notes.empty()) {
    json obj;
    for (const auto& [key, value] : r.summary) obj["summary"][key] = value;
    if (!r.notes.empty()) obj["notes"] = r.notes;
    out << obj.dump() << "\n";
  }
}

}  // namespace

void render(const Report& report, Format format, std::optional<int> decimals, std::ostream& out) {
  switch (format) {
    case Format::Table:
      render_table(report, decimals, out);
      return;
    case Format::Csv:
      render_csv(report, decimals, out);
      return;
    case Format::Jsonl:
      render_jsonl(report, decimals, out);
      return;
  }
}

}  // namespace hsbd
