#include "table.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tentlab::cli {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

void append_row(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out.push_back(',');
    out += cells[i];
  }
  out.push_back('\n');
}

}  // namespace

std::string format_csv(const TableFile& table) {
  std::string out;
  append_row(out, table.header);
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size())
      throw std::invalid_argument("row width " + std::to_string(row.size()) + " does not match header width " +
                                  std::to_string(table.header.size()));
    append_row(out, row);
  }
  return out;
}

void write_csv(const TableFile& table) {
  const std::string text = format_csv(table);
  std::ofstream out(table.path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + table.path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + table.path.string());
}

TableFile read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  TableFile table{path, {}, {}};
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first) {
      table.header = split(line);
      first = false;
      continue;
    }
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != table.header.size())
      throw std::invalid_argument(path.string() + ": ragged row '" + line + "'");
    table.rows.push_back(std::move(cells));
  }
  if (first) throw std::invalid_argument(path.string() + ": missing header");
  return table;
}

}  // namespace tentlab::cli
