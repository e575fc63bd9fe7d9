#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace tentlab::cli {

/// A CSV table whose cells are already-serialized scalars.
struct TableFile {
  std::filesystem::path path;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// LF line endings, no quoting (cells never contain commas). Throws
/// std::invalid_argument when a row's width differs from the header.
void write_csv(const TableFile& table);
std::string format_csv(const TableFile& table);
TableFile read_csv(const std::filesystem::path& path);

}  // namespace tentlab::cli
