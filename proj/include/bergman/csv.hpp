#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace bergman {

// 17 significant digits, enough to round-trip any double.
std::string fmt17(double x);
std::string csv_escape(const std::string& cell);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add_row(std::vector<std::string> cells);
  std::string str() const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Writes via a temporary file in the same directory and renames over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace bergman
