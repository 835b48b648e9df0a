#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace divsum {

using Cell = std::variant<std::string, std::int64_t, double>;

// Experiment output with a fixed column order. Infinite values are written as
// "inf"; NaN is rejected when a row is added.
class Table {
 public:
  explicit Table(std::vector<std::string> columns);
  void add(std::vector<Cell> row);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
  std::string text(std::size_t row, const std::string& name) const;

  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os) const;
  void write(const std::string& path, const std::string& format) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

}  // namespace divsum
