#include "divsum/records.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "divsum/error.hpp"
#include "divsum/matrix_io.hpp"

namespace divsum {

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return format_double(std::get<double>(c));
}

}  // namespace

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw Error(ErrorCode::invalid_input, "record has the wrong number of fields");
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (const auto* v = std::get_if<double>(&row[i]); v && std::isnan(*v))
      throw Error(ErrorCode::invalid_input, "NaN in column " + columns_[i]);
  }
  rows_.push_back(std::move(row));
}

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i] == name) return i;
  throw Error(ErrorCode::invalid_input, "no column " + name);
}

double Table::number(std::size_t row, const std::string& name) const {
  const Cell& c = rows_.at(row).at(column(name));
  if (const auto* v = std::get_if<double>(&c)) return *v;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  throw Error(ErrorCode::invalid_input, "column " + name + " is not numeric");
}

std::string Table::text(std::size_t row, const std::string& name) const {
  return cell_text(rows_.at(row).at(column(name)));
}

void Table::write_csv(std::ostream& os) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
  os << '\n';
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << cell_text(r[i]);
    os << '\n';
  }
}

void Table::write_json(std::ostream& os) const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows_) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const Cell& c = r[i];
      if (const auto* s = std::get_if<std::string>(&c)) obj[columns_[i]] = *s;
      else if (const auto* n = std::get_if<std::int64_t>(&c)) obj[columns_[i]] = *n;
      else if (double v = std::get<double>(c); std::isinf(v)) obj[columns_[i]] = v > 0 ? "inf" : "-inf";
      else obj[columns_[i]] = v;
    }
    arr.push_back(std::move(obj));
  }
  os << arr.dump(1) << '\n';
}

void Table::write(const std::string& path, const std::string& format) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::invalid_input, "cannot open " + path);
  if (format == "csv") write_csv(f);
  else if (format == "json") write_json(f);
  else throw Error(ErrorCode::invalid_input, "unknown format " + format);
}

}  // namespace divsum
