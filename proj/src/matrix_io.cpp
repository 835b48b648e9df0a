#include "divsum/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace divsum {

using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, e.what());
  }
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("re"))
    throw Error(ErrorCode::parse, "matrix JSON needs fields d and re");
  const auto d = j.at("d").get<long long>();
  if (d < 0) throw Error(ErrorCode::parse, "matrix JSON: negative d");
  CMatrix a = CMatrix::Zero(d, d);
  auto fill = [&](const char* key, bool imag) {
    const json& rows = j.at(key);
    if (!rows.is_array() || static_cast<long long>(rows.size()) != d)
      throw Error(ErrorCode::parse, std::string("matrix JSON: ") + key + " has wrong row count");
    for (long long r = 0; r < d; ++r) {
      const json& row = rows[r];
      if (!row.is_array() || static_cast<long long>(row.size()) != d)
        throw Error(ErrorCode::parse, std::string("matrix JSON: ") + key + " has wrong column count");
      for (long long c = 0; c < d; ++c) {
        const double v = row[c].get<double>();
        if (imag) a(r, c).imag(v); else a(r, c).real(v);
      }
    }
  };
  fill("re", false);
  if (j.contains("im")) fill("im", true);
  return a;
}

json matrix_to_json(const CMatrix& a) {
  json re = json::array(), im = json::array();
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    json rr = json::array(), ii = json::array();
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      rr.push_back(a(r, c).real());
      ii.push_back(a(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  return json{{"d", a.rows()}, {"re", re}, {"im", im}};
}

}  // namespace

CMatrix matrix_from_json_text(const std::string& text) { return matrix_from_json(parse_json(text)); }

std::string matrix_to_json_text(const CMatrix& a) { return matrix_to_json(a).dump(); }

CMatrix read_matrix_json(const std::string& path) { return matrix_from_json_text(slurp(path)); }

std::vector<CMatrix> read_matrix_list_json(const std::string& path) {
  json j = parse_json(slurp(path));
  if (!j.is_array()) throw Error(ErrorCode::parse, path + ": expected a JSON list of matrices");
  std::vector<CMatrix> out;
  for (const auto& item : j) out.push_back(matrix_from_json(item));
  return out;
}

std::vector<Complex> read_complex_list_json(const std::string& path) {
  json j = parse_json(slurp(path));
  if (!j.is_array()) throw Error(ErrorCode::parse, path + ": expected a JSON list of coefficients");
  std::vector<Complex> out;
  for (const auto& item : j) {
    if (item.is_number()) {
      out.emplace_back(item.get<double>(), 0.0);
    } else if (item.is_array() && item.size() == 2) {
      out.emplace_back(item[0].get<double>(), item[1].get<double>());
    } else {
      throw Error(ErrorCode::parse, path + ": coefficient must be a number or [re, im]");
    }
  }
  return out;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_matrix_csv(std::ostream& os, const CMatrix& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      os << i << ',' << j << ',' << format_double(a(i, j).real()) << ',' << format_double(a(i, j).imag()) << '\n';
}

CMatrix read_matrix_csv(std::istream& is) {
  struct Entry {
    long long i, j;
    double re, im;
  };
  std::vector<Entry> entries;
  std::string line;
  long long dmax = -1;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.rfind("i,j", 0) == 0) continue;  // tolerate a header row
    std::istringstream ls(line);
    Entry e{};
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(ls >> e.i >> c1 >> e.j >> c2 >> e.re >> c3 >> e.im) || c1 != ',' || c2 != ',' || c3 != ',')
      throw Error(ErrorCode::parse, "bad matrix CSV row: " + line);
    if (e.i < 0 || e.j < 0) throw Error(ErrorCode::parse, "negative index in matrix CSV");
    dmax = std::max({dmax, e.i, e.j});
    entries.push_back(e);
  }
  const long long d = dmax + 1;
  if (static_cast<long long>(entries.size()) != d * d)
    throw Error(ErrorCode::parse, "matrix CSV must have d*d rows");
  CMatrix a = CMatrix::Zero(d, d);
  for (const auto& e : entries) a(e.i, e.j) = Complex(e.re, e.im);
  return a;
}

}  // namespace divsum
