#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "divsum/linalg.hpp"

namespace divsum {

// JSON form: {"d": int, "re": [[...]], "im": [[...]]}; "im" may be omitted.
CMatrix matrix_from_json_text(const std::string& text);
std::string matrix_to_json_text(const CMatrix& a);
CMatrix read_matrix_json(const std::string& path);

// A JSON list of matrix objects.
std::vector<CMatrix> read_matrix_list_json(const std::string& path);

// A JSON list of [re, im] pairs (or plain numbers).
std::vector<Complex> read_complex_list_json(const std::string& path);

// CSV form: d*d rows "i,j,re,im", 0-based, row-major; no header on write.
void write_matrix_csv(std::ostream& os, const CMatrix& a);
CMatrix read_matrix_csv(std::istream& is);

// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace divsum
