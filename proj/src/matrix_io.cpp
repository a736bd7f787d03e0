#include "wnr/matrix_io.hpp"

#include <fstream>

#include "wnr/errors.hpp"

namespace wnr {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix &m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json rr = json::array();
    json ir = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ir.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

namespace {

void read_part(const json &part, const char *name, long rows, long cols,
               ComplexMatrix &out, bool imaginary) {
  if (!part.is_array() || static_cast<long>(part.size()) != rows)
    throw ParseError(std::string("field '") + name + "' must have " +
                     std::to_string(rows) + " rows");
  for (long i = 0; i < rows; ++i) {
    const json &row = part[i];
    if (!row.is_array() || static_cast<long>(row.size()) != cols)
      throw ParseError(std::string("row ") + std::to_string(i) + " of '" + name +
                       "' must have " + std::to_string(cols) + " entries");
    for (long j = 0; j < cols; ++j) {
      if (!row[j].is_number())
        throw ParseError(std::string("non-numeric entry in '") + name + "'");
      const double v = row[j].get<double>();
      if (imaginary)
        out(i, j).imag(v);
      else
        out(i, j).real(v);
    }
  }
}

} // namespace

ComplexMatrix matrix_from_json(const json &j) {
  if (!j.is_object())
    throw ParseError("matrix JSON must be an object");
  for (const char *key : {"rows", "cols", "re"})
    if (!j.contains(key))
      throw ParseError(std::string("matrix JSON missing field '") + key + "'");
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
    throw ParseError("rows and cols must be integers");
  const long rows = j["rows"].get<long>();
  const long cols = j["cols"].get<long>();
  if (rows < 1 || cols < 1)
    throw ParseError("rows and cols must be positive");
  ComplexMatrix m = ComplexMatrix::Zero(rows, cols);
  read_part(j["re"], "re", rows, cols, m, false);
  // A missing "im" means a real matrix.
  if (j.contains("im"))
    read_part(j["im"], "im", rows, cols, m, true);
  require_finite(m);
  return m;
}

ComplexMatrix operator_from_json(const json &j) {
  ComplexMatrix m = matrix_from_json(j);
  require_square(m);
  return m;
}

ComplexMatrix read_matrix_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception &e) {
    throw ParseError("invalid JSON in '" + path + "': " + e.what());
  }
  return matrix_from_json(j);
}

void write_matrix_file(const std::string &path, const ComplexMatrix &m) {
  std::ofstream out(path);
  if (!out)
    throw Error("cannot write '" + path + "'");
  out << matrix_to_json(m).dump(2) << '\n';
}

} // namespace wnr
