#pragma once

// Matrix JSON: {"rows": n, "cols": n, "re": [[...]], "im": [[...]]}.

#include <string>

#include <json.hpp>

#include "wnr/linalg.hpp"

namespace wnr {

nlohmann::json matrix_to_json(const ComplexMatrix &m);

/// Parses the matrix object. Throws ParseError on malformed input and
/// NonFinite on NaN/Inf entries.
ComplexMatrix matrix_from_json(const nlohmann::json &j);

/// As matrix_from_json, then require_square.
ComplexMatrix operator_from_json(const nlohmann::json &j);

ComplexMatrix read_matrix_file(const std::string &path);
void write_matrix_file(const std::string &path, const ComplexMatrix &m);

} // namespace wnr
