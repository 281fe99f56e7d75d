#pragma once

// MatrixFile: one complex matrix per JSON document.
//
//   {
//     "format": "upq-matrix/1",
//     "p": 1, "q": 1,
//     "layout": "full",              // or "offdiag" for a p x q Lie block
//     "rows": 2, "cols": 2,
//     "entries": [[re, im], ...]     // row-major, rows * cols pairs
//   }
//
// Numbers are written with 17 significant digits, so a written file reads
// back to a bitwise-identical matrix. Unknown top-level fields are preserved
// in `extra` and ignored by the library.

#include <string>
#include <string_view>

#include <json.hpp>

#include "upq/metric.hpp"

namespace upq {

inline constexpr std::string_view kMatrixFormat = "upq-matrix/1";

enum class MatrixLayout { Full, OffDiagonal };

struct MatrixFile {
  int p = 0;
  int q = 0;
  MatrixLayout layout = MatrixLayout::Full;
  ComplexMatrix matrix;
  nlohmann::json extra = nlohmann::json::object();

  SignatureMetric metric() const { return SignatureMetric(p, q); }
};

// Throws InputError on malformed documents, wrong counts or non-finite values.
MatrixFile parse_matrix_file(std::string_view text);
MatrixFile matrix_file_from_json(const nlohmann::json& doc);

std::string format_matrix_file(const MatrixFile& file);

// "%.17g": enough digits to read back the identical double.
std::string format_double(double value);

// [[re, im], ...] in row-major order.
nlohmann::json matrix_entries_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_entries(const nlohmann::json& entries, Eigen::Index rows,
                                  Eigen::Index cols);

// 64-bit FNV-1a, hex encoded; used as the input digest in reports.
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace upq
