#include "upq/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace upq {
namespace {

std::string_view layout_name(MatrixLayout layout) {
  return layout == MatrixLayout::Full ? "full" : "offdiag";
}

int read_dimension(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer()) {
    throw InputError(std::string("matrix file: missing integer field '") + key + "'");
  }
  const auto v = doc[key].get<long long>();
  if (v < 0 || v > 4096) throw InputError(std::string("matrix file: bad value for '") + key + "'");
  return static_cast<int>(v);
}

}  // namespace

std::string format_double(double value) {
  if (!std::isfinite(value)) throw InputError("matrix file: cannot write non-finite value");
  // "-0" would read back as the integer 0.
  if (value == 0.0 && std::signbit(value)) return "-0.0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

nlohmann::json matrix_entries_json(const ComplexMatrix& m) {
  auto out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back({m(i, j).real(), m(i, j).imag()});
  }
  return out;
}

ComplexMatrix matrix_from_entries(const nlohmann::json& entries, Eigen::Index rows,
                                  Eigen::Index cols) {
  if (!entries.is_array()) throw InputError("matrix entries must be an array");
  if (static_cast<Eigen::Index>(entries.size()) != rows * cols) {
    throw InputError("matrix file: expected " + std::to_string(rows * cols) + " entries, got " +
                     std::to_string(entries.size()));
  }
  ComplexMatrix m(rows, cols);
  std::size_t idx = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j, ++idx) {
      const auto& e = entries[idx];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw InputError("matrix file: entry " + std::to_string(idx) + " is not an [re, im] pair");
      }
      const double re = e[0].get<double>();
      const double im = e[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im)) {
        throw InputError("matrix file: entry " + std::to_string(idx) + " is not finite");
      }
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

MatrixFile matrix_file_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("matrix file: top level must be an object");
  if (!doc.contains("format") || doc["format"] != kMatrixFormat) {
    throw InputError("matrix file: unsupported or missing format (expected " +
                     std::string(kMatrixFormat) + ")");
  }
  MatrixFile file;
  file.p = read_dimension(doc, "p");
  file.q = read_dimension(doc, "q");
  if (file.p + file.q == 0) throw InputError("matrix file: p + q must be positive");

  const std::string layout = doc.value("layout", std::string("full"));
  if (layout == "full") {
    file.layout = MatrixLayout::Full;
  } else if (layout == "offdiag") {
    file.layout = MatrixLayout::OffDiagonal;
  } else {
    throw InputError("matrix file: unknown layout '" + layout + "'");
  }
  const int rows = file.layout == MatrixLayout::Full ? file.p + file.q : file.p;
  const int cols = file.layout == MatrixLayout::Full ? file.p + file.q : file.q;
  if ((doc.contains("rows") && doc["rows"] != rows) ||
      (doc.contains("cols") && doc["cols"] != cols)) {
    throw InputError("matrix file: rows/cols inconsistent with p, q and layout");
  }
  if (!doc.contains("entries")) throw InputError("matrix file: missing 'entries'");
  file.matrix = matrix_from_entries(doc["entries"], rows, cols);

  for (const auto& [key, value] : doc.items()) {
    if (key != "format" && key != "p" && key != "q" && key != "layout" && key != "rows" &&
        key != "cols" && key != "entries") {
      file.extra[key] = value;
    }
  }
  return file;
}

MatrixFile parse_matrix_file(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("matrix file: invalid JSON: ") + e.what());
  }
  return matrix_file_from_json(doc);
}

std::string format_matrix_file(const MatrixFile& file) {
  const auto rows = file.matrix.rows();
  const auto cols = file.matrix.cols();
  std::ostringstream out;
  out << "{\n";
  out << "  \"format\": \"" << kMatrixFormat << "\",\n";
  out << "  \"p\": " << file.p << ",\n";
  out << "  \"q\": " << file.q << ",\n";
  out << "  \"layout\": \"" << layout_name(file.layout) << "\",\n";
  out << "  \"rows\": " << rows << ",\n";
  out << "  \"cols\": " << cols << ",\n";
  out << "  \"entries\": [";
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const Complex v = file.matrix(i, j);
      out << (i == 0 && j == 0 ? "\n" : ",\n") << "    [" << format_double(v.real()) << ", "
          << format_double(v.imag()) << "]";
    }
  }
  out << (rows * cols > 0 ? "\n  ]" : "]");
  for (const auto& [key, value] : file.extra.items()) {
    out << ",\n  " << nlohmann::json(key).dump() << ": " << value.dump();
  }
  out << "\n}\n";
  return out.str();
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace upq
