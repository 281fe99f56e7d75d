#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "upq/io.hpp"
#include "upq/sampler.hpp"

namespace {

using namespace upq;
using nlohmann::json;

TEST(FormatDouble, SeventeenDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(-2.5), "-2.5");
}

TEST(MatrixFile, BitwiseRoundTrip) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto metric = make_metric(1 + seed % 3, 1 + seed % 4);
    MatrixFile file{metric.p(), metric.q(), MatrixLayout::Full, sample_upq(metric, seed), {}};
    const MatrixFile back = parse_matrix_file(format_matrix_file(file));
    EXPECT_EQ(back.p, file.p);
    EXPECT_EQ(back.q, file.q);
    EXPECT_EQ(back.layout, MatrixLayout::Full);
    ASSERT_EQ(back.matrix.rows(), file.matrix.rows());
    for (Eigen::Index i = 0; i < file.matrix.size(); ++i) {
      EXPECT_EQ(back.matrix.data()[i], file.matrix.data()[i]);
    }
  }
}

TEST(MatrixFile, SpecialValuesRoundTrip) {
  ComplexMatrix m(1, 2);
  m << Complex(std::numeric_limits<double>::min(), -0.0),
      Complex(std::numeric_limits<double>::max(), 5e-324);
  MatrixFile file{1, 2, MatrixLayout::OffDiagonal, m, {}};
  const MatrixFile back = parse_matrix_file(format_matrix_file(file));
  EXPECT_EQ(back.layout, MatrixLayout::OffDiagonal);
  EXPECT_EQ(back.matrix, m);
  EXPECT_TRUE(std::signbit(back.matrix(0, 0).imag()));
}

TEST(MatrixFile, ExtraFieldsPreserved) {
  MatrixFile file{1, 1, MatrixLayout::Full, ComplexMatrix::Identity(2, 2), {}};
  file.extra["note"] = {{"a", 1}};
  const MatrixFile back = parse_matrix_file(format_matrix_file(file));
  EXPECT_EQ(back.extra.at("note").at("a"), 1);
  EXPECT_TRUE(json::accept(format_matrix_file(back)));
}

TEST(MatrixFile, MinimalDocument) {
  const MatrixFile f = parse_matrix_file(
      R"({"format":"upq-matrix/1","p":1,"q":1,"entries":[[1.25,0],[0.75,0],[0.75,0],[1.25,0]]})");
  EXPECT_EQ(f.layout, MatrixLayout::Full);
  EXPECT_EQ(f.matrix(0, 1), Complex(0.75));
}

TEST(MatrixFile, Rejections) {
  const char* bad[] = {
      "not json",
      "[]",
      R"({"p":1,"q":1,"entries":[[1,0],[0,0],[0,0],[1,0]]})",
      R"({"format":"upq-matrix/2","p":1,"q":1,"entries":[[1,0],[0,0],[0,0],[1,0]]})",
      R"({"format":"upq-matrix/1","p":1,"q":1,"entries":[[1,0],[0,0],[0,0]]})",
      R"({"format":"upq-matrix/1","p":1,"q":1,"entries":[[1,0],[0,0],[0,0],[1]]})",
      R"({"format":"upq-matrix/1","p":1,"q":1,"entries":[[1,0],[0,0],[0,0],["x",0]]})",
      R"({"format":"upq-matrix/1","p":-1,"q":2,"entries":[[1,0]]})",
      R"({"format":"upq-matrix/1","p":1,"q":1,"layout":"diag","entries":[[1,0],[0,0],[0,0],[1,0]]})",
      R"({"format":"upq-matrix/1","p":1,"q":1,"rows":3,"cols":3,"entries":[]})",
      R"({"format":"upq-matrix/1","p":1,"q":1,"entries":[[1e999,0],[0,0],[0,0],[1,0]]})",
  };
  for (const char* text : bad) EXPECT_THROW(parse_matrix_file(text), InputError) << text;
}

TEST(Digest, Fnv1a) {
  EXPECT_EQ(fnv1a64_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a64_hex("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(fnv1a64_hex("foobar"), "85944171f73967e8");
}

TEST(Entries, RowMajor) {
  ComplexMatrix m(2, 2);
  m << 1, Complex(2, 3), 4, 5;
  const json e = matrix_entries_json(m);
  EXPECT_EQ(e[1][0], 2.0);
  EXPECT_EQ(e[1][1], 3.0);
  EXPECT_EQ(matrix_from_entries(e, 2, 2), m);
}

}  // namespace
