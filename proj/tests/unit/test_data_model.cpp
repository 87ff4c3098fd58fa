#include "duo/data_model.hpp"
#include "duo/error.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace duo;
namespace fs = std::filesystem;

namespace {

fs::path write_tmp(const std::string& name, const std::string& content) {
  fs::path dir = fs::temp_directory_path() / "duo_data_model_test";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

}  // namespace

TEST_CASE("load_csv reads a 3x2 file in row order") {
  DataMatrix d = load_csv(write_tmp("a.csv", "1,2\n3,4\n5,6"), false);
  CHECK(d.n() == 3);
  CHECK(d.p() == 2);
  CHECK_FALSE(d.centered());
  CHECK(d.values()(0, 0) == 1);
  CHECK(d.values()(2, 1) == 6);
}

TEST_CASE("load_csv reports the cell that fails to parse") {
  auto p = write_tmp("bad.csv", "1,2\nabc,4\n");
  try {
    load_csv(p, false);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.row == 2);
    CHECK(e.col == 1);
  }
  CHECK_THROWS_AS(load_csv(write_tmp("inf.csv", "1,2\n3,inf\n"), false), ParseError);
  CHECK_THROWS_AS(load_csv(write_tmp("blank.csv", "1,2\n3,\n"), false), ParseError);
}

TEST_CASE("load_csv shape and io errors") {
  CHECK_THROWS_AS(load_csv(write_tmp("empty.csv", ""), false), ShapeError);
  CHECK_THROWS_AS(load_csv(write_tmp("hdr.csv", "a,b\n"), true), ShapeError);
  CHECK_THROWS_AS(load_csv(write_tmp("ragged.csv", "1,2\n3\n"), false), ShapeError);
  CHECK_THROWS_AS(load_csv(write_tmp("one.csv", "1,2\n"), false), ShapeError);
  CHECK_THROWS_AS(load_csv("/nonexistent/dir/x.csv", false), IoError);
}

TEST_CASE("load_csv handles header, CRLF, BOM, signs and exponents") {
  auto d = load_csv(write_tmp("h.csv", "\xEF\xBB\xBFx,y\r\n+1.5, -2e-3\r\n3,4\r\n\r\n"), true);
  CHECK(d.n() == 2);
  CHECK(d.values()(0, 0) == 1.5);
  CHECK(d.values()(0, 1) == -2e-3);
}

TEST_CASE("csv round trip is exact") {
  Eigen::MatrixXd v = test::gaussian(20, 7, 1);
  v(0, 0) = 1e-300;
  v(1, 1) = -1.2345678901234567e250;
  v(2, 2) = 0.1;
  auto p = fs::temp_directory_path() / "duo_data_model_test" / "rt.csv";
  save_csv(p, v, {"a", "b", "c", "d", "e", "f", "g"});
  DataMatrix back = load_csv(p, true);
  CHECK(back.values() == v);
}

TEST_CASE("format_double uses 17 significant digits and a dot") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(-1.5e-7) == "-1.4999999999999999e-07");
}

TEST_CASE("center_columns examples") {
  Eigen::MatrixXd v(3, 2);
  v << 1, 5, 2, 5, 3, 5;
  DataMatrix c = center_columns(DataMatrix(v));
  CHECK(c.centered());
  CHECK(c.values()(0, 0) == doctest::Approx(-1.0));
  CHECK(c.values()(1, 0) == doctest::Approx(0.0));
  CHECK(c.values()(2, 0) == doctest::Approx(1.0));
  CHECK(c.values().col(1).isZero(0.0));
}

TEST_CASE("center_columns is idempotent") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Eigen::MatrixXd v = test::gaussian(10 + static_cast<Index>(seed % 7), 4, seed, 3.0);
    v.col(0).array() += 1000.0;
    DataMatrix once = center_columns(DataMatrix(v));
    DataMatrix twice = center_columns(once);
    CHECK((once.values() - twice.values()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(is_centered(once.values()));
  }
}

TEST_CASE("DataMatrix invariants") {
  CHECK_THROWS_AS(DataMatrix(Eigen::MatrixXd::Zero(1, 3)), ShapeError);
  CHECK_THROWS_AS(DataMatrix(Eigen::MatrixXd::Zero(3, 0)), ShapeError);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(3, 2);
  bad(1, 1) = std::nan("");
  CHECK_THROWS_AS(DataMatrix{bad}, DomainError);
  Eigen::MatrixXd off = Eigen::MatrixXd::Ones(3, 2);
  off(0, 0) = 2;
  CHECK_THROWS_AS(DataMatrix(off, "", true), DomainError);
}

TEST_CASE("LabeledPartition invariants") {
  CHECK_NOTHROW(LabeledPartition({0, 1, 1, 2}, 3));
  CHECK_THROWS(LabeledPartition({0, 2, 2}, 3));
  CHECK_THROWS(LabeledPartition({0, 3}, 3));
  auto p = LabeledPartition::from_labels({7, 7, -1, 3, -1});
  CHECK(p.k() == 3);
  CHECK(p.assignments() == std::vector<int>{0, 0, 1, 2, 1});
}

TEST_CASE("label files round trip") {
  auto p = fs::temp_directory_path() / "duo_data_model_test" / "labels.csv";
  save_labels(p, {3, 1, 4, 1, 5});
  CHECK(load_labels(p) == std::vector<int>{3, 1, 4, 1, 5});
}
