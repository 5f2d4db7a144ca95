#include "support.hpp"

#include "uinorm/errors.hpp"
#include "uinorm/matrix_io.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>

using namespace uinorm;
using testing::Gen;

namespace {

ErrorKind parse_error_kind(std::string_view text)
{
    try {
        parse_matrix(text);
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::BadParams;
}

} // namespace

TEST_CASE("parse a small matrix")
{
    const auto q = parse_matrix(R"({"rows": 2, "cols": 2, "data": [[1,0],[0,0],[0,0],[2,0.5]]})");
    CHECK(q == ComplexMatrix{{1.0, 0.0}, {0.0, Complex(2.0, 0.5)}});
    const auto rect = parse_matrix(R"({"rows": 1, "cols": 3, "data": [[1,0],[2,0],[3,-1]]})");
    CHECK(rect.cols() == 3);
    CHECK(rect(0, 2) == Complex(3.0, -1.0));
}

TEST_CASE("round trip is bit identical")
{
    Gen gen(61);
    for (int trial = 0; trial < 20; ++trial) {
        const auto q = gen.ginibre(gen.index(1, 5), gen.index(1, 5)) * Complex(gen.uniform(1e-8, 1e8));
        CHECK(parse_matrix(format_matrix(q)) == q);
    }
    ComplexMatrix tiny(1, 1);
    tiny(0, 0) = {std::numeric_limits<double>::denorm_min(), -0.1};
    CHECK(parse_matrix(format_matrix(tiny)) == tiny);
    CHECK(format_matrix(ComplexMatrix::identity(1)) == "{\"rows\":1,\"cols\":1,\"data\":[[1.0,0.0]]}\n");
}

TEST_CASE("malformed input is a ParseError")
{
    for (const char* text : {
             "",
             "not json",
             "[1, 2]",
             R"({"rows": 2, "cols": 2})",
             R"({"rows": 2, "cols": 2, "data": [[1,0],[0,0],[0,0]]})",
             R"({"rows": 0, "cols": 0, "data": []})",
             R"({"rows": -1, "cols": 1, "data": [[1,0]]})",
             R"({"rows": 1.5, "cols": 1, "data": [[1,0]]})",
             R"({"rows": 1, "cols": 1, "data": [[1]]})",
             R"({"rows": 1, "cols": 1, "data": [["1", 0]]})",
             R"({"rows": 1, "cols": 1, "data": [1, 0]})",
             R"({"rows": 1, "cols": 1, "data": [[1e999, 0]]})",
         }) {
        CAPTURE(text);
        CHECK(parse_error_kind(text) == ErrorKind::ParseError);
    }
}

TEST_CASE("Kraus files")
{
    const auto kraus = parse_kraus(R"({"kraus": [{"rows": 1, "cols": 1, "data": [[0.6,0]]},
                                                  {"rows": 1, "cols": 1, "data": [[0,0.8]]}]})");
    REQUIRE(kraus.size() == 2);
    CHECK(kraus[1](0, 0) == Complex(0.0, 0.8));
    CHECK(parse_kraus(format_kraus(kraus)) == kraus);
    CHECK_THROWS_AS(parse_kraus(R"({"kraus": []})"), Error);
    CHECK_THROWS_AS(parse_kraus(R"({"ops": []})"), Error);
}

TEST_CASE("files on disk")
{
    const auto path = std::filesystem::temp_directory_path() / "uinorm_test_matrix_io.json";
    Gen gen(62);
    const auto q = gen.ginibre(3, 2);
    write_matrix_file(path, q);
    CHECK(read_matrix_file(path) == q);
    std::filesystem::remove(path);
    try {
        read_matrix_file(path);
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParseError);
    }
}
