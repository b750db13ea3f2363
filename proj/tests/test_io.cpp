#include <catch2/catch.hpp>

#include <sstream>

#include "sparsecond/io.hpp"

using namespace sparsecond;

TEST_CASE("pattern files parse with comments and blanks") {
    std::istringstream is(
        "# tridiagonal-ish example\n"
        "pattern 3\n"
        "1 1\n"
        "2 2   # diagonal\n"
        "\n"
        "3 3\n"
        "2 1\n");
    const PatternPtr p = read_pattern(is);
    REQUIRE(p->n() == 3);
    REQUIRE(p->size() == 4);
    REQUIRE(p->contains(1, 0));
    REQUIRE(p->full_structural_rank());
}

TEST_CASE("pattern file errors carry line numbers") {
    std::istringstream bad_range("pattern 2\n1 1\n3 1\n");
    try {
        read_pattern(bad_range);
        FAIL("expected file_parse_error");
    } catch (const file_parse_error& e) {
        REQUIRE(e.line() == 3);
    }
    std::istringstream dup("pattern 2\n1 1\n1 1\n");
    REQUIRE_THROWS_AS(read_pattern(dup), file_parse_error);
    std::istringstream header("matrix 2\n");
    REQUIRE_THROWS_AS(read_pattern(header), file_parse_error);
}

TEST_CASE("matrix files round-trip bit for bit") {
    const PatternPtr p = make_pattern(PatternKind::lower_triangular, 5);
    const Matrix m = sample_matrix(p, SeedSpec{7, 0});
    std::ostringstream os;
    write_matrix(os, m);
    std::istringstream is(os.str());
    const Matrix back = read_matrix(is);
    REQUIRE(back.n() == m.n());
    REQUIRE(back.data() == m.data());
    REQUIRE(back.pattern().support() == m.pattern().support());
}

TEST_CASE("matrix files accept scientific notation and zero entries") {
    std::istringstream is(
        "matrix 2\n"
        "1 1 2.5e-3\n"
        "1 2 0\n"
        "2 2 -1E2\n");
    const Matrix m = read_matrix(is);
    REQUIRE(m(0, 0) == 2.5e-3);
    REQUIRE(m(0, 1) == 0.0);
    REQUIRE(m(1, 1) == -100.0);
    REQUIRE(m.pattern().contains(0, 1));   // listed zero stays in the pattern
    REQUIRE_FALSE(m.pattern().contains(1, 0));
}

TEST_CASE("vector files parse and default to zero") {
    std::istringstream is("vector 3\n2 4.5\n");
    const std::vector<double> v = read_vector(is);
    REQUIRE(v == std::vector<double>{0.0, 4.5, 0.0});
    std::istringstream bad("vector 2\n5 1.0\n");
    REQUIRE_THROWS_AS(read_vector(bad), file_parse_error);
}

TEST_CASE("pattern spec parsing") {
    REQUIRE(parse_pattern_spec("dense", 3)->size() == 9);
    REQUIRE(parse_pattern_spec("lower", 4)->size() == 10);
    REQUIRE(parse_pattern_spec("band:2", 5)->size() == 5 + 2 * (4 + 3));
    REQUIRE_THROWS_AS(parse_pattern_spec("banana", 3), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_pattern_spec("band:x", 3), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_pattern_spec("dense", 0), std::invalid_argument);
}

TEST_CASE("g17 formatting round-trips doubles") {
    for (double v : {0.1, 1.0 / 3.0, 2.5e-3, -1e300, 3.141592653589793}) {
        REQUIRE(std::stod(fmt_g17(v)) == v);
    }
}
