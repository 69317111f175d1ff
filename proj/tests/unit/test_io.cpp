#include <doctest.h>

#include <clocale>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "../support/oracles.hpp"
#include "lpball/csv.hpp"
#include "lpball/errors.hpp"
#include "lpball/matrix_io.hpp"
#include "lpball/random.hpp"

using namespace lpball;

TEST_SUITE("io") {

TEST_CASE("doubles round-trip through text") {
    for (double v : {0.0, -0.0, 1.0, 0.1, 1e-300, 4.9e-324, 1.7976931348623157e308, -2.5e-8}) {
        CHECK(parse_double(format_double(v)) == v);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(INFINITY) == "inf");
    CHECK(std::isnan(parse_double("nan")));
    CHECK(parse_double("-inf") == -INFINITY);
    CHECK(parse_double("+2") == 2.0);
    CHECK_THROWS_AS(parse_double("1,5"), InvalidInput);
    CHECK_THROWS_AS(parse_double(""), InvalidInput);
    CHECK_THROWS_AS(parse_double("2x"), InvalidInput);
}

TEST_CASE("csv quoting") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_escape("two\nlines") == "\"two\nlines\"");

    std::ostringstream out;
    CsvWriter csv(out);
    csv.header({"a", "b", "c", "d"});
    csv.field(1).field(0.25).field("x,y").flag(true);
    csv.end_row();
    CHECK(out.str() == "a,b,c,d\n1,0.25,\"x,y\",1\n");
}

TEST_CASE("matrix text format") {
    Matrix m(2, 3);
    m << 1.0, -2.5, 1e-20, 0.1, 3.0, 7.0;
    std::stringstream ss;
    write_matrix(ss, m);
    CHECK(ss.str().substr(0, 4) == "2 3\n");
    CHECK(read_matrix(ss) == m);

    std::stringstream short_data("2 2\n1 2 3\n");
    CHECK_THROWS_AS(read_matrix(short_data), InvalidInput);
    std::stringstream extra("1 1\n1 2\n");
    CHECK_THROWS_AS(read_matrix(extra), InvalidInput);
    std::stringstream no_header("x y\n");
    CHECK_THROWS_AS(read_matrix(no_header), InvalidInput);
}

TEST_CASE("matrix files") {
    const auto dir = std::filesystem::temp_directory_path() / "lpball_io_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "m.txt").string();
    Matrix m(2, 2);
    m << 1, 2, 3, 4;
    write_matrix_file(path, m);
    CHECK(read_matrix_file(path) == m);
    CHECK(read_vector_file(path) == Vector{{1.0, 2.0, 3.0, 4.0}});
    CHECK_THROWS_AS(read_matrix_file((dir / "missing.txt").string()), IoError);
    CHECK_THROWS_AS(write_matrix_file((dir / "no/such/dir.txt").string(), m), IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("formatting ignores the C locale") {
    const char* previous = std::setlocale(LC_NUMERIC, nullptr);
    const std::string saved = previous ? previous : "C";
    if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") || std::setlocale(LC_NUMERIC, "fr_FR.UTF-8")) {
        CHECK(format_double(0.5) == "0.5");
        CHECK(parse_double("0.5") == 0.5);
    }
    std::setlocale(LC_NUMERIC, saved.c_str());
}

TEST_CASE("rng streams") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i)
        REQUIRE(a.normal() == b.normal());
    CHECK(stream_seed(1, 10, 8.0, 0.4, 0) != stream_seed(1, 10, 8.0, 0.4, 1));
    CHECK(stream_seed(1, 10, 8.0, 0.4, 0) != stream_seed(1, 11, 8.0, 0.4, 0));
    CHECK(stream_seed(1, 10, 8.0, 0.4, 0) == stream_seed(1, 10, 8.0, 0.4, 0));
    CHECK(mix64(0) != mix64(1));

    Rng r(7);
    double sum = 0.0, sum_sq = 0.0;
    const int draws = 200000;
    for (int i = 0; i < draws; ++i) {
        const double z = r.normal();
        sum += z;
        sum_sq += z * z;
    }
    CHECK(std::abs(sum / draws) < 0.01);
    CHECK(std::abs(sum_sq / draws - 1.0) < 0.02);
    for (int i = 0; i < 1000; ++i) {
        const double u = r.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        REQUIRE(r.below(7) < 7);
    }
}

TEST_CASE("generated instances lie outside the ball") {
    for (std::uint64_t t = 0; t < 50; ++t) {
        Rng a(stream_seed(3, 10, 8.0, 0.4, t)), b(stream_seed(3, 10, 8.0, 0.4, t));
        const Vector y = generate_instance(10, 8.0, 0.4, a);
        REQUIRE(oracles::sum_pow(y, 0.4) > 8.0);
        REQUIRE(y == generate_instance(10, 8.0, 0.4, b));
    }
    Rng r(1);
    CHECK_THROWS_AS(generate_instance(0, 1.0, 0.5, r), InvalidInput);
    CHECK_THROWS_AS(generate_instance(3, -1.0, 0.5, r), InvalidInput);
}

}
