#include "bds/errors.hpp"
#include "bds/scalar.hpp"
#include "bds/sequence.hpp"

#include <doctest.h>

using namespace bds;

TEST_CASE("rational parsing covers integers, fractions and exact decimals") {
    CHECK(parse_rational("5") == Scalar(5));
    CHECK(parse_rational("-7") == Scalar(-7));
    CHECK(parse_rational("3/4") == Scalar(3, 4));
    CHECK(parse_rational("-3/6") == Scalar(-1, 2));
    CHECK(parse_rational("0.5") == Scalar(1, 2));
    CHECK(parse_rational("-1.25") == Scalar(-5, 4));
    CHECK(parse_rational("2.10") == Scalar(21, 10));
    CHECK(parse_rational("0.25") == Scalar(1, 4)); // leading zeros are decimal, never octal
    CHECK(parse_rational("007") == Scalar(7));
    CHECK_THROWS_AS(parse_rational("1/0"), SpecParseError);
    CHECK_THROWS_AS(parse_rational("1e-3"), SpecParseError);
    CHECK_THROWS_AS(parse_rational(""), SpecParseError);
}

TEST_CASE("rational formatting is canonical p/q") {
    CHECK(to_string(Scalar(5)) == "5");
    CHECK(to_string(Scalar(-5)) == "-5");
    CHECK(to_string(Scalar(2, 4)) == "1/2");
    CHECK(to_string(Scalar(-2, 4)) == "-1/2");
    CHECK(to_string(Scalar(0)) == "0");
}

TEST_CASE("rational_pow by squaring") {
    CHECK(rational_pow(Scalar(1, 2), 0) == 1);
    CHECK(rational_pow(Scalar(1, 2), 10) == Scalar(1, 1024));
    CHECK(rational_pow(Scalar(-2), 3) == -8);
}

TEST_CASE("sequence evaluation per family") {
    CHECK(seq_eval(SequenceSpec::constant(1), 5) == 1);
    CHECK(seq_eval(SequenceSpec::geometric(1, 2), 3) == 8);

    const auto table = SequenceSpec::table({Scalar(7)}, SequenceSpec::constant(1));
    CHECK(seq_eval(table, 0) == 7);
    CHECK(seq_eval(table, 1) == 1);

    const auto poly = SequenceSpec::polynomial({Scalar(1), Scalar(0), Scalar(2)}); // 1 + 2k^2
    CHECK(seq_eval(poly, 0) == 1);
    CHECK(seq_eval(poly, 3) == 19);

    // Tail index shift: prefix of length 2, tail geometric at k - 2.
    const auto shifted =
        SequenceSpec::table({Scalar(9), Scalar(8)}, SequenceSpec::geometric(1, 2));
    CHECK(seq_eval(shifted, 2) == 1);
    CHECK(seq_eval(shifted, 5) == 8);
}

TEST_CASE("negative sequence index is a domain error") {
    CHECK_THROWS_AS(seq_eval(SequenceSpec::constant(1), -1), DomainError);
}

TEST_CASE("eager positivity checks") {
    CHECK_THROWS_AS(SequenceSpec::constant(0).require_positive(4, "b"), InvalidChainError);
    CHECK_THROWS_AS(SequenceSpec::geometric(1, -2).require_positive(4, "b"), InvalidChainError);
    CHECK_THROWS_AS(SequenceSpec::polynomial({Scalar(1), Scalar(-1)}).require_positive(4, "m"),
                    InvalidChainError);
    CHECK_NOTHROW(SequenceSpec::polynomial({Scalar(1), Scalar(1)}).require_positive(64, "m"));
    CHECK_NOTHROW(
        SequenceSpec::table({Scalar(7)}, SequenceSpec::constant(1)).require_positive(3, "b"));
}
