#include "doctest.h"

#include "defalg/rational.hpp"

using namespace defalg;

TEST_CASE("rationals are kept in lowest terms with positive denominator") {
    Rat a = rat_frac(6, -4);
    CHECK(a.get_num() == -3);
    CHECK(a.get_den() == 2);
    CHECK(rat_frac(0, 7) == 0);
    CHECK(rat_frac(2, 4) == rat_frac(1, 2));
}

TEST_CASE("rational arithmetic is exact") {
    Rat third = rat_frac(1, 3);
    CHECK(third + third + third == 1);
    Rat x = rat_frac(1, 7);
    Rat y = x;
    for (int i = 0; i < 20; ++i) y = y * x;
    for (int i = 0; i < 20; ++i) y = y / x;
    CHECK(y == x);
}

TEST_CASE("rational parse/print round-trip") {
    for (const char* s : {"0", "1", "-1", "7/3", "-22/7", "100000000000000000001/3"}) {
        Rat r = rat_parse(s);
        CHECK(rat_str(r) == s);
        CHECK(rat_parse(rat_str(r)) == r);
    }
    CHECK(rat_parse("4/6") == rat_frac(2, 3)); // canonicalized on input
    CHECK(rat_str(rat_parse("4/6")) == "2/3");
}

TEST_CASE("rational parse rejects malformed input") {
    CHECK_THROWS_AS(rat_parse(""), Error);
    CHECK_THROWS_AS(rat_parse("1/0"), Error);
    CHECK_THROWS_AS(rat_parse("a"), Error);
    CHECK_THROWS_AS(rat_parse("1.5"), Error);
    CHECK_THROWS_AS(rat_frac(1, 0), Error);
}
