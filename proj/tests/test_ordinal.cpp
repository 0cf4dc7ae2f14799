#include "chipfire/ordinal.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace chipfire;

TEST_CASE("cnf successor and limits") {
    // w*2+3 -> w*2+4
    Ordinal o = Ordinal::omega_power(1, 2);
    o = Ordinal::parse("w^1*2+3");
    CHECK(o.successor().str() == "w^1*2+4");

    // next_limit(1) of w*3+5 -> w*4
    CHECK(Ordinal::parse("w^1*3+5").next_limit(1).str() == "w^1*4");

    // next_limit(2) of w*4+1 -> w^2
    CHECK(Ordinal::parse("w^1*4+1").next_limit(2).str() == "w^2");

    CHECK(Ordinal().successor().str() == "1");
    CHECK(Ordinal::finite(3).next_limit(1).str() == "w^1");
    CHECK(Ordinal::parse("w^2").next_limit(1).str() == "w^2+w^1");
    CHECK(Ordinal::parse("w^1").next_limit(1).str() == "w^1*2");
    CHECK_THROWS_AS(Ordinal().next_limit(0), std::invalid_argument);

    CHECK(ordinal_advance(Ordinal::finite(2), OrdinalSuccessor{}).str() == "3");
    CHECK(ordinal_advance(Ordinal::finite(2), OrdinalNextLimit{2}).str() == "w^2");
}

TEST_CASE("cnf ordering") {
    Ordinal zero;
    Ordinal three = Ordinal::finite(3);
    Ordinal w = Ordinal::parse("w^1");
    Ordinal w_plus = Ordinal::parse("w^1+1");
    Ordinal w2 = Ordinal::parse("w^1*2");
    Ordinal ww = Ordinal::parse("w^2");
    CHECK(zero < three);
    CHECK(three < w);
    CHECK(w < w_plus);
    CHECK(w_plus < w2);
    CHECK(w2 < ww);
    CHECK(ww < Ordinal::parse("w^2+w^1*4+17"));
    CHECK(Ordinal::parse("w^2+w^1*4+17") < Ordinal::parse("w^3"));
    CHECK(w == Ordinal::omega_power(1));
}

TEST_CASE("ordinal text round-trip") {
    for (const char* s : {"0", "1", "17", "w^1", "w^1*2+3", "w^2", "w^2+w^1*4+17",
                          "w^3*2+w^1+5"}) {
        CHECK(Ordinal::parse(s).str() == s);
    }
    CHECK_THROWS(Ordinal::parse("w"));
    CHECK_THROWS(Ordinal::parse("w^1+w^2")); // ascending terms
    CHECK_THROWS(Ordinal::parse("3+4"));
    CHECK_THROWS(Ordinal::parse(""));
}
