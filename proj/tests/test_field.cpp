#include <catch2/catch_amalgamated.hpp>

#include "hhsmash/field.hpp"

using namespace hhsmash;

TEST_CASE("field spec accepts 0 and primes only", "[field]") {
    CHECK(FieldSpec::rationals().characteristic == 0);
    CHECK(FieldSpec::prime(2).characteristic == 2);
    CHECK(FieldSpec::prime(7919).characteristic == 7919);
    CHECK_THROWS_AS(FieldSpec::prime(1), StructuralError);
    CHECK_THROWS_AS(FieldSpec::prime(4), StructuralError);
    CHECK_THROWS_AS(FieldSpec::prime(91), StructuralError); // 7 * 13
    CHECK(FieldSpec::of_characteristic(0) == FieldSpec::rationals());
}

TEST_CASE("F_p arithmetic", "[field]") {
    FpField f(7);
    CHECK(f.add(3, 5) == 1);
    CHECK(f.sub(2, 5) == 4);
    CHECK(f.mul(3, 5) == 1);
    CHECK(f.neg(0) == 0);
    CHECK(f.neg(2) == 5);
    for (std::uint32_t a = 1; a < 7; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK(f.from_int(-1) == 6);
    CHECK(f.from_int(21) == 0);
    CHECK_THROWS_AS(f.inv(0), StructuralError);
}

TEST_CASE("F_2 and F_3 edge arithmetic", "[field]") {
    FpField f2(2);
    CHECK(f2.add(1, 1) == 0);
    CHECK(f2.neg(1) == 1);
    FpField f3(3);
    CHECK(f3.inv(2) == 2);
    CHECK(f3.mul(2, 2) == 1);
}

TEST_CASE("rational arithmetic is exact", "[field]") {
    RatField q;
    auto third = q.div(q.one(), q.from_int(3));
    auto sixth = q.div(q.one(), q.from_int(6));
    CHECK(q.add(third, sixth) == q.div(q.one(), q.from_int(2)));
    CHECK(q.to_string(q.sub(q.zero(), third)) == "-1/3");
    CHECK(q.characteristic() == 0);
}

TEST_CASE("field element parsing", "[field]") {
    FpField f5(5);
    CHECK(parse_field_element(f5, "7") == 2);
    CHECK(parse_field_element(f5, "-1") == 4);
    RatField q;
    CHECK(parse_field_element(q, "3/6") == q.div(q.one(), q.from_int(2)));
    CHECK_THROWS_AS(parse_field_element(q, "1/0"), StructuralError);
    CHECK_THROWS_AS(parse_field_element(q, "x"), StructuralError);
    CHECK_THROWS_AS(parse_field_element(q, "1/2/3"), StructuralError);
}
