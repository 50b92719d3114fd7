#include <doctest.h>

#include "diokex/polyring.hpp"
#include "test_support.hpp"

using namespace diokex;
using diokex::testing::random_point;
using diokex::testing::random_polynomial;

namespace {
const RingSpec kZ2 = integer_ring(2);

Polynomial parse2(const std::string& text) { return parse_polynomial(text, kZ2); }
}  // namespace

TEST_CASE("addition basics") {
    CHECK(parse2("x1 + 1") + parse2("x1 - 1") == parse2("2*x1"));
    CHECK(parse2("x1*x2^2") + parse2("3") == parse2("x1*x2^2 + 3"));
    CHECK(parse2("x1^2 - 4*x2") + Polynomial(kZ2) == parse2("x1^2 - 4*x2"));
}

TEST_CASE("multiplication basics") {
    CHECK(parse2("x1") * parse2("x2^2") == parse2("x1*x2^2"));
    CHECK(parse2("x2^2 - 1") * parse2("x2^6") == parse2("x2^8 - x2^6"));
    CHECK(parse2("x1^3 - x2^2 + 1") * parse2("1") == parse2("x1^3 - x2^2 + 1"));
}

TEST_CASE("powers expand the worked cube") {
    CHECK(pow(parse2("x1*x2^2 + 4"), 3) ==
          parse2("x1^3*x2^6 + 12*x1^2*x2^4 + 48*x1*x2^2 + 64"));
    CHECK(pow(parse2("x1^2 - x2"), 0) == parse2("1"));
    CHECK(pow(parse2("x1^2 - x2"), 1) == parse2("x1^2 - x2"));
}

TEST_CASE("evaluation at the worked point") {
    const std::vector<mpz_class> point{2, 3};
    CHECK(parse2("x1^3 - x2^2 + 1").eval(point) == 0);
    CHECK(parse2("x2^8 - x2^6 + 12*x1^2*x2^4 + 48*x1*x2^2 + 66").eval(point) == 10650);
    CHECK(parse2("x1*x2^2").eval(point) == 18);
    CHECK_THROWS_AS(parse2("x1").eval({1, 2, 3}), DimensionError);
}

TEST_CASE("parse and format canonical forms") {
    CHECK(format_polynomial(parse2("x1^3 - x2^2 + 1")) == "x1^3 - x2^2 + 1");
    CHECK(parse2("0").is_zero());
    CHECK(format_polynomial(Polynomial(kZ2)) == "0");
    CHECK(format_polynomial(parse2("x2*x1")) == "x1*x2");
    CHECK(format_polynomial(parse2("1*x1 + 0*x2")) == "x1");
    CHECK(format_polynomial(parse2("-x1 + 3")) == "-x1 + 3");
    // Same total degree: the higher index dominates the tie-break.
    CHECK(format_polynomial(parse2("12*x1^2*x2^4 + x2^6")) == "x2^6 + 12*x1^2*x2^4");
    const std::string golden = "x2^8 - x2^6 + 12*x1^2*x2^4 + 48*x1*x2^2 + 66";
    CHECK(format_polynomial(parse2(golden)) == golden);
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse2("x3 + 1"), ParseError);
    CHECK_THROWS_AS(parse2("x1 +"), ParseError);
    CHECK_THROWS_AS(parse2(""), ParseError);
    CHECK_THROWS_AS(parse2("x0"), ParseError);
    CHECK_THROWS_AS(parse2("3**x1"), ParseError);
    try {
        parse2("x1 + x9");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.position() == 6);
    }
}

TEST_CASE("scan_varcount infers the widest index") {
    CHECK(scan_varcount("x1^3 - x2^2 + 1") == 2);
    CHECK(scan_varcount("x4 + x11*x2") == 11);
    CHECK(scan_varcount("17") == 0);
}

TEST_CASE("dimension mismatches are rejected") {
    const Polynomial a = parse2("x1");
    const Polynomial b = parse_polynomial("x1", integer_ring(3));
    CHECK_THROWS_AS(a + b, DimensionError);
    CHECK_THROWS_AS(a * b, DimensionError);
}

TEST_CASE("ring axioms on random inputs") {
    Rng rng(2024);
    for (int i = 0; i < 60; ++i) {
        const RingSpec spec = i % 2 == 0 ? integer_ring(3) : residue_ring(3, 97);
        const Polynomial p = random_polynomial(rng, spec, 4, 5, 9);
        const Polynomial q = random_polynomial(rng, spec, 4, 5, 9);
        const Polynomial r = random_polynomial(rng, spec, 3, 4, 9);
        CHECK(p + q == q + p);
        CHECK((p + q) + r == p + (q + r));
        CHECK(p * q == q * p);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    Rng rng(77);
    for (int i = 0; i < 40; ++i) {
        const RingSpec spec = i % 2 == 0 ? integer_ring(2) : residue_ring(2, 101);
        const Polynomial p = random_polynomial(rng, spec, 4, 5, 9);
        const Polynomial q = random_polynomial(rng, spec, 4, 5, 9);
        const auto v = random_point(rng, spec, 20);
        if (spec.finite()) {
            const mpz_class w = *spec.modulus;
            CHECK((p + q).eval(v) == (p.eval(v) + q.eval(v)) % w);
            CHECK((p * q).eval(v) == (p.eval(v) * q.eval(v)) % w);
        } else {
            CHECK((p + q).eval(v) == p.eval(v) + q.eval(v));
            CHECK((p * q).eval(v) == p.eval(v) * q.eval(v));
        }
    }
}

TEST_CASE("canonical form invariants under random operations") {
    Rng rng(404);
    for (int i = 0; i < 40; ++i) {
        const RingSpec spec = i % 2 == 0 ? integer_ring(2) : residue_ring(2, 30);
        const Polynomial p = random_polynomial(rng, spec, 5, 6, 9) *
                             random_polynomial(rng, spec, 3, 4, 9);
        for (const auto& [m, c] : p.terms()) {
            CHECK(c != 0);
            if (spec.finite()) {
                CHECK(c >= 0);
                CHECK(c < *spec.modulus);
            }
        }
        CHECK(parse_polynomial(format_polynomial(p), spec) == p);
    }
}
