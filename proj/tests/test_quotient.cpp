#include <doctest.h>

#include "diokex/quotient.hpp"
#include "test_support.hpp"

using namespace diokex;
using diokex::testing::random_polynomial;

namespace {
const RingSpec kZ2 = integer_ring(2);

Polynomial parse2(const std::string& text) { return parse_polynomial(text, kZ2); }

Relation worked_relation() { return Relation(parse2("x1^3 - x2^2 + 1")); }
}  // namespace

TEST_CASE("relation validation") {
    const Relation rel = worked_relation();
    CHECK(rel.pivot() == Monomial(std::vector<std::uint32_t>{3, 0}));
    CHECK(rel.pivot_sign() == 1);

    const Relation neg(parse2("-x1^3 + x2^2"));
    CHECK(neg.pivot_sign() == -1);

    CHECK_THROWS_AS(Relation(parse2("2*x1^3 - x2")), RelationRejected);
    CHECK_THROWS_AS(Relation(parse2("7")), RelationRejected);
    CHECK_THROWS_AS(Relation(Polynomial(kZ2)), RelationRejected);

    // In a residue ring, w - 1 acts as the -1 pivot coefficient.
    const RingSpec z15 = residue_ring(2, 15);
    const Relation modneg(parse_polynomial("14*x1^2 + x2", z15));
    CHECK(modneg.pivot_sign() == -1);
}

TEST_CASE("normal form reproduces the worked reductions") {
    const Relation rel = worked_relation();
    CHECK(normal_form(parse2("x1^3"), rel) == parse2("x2^2 - 1"));
    CHECK(normal_form(parse2("x1^3*x2^6 + 12*x1^2*x2^4 + 48*x1*x2^2 + 66"), rel) ==
          parse2("x2^8 - x2^6 + 12*x1^2*x2^4 + 48*x1*x2^2 + 66"));
    CHECK(normal_form(parse2("x2^2 - 1"), rel) == parse2("x2^2 - 1"));
}

TEST_CASE("the two worked representatives differ by x2^6 * f") {
    const Relation rel = worked_relation();
    const Polynomial reduced = parse2("x2^8 - x2^6 + 12*x1^2*x2^4 + 48*x1*x2^2 + 66");
    const Polynomial published = parse2("x1^3*x2^6 + 12*x1^2*x2^4 + 48*x1*x2^2 + 66");
    CHECK(reduced + parse2("x2^6") * rel.f() == published);
    CHECK(ideal_equivalent(reduced, published, rel));
}

TEST_CASE("randomize_representation stays in the residue class") {
    const Relation rel = worked_relation();
    const Polynomial p = parse2("x2^8 - x2^6 + 12*x1^2*x2^4 + 48*x1*x2^2 + 66");
    Rng rng(5);
    CHECK(randomize_representation(p, rel, rng, 0) == p);
    const std::vector<mpz_class> root{2, 3};
    for (int i = 0; i < 25; ++i) {
        const Polynomial blinded = randomize_representation(p, rel, rng, 3);
        CHECK(normal_form(blinded, rel) == normal_form(p, rel));
        CHECK(blinded.eval(root) == p.eval(root));  // f(2,3) = 0
    }
}

TEST_CASE("ideal equivalence") {
    const Relation rel = worked_relation();
    CHECK(ideal_equivalent(parse2("x1^3"), parse2("x2^2 - 1"), rel));
    CHECK_FALSE(ideal_equivalent(parse2("x1^3"), parse2("x2^2"), rel));
    const Polynomial p = parse2("x1^2*x2 - 4");
    CHECK(ideal_equivalent(p, p, rel));
}

TEST_CASE("confluence: adding multiples of f never changes the normal form") {
    const Relation rel = worked_relation();
    Rng rng(99);
    for (int i = 0; i < 50; ++i) {
        const Polynomial p = random_polynomial(rng, kZ2, 6, 6, 9);
        const Polynomial q = random_polynomial(rng, kZ2, 4, 4, 9);
        CHECK(normal_form(p + q * rel.f(), rel) == normal_form(p, rel));
    }
}

TEST_CASE("reduction soundness and reducedness") {
    const Relation rel = worked_relation();
    const std::vector<mpz_class> root{2, 3};
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        const Polynomial p = random_polynomial(rng, kZ2, 7, 6, 9);
        const Polynomial nf = normal_form(p, rel);
        CHECK(nf.eval(root) == p.eval(root));
        CHECK(normal_form(nf, rel) == nf);
        for (const auto& [m, c] : nf.terms()) CHECK(rel.pivot().division_multiplicity(m) == 0);
        CHECK(nf.degree() <= p.degree());
    }
}

TEST_CASE("reduction in a residue ring") {
    const RingSpec z15 = residue_ring(2, 15);
    const Relation rel(parse_polynomial("x1^3 + 14*x2^2 + 1", z15));  // x1^3 - x2^2 + 1 mod 15
    const std::vector<mpz_class> root{2, 3};
    CHECK(rel.f().eval(root) == 0);
    Rng rng(13);
    for (int i = 0; i < 30; ++i) {
        const Polynomial p = random_polynomial(rng, z15, 6, 5, 14);
        const Polynomial nf = normal_form(p, rel);
        CHECK(nf.eval(root) == p.eval(root));
        const Polynomial q = random_polynomial(rng, z15, 3, 3, 14);
        CHECK(normal_form(p + q * rel.f(), rel) == nf);
    }
}

TEST_CASE("pivot-heavy powers reduce without blowup") {
    // u = x1*x2^2 raised high: the block substitution path.
    const Relation rel = worked_relation();
    const Polynomial u40 = pow(parse2("x1*x2^2"), 40);
    const Polynomial nf = normal_form(u40, rel);
    const std::vector<mpz_class> root{2, 3};
    CHECK(nf.eval(root) == u40.eval(root));
    for (const auto& [m, c] : nf.terms()) CHECK(m.exponent(0) < 3);
}
