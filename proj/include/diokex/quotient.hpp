#pragma once

#include <cstddef>

#include "diokex/polyring.hpp"
#include "diokex/rng.hpp"

namespace diokex {

class Rng;

// The published relation f = 0 together with its designated rewrite head.
// The pivot is the graded-lex leading monomial of f and must carry a unit
// coefficient (+1/-1; in a residue ring, 1 or w-1) so that reduction by f
// stays exact.  A single monic-pivot generator yields unique normal forms.
class Relation {
public:
    explicit Relation(Polynomial f);  // throws RelationRejected

    const Polynomial& f() const { return f_; }
    const RingSpec& spec() const { return f_.spec(); }
    const Monomial& pivot() const { return pivot_; }
    int pivot_sign() const { return pivot_sign_; }

private:
    Polynomial f_;
    Monomial pivot_;
    int pivot_sign_;
};

// Unique fully reduced representative of p modulo (f): no monomial of the
// result is divisible by the pivot.  Rewrites pivot^t * rest in one step via
// cached powers of the pivot-free remainder; every step replaces a monomial
// by strictly smaller ones, so the descent terminates.
Polynomial normal_form(const Polynomial& p, const Relation& rel);

// p + q*f for a random q with at most `budget` terms, coefficients in
// [-9, 9] and monomial degree <= deg(p).  budget 0 returns p unchanged.
Polynomial randomize_representation(const Polynomial& p, const Relation& rel,
                                    Rng& rng, std::size_t budget);

// True iff a and b represent the same residue class modulo (f).
bool ideal_equivalent(const Polynomial& a, const Polynomial& b, const Relation& rel);

}  // namespace diokex
