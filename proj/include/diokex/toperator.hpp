#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "diokex/polyring.hpp"
#include "diokex/quotient.hpp"
#include "diokex/rng.hpp"

namespace diokex {

// The trapdoor map v -> (v + pre_add)^exponent + post_add.  The exponent is
// odd and positive, which makes the map injective over the integers; in a
// residue ring it is inverted through a matching exponent modulo phi(w).
struct TOperator {
    mpz_class pre_add;
    mpz_class post_add;
    unsigned long exponent = 1;

    TOperator() = default;
    TOperator(mpz_class a, mpz_class b, unsigned long c);

    std::string to_text() const;  // "T[a,b;c]"
};

bool operator==(const TOperator& x, const TOperator& y);

// Ordered operator list, outermost first: application folds from the back
// of the list, inversion walks it front to back.  Serialized as a
// comma-separated list in the same outermost-first order.
class OperatorChain {
public:
    OperatorChain() = default;
    explicit OperatorChain(std::vector<TOperator> ops) : ops_(std::move(ops)) {}

    const std::vector<TOperator>& ops() const { return ops_; }
    std::size_t size() const { return ops_.size(); }
    bool empty() const { return ops_.empty(); }

    std::string to_text() const;
    static OperatorChain from_text(const std::string& text);  // throws ParseError

private:
    std::vector<TOperator> ops_;
};

// (p + a)^c + b as a plain polynomial; no quotient reduction.
Polynomial apply_symbolic(const TOperator& op, const Polynomial& p);

// Whole-chain image of g: fold the operators innermost-first, reduce to the
// normal form modulo the relation, then blind the representative with
// `budget` random multiples of f.  budget 0 never draws from the rng.
Polynomial chain_apply_symbolic(const OperatorChain& chain, const Polynomial& g,
                                const Relation& rel, Rng& rng, std::size_t budget);

mpz_class apply_numeric(const TOperator& op, const mpz_class& v, const RingSpec& spec);

// Exact preimage of v.  Integer mode requires v - post_add to be a perfect
// exponent-th power (throws NotAPerfectPower otherwise); finite mode raises
// to the inverse exponent modulo phi(w) (throws NoInverseExponent when the
// exponent is not a unit).
mpz_class invert_numeric(const TOperator& op, const mpz_class& v, const RingSpec& spec);

mpz_class chain_apply_numeric(const OperatorChain& chain, mpz_class v,
                              const RingSpec& spec);
mpz_class chain_invert_numeric(const OperatorChain& chain, mpz_class p,
                               const RingSpec& spec);

// r with r^c == v, if it exists.  c odd makes r unique (the map is strictly
// monotone over the integers, negative v included).  Binary search over
// arbitrary-precision integers; no floating point.
std::optional<mpz_class> integer_root(const mpz_class& v, unsigned long c);

// Least positive c' with c*c' == 1 (mod phi(w)).
mpz_class inverse_exponent(unsigned long c, const mpz_class& w);

}  // namespace diokex
