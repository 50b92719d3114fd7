#include "diokex/quotient.hpp"

#include <vector>

namespace diokex {

Relation::Relation(Polynomial f)
    : f_(std::move(f)), pivot_(f_.varcount()), pivot_sign_(0) {
    if (f_.is_zero() || f_.is_constant())
        throw RelationRejected("relation must not be constant");
    pivot_ = *f_.leading_monomial();
    const mpz_class lead = f_.coefficient(pivot_);
    const auto& spec = f_.spec();
    if (lead == 1) {
        pivot_sign_ = 1;
    } else if (spec.finite() ? lead == *spec.modulus - 1 : lead == -1) {
        pivot_sign_ = -1;
    } else {
        throw RelationRejected("relation pivot must have coefficient +1 or -1");
    }
}

Polynomial normal_form(const Polynomial& p, const Relation& rel) {
    if (!(p.spec() == rel.spec())) throw DimensionError("ring spec mismatch");
    const Monomial& pivot = rel.pivot();
    const int sign = rel.pivot_sign();

    // f = sign*pivot + tail, so pivot^t * rho == sign^t * (-tail)^t * rho (mod f).
    Polynomial neg_tail = -(rel.f() - Polynomial::term(p.spec(), pivot, sign));
    std::vector<Polynomial> tail_pow{Polynomial::constant(p.spec(), 1)};
    auto neg_tail_power = [&](std::uint32_t t) -> const Polynomial& {
        while (tail_pow.size() <= t)
            tail_pow.push_back(tail_pow.back() * neg_tail);
        return tail_pow[t];
    };

    Polynomial result(p.spec());
    Polynomial work = p;
    while (!work.is_zero()) {
        const Monomial mono = work.terms().begin()->first;
        const mpz_class coeff = work.terms().begin()->second;
        work.add_term(mono, -coeff);
        const std::uint32_t t = pivot.division_multiplicity(mono);
        if (t == 0) {
            result.add_term(mono, coeff);
            continue;
        }
        const Monomial rest = mono.divided_by(pivot.power(t));
        mpz_class scale = coeff;
        if (sign < 0 && (t & 1)) scale = -scale;
        work += scale * (neg_tail_power(t) * Polynomial::term(p.spec(), rest, 1));
    }
    return result;
}

Polynomial randomize_representation(const Polynomial& p, const Relation& rel,
                                    Rng& rng, std::size_t budget) {
    if (!(p.spec() == rel.spec())) throw DimensionError("ring spec mismatch");
    if (budget == 0) return p;
    const std::size_t m = p.varcount();
    const std::uint64_t maxdeg = p.degree();
    Polynomial q(p.spec());
    for (std::size_t i = 0; i < budget; ++i) {
        std::vector<std::uint32_t> exps(m, 0);
        auto d = static_cast<std::uint32_t>(rng.range(0, static_cast<long long>(maxdeg)));
        for (std::uint32_t unit = 0; unit < d; ++unit)
            exps[static_cast<std::size_t>(rng.below(m))] += 1;
        mpz_class c(static_cast<long>(rng.range(1, 9)));
        if (rng.coin()) c = -c;
        q.add_term(Monomial(std::move(exps)), c);
    }
    return p + q * rel.f();
}

bool ideal_equivalent(const Polynomial& a, const Polynomial& b, const Relation& rel) {
    return normal_form(a - b, rel).is_zero();
}

}  // namespace diokex
