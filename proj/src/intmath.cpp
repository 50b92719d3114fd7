#include "diokex/intmath.hpp"

#include "diokex/errors.hpp"

namespace diokex {

namespace {
constexpr unsigned long kTrialBound = 1'000'000;
}

Factorization factorize(const mpz_class& n) {
    if (n < 2) throw FactorError("factorize: argument must be >= 2");
    Factorization result;
    mpz_class rest = n;
    auto strip = [&](const mpz_class& p) {
        unsigned e = 0;
        while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
            rest /= p;
            ++e;
        }
        if (e > 0) result.factors.emplace_back(p, e);
    };
    strip(2);
    for (unsigned long d = 3; d <= kTrialBound && rest > 1; d += 2) {
        mpz_class dd(static_cast<unsigned long>(d));
        if (dd * dd > rest) break;
        strip(dd);
    }
    if (rest > 1) {
        if (mpz_probab_prime_p(rest.get_mpz_t(), 40) == 0)
            throw FactorError("factorize: composite cofactor beyond trial bound");
        result.factors.emplace_back(rest, 1);
    }
    return result;
}

mpz_class totient(const Factorization& f) {
    mpz_class phi = 1;
    for (const auto& [p, e] : f.factors) {
        mpz_class pk = 1;
        for (unsigned i = 1; i < e; ++i) pk *= p;
        phi *= pk * (p - 1);
    }
    return phi;
}

bool is_squarefree(const mpz_class& n) { return factorize(n).squarefree(); }

mpz_class mod_floor(const mpz_class& x, const mpz_class& w) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), w.get_mpz_t());
    return r;
}

}  // namespace diokex
