#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace diokex {

struct Factorization {
    // (prime, exponent) pairs, primes ascending.
    std::vector<std::pair<mpz_class, unsigned>> factors;

    bool squarefree() const {
        for (const auto& [p, e] : factors)
            if (e > 1) return false;
        return true;
    }
};

// Trial division up to 10^6, then a primality test on the remainder.
// Throws FactorError when the leftover cofactor is composite (two primes
// beyond the trial bound); the protocol only meets desk-scale moduli.
Factorization factorize(const mpz_class& n);

mpz_class totient(const Factorization& f);

bool is_squarefree(const mpz_class& n);

// Residue of x in [0, w).
mpz_class mod_floor(const mpz_class& x, const mpz_class& w);

}  // namespace diokex
