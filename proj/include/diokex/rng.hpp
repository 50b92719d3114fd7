#pragma once

#include <cassert>
#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace diokex {

// Deterministic random source.  All generator code draws through this
// wrapper so that a seed fixes every byte of output; the distribution
// helpers are hand-rolled because the std:: distributions are not pinned
// across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Independent stream derived from (seed, stream); used for per-trial rngs.
    static Rng derived(std::uint64_t seed, std::uint64_t stream) {
        return Rng(splitmix(seed ^ splitmix(stream + 0x9e3779b97f4a7c15ull)));
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, n); n > 0.  Rejection sampling, bias-free.
    std::uint64_t below(std::uint64_t n) {
        assert(n > 0);
        const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % n;
    }

    // Uniform in [lo, hi], inclusive.
    long long range(long long lo, long long hi) {
        assert(lo <= hi);
        const auto span =
            static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
        if (span == 0) return static_cast<long long>(next_u64());  // full width
        return lo + static_cast<long long>(below(span));
    }

    // Uniform in [lo, hi], inclusive, over arbitrary-precision integers.
    mpz_class range_mpz(const mpz_class& lo, const mpz_class& hi) {
        assert(lo <= hi);
        const mpz_class span = hi - lo + 1;
        const std::size_t bits = mpz_sizeinbase(span.get_mpz_t(), 2);
        mpz_class v;
        do {
            v = 0;
            for (std::size_t produced = 0; produced < bits; produced += 64) {
                v <<= 64;
                mpz_class chunk;
                mpz_import_u64(chunk, next_u64());
                v |= chunk;
            }
            v >>= (64 - bits % 64) % 64;
        } while (v >= span);
        return lo + v;
    }

    bool coin() { return (next_u64() & 1) != 0; }

    template <class T>
    const T& pick(const std::vector<T>& choices) {
        assert(!choices.empty());
        return choices[static_cast<std::size_t>(below(choices.size()))];
    }

private:
    static void mpz_import_u64(mpz_class& out, std::uint64_t v) {
        mpz_import(out.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    }

    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    std::mt19937_64 engine_;
};

}  // namespace diokex
