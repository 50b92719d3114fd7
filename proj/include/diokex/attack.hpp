#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "diokex/polyring.hpp"

namespace diokex {

// Where the exhaustive solver looks: an integer box (per-variable inclusive
// ranges) or the full residue space of a finite ring.
struct SearchRegion {
    std::vector<std::pair<long long, long long>> ranges;
    bool residue_space = false;

    static SearchRegion box(std::size_t varcount, long long halfwidth);
    static SearchRegion box(std::vector<std::pair<long long, long long>> ranges);
    static SearchRegion residues(std::size_t varcount);

    mpz_class volume(const RingSpec& spec) const;
    std::string describe(const RingSpec& spec) const;  // "[-20,20]" or "w=15"
};

struct SearchLimits {
    std::uint64_t ceiling = 100'000'000;  // max points scanned
    unsigned threads = 0;                 // 0 -> hardware concurrency
};

enum class Verdict { Determined, Ambiguous, NoSolutionInBox };

std::string to_string(Verdict v);

struct AttackResult {
    std::vector<std::vector<mpz_class>> solutions;  // ascending lexicographic
    std::vector<mpz_class> secret_candidates;       // sorted, deduplicated
    Verdict verdict = Verdict::NoSolutionInBox;
    mpz_class determined_secret;                    // meaningful iff Determined
    std::uint64_t points_scanned = 0;
};

// Solve f = 0, h = p by exact enumeration over the region and map the
// solutions through g.  Enumeration is partitioned over the first variable
// and merged in partition order, so results do not depend on thread timing.
// Throws BudgetExceeded when the region volume is over limits.ceiling.
AttackResult brute_force_system(const Polynomial& f, const Polynomial& h,
                                const mpz_class& p, const Polynomial& g,
                                const SearchRegion& region,
                                const SearchLimits& limits = {});

struct UniquenessReport {
    std::uint64_t root_count = 0;
    bool pass = false;  // at least two roots in the region
    std::uint64_t points_scanned = 0;
};

// Count roots of f in the region; the keygen gate demands >= 2.
UniquenessReport non_uniqueness_check(const Polynomial& f, const SearchRegion& region,
                                      const SearchLimits& limits = {});

}  // namespace diokex
