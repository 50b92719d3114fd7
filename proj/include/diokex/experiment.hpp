#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "diokex/attack.hpp"
#include "diokex/protocol.hpp"

namespace diokex {

// Randomized per-trial exchange parameters in the desk-scale envelope:
// m in {2,3,4} (or fixed), deg f <= 5, n <= 4, integer exponents from
// {1,3,5}, |a|,|b| <= 9.
ExchangeParams sample_exchange_params(Rng& rng, bool finite,
                                      std::size_t fixed_varcount = 0);

struct ExperimentParams {
    std::size_t trials = 10;
    bool finite = false;
    std::size_t varcount = 2;     // 0 -> sweep m over {2,3,4}
    long box_halfwidth = 20;      // attack box per variable (integer mode)
    std::uint64_t ceiling = 100'000'000;
    unsigned threads = 0;
    std::uint64_t seed = 1;
    bool measure_time = false;    // off by default: keeps the CSV byte-stable
};

struct TrialRecord {
    std::uint64_t trial_id = 0;
    std::string mode;
    std::size_t varcount = 0;
    std::uint64_t degree_f = 0;
    std::size_t chain_len = 0;
    std::string box_or_w;
    std::size_t n_solutions = 0;
    std::string verdict;  // Determined | Ambiguous | NoSolutionInBox | BudgetExceeded
    mpz_class true_s;
    std::string attack_s_or_set;
    std::uint64_t evals = 0;
    std::uint64_t wall_ms = 0;
};

// One exchange plus one exhaustive attack on its transcript per trial.
// BudgetExceeded attacks are recorded, not fatal.
std::vector<TrialRecord> attack_experiment(const ExperimentParams& params);

// The worked m = 2 instance attacked over [-hw, hw]^2.
TrialRecord golden_attack_trial(long box_halfwidth, std::uint64_t ceiling,
                                unsigned threads, bool measure_time);

// Header: trial_id,mode,m,degree_f,chain_len,box_or_w,n_solutions,verdict,
//         true_s,attack_s_or_set,evals,wall_ms
void write_csv(std::ostream& os, const std::vector<TrialRecord>& rows);

}  // namespace diokex
