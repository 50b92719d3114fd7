#include "diokex/experiment.hpp"

#include <chrono>
#include <ostream>
#include <sstream>

namespace diokex {

ExchangeParams sample_exchange_params(Rng& rng, bool finite,
                                      std::size_t fixed_varcount) {
    ExchangeParams params;
    params.keygen.varcount =
        fixed_varcount != 0 ? fixed_varcount
                            : static_cast<std::size_t>(rng.range(2, 4));
    params.keygen.relation_degree = static_cast<std::uint32_t>(rng.range(2, 5));
    params.keygen.coefficient_bound = rng.range(3, 9);
    params.keygen.extra_terms = static_cast<std::size_t>(rng.range(1, 2));
    params.keygen.finite = finite;
    if (finite) params.keygen.modulus = std::nullopt;  // generated squarefree

    params.sender.chain_length = static_cast<std::size_t>(rng.range(2, 4));
    params.sender.g_degree = static_cast<std::uint32_t>(rng.range(1, 3));
    params.sender.representation_budget = static_cast<std::size_t>(rng.range(0, 3));
    return params;
}

namespace {

std::string candidates_text(const AttackResult& result) {
    if (result.verdict == Verdict::Determined)
        return result.determined_secret.get_str();
    if (result.secret_candidates.empty()) return "";
    std::string out = "{";
    for (std::size_t i = 0; i < result.secret_candidates.size(); ++i) {
        if (i > 0) out += ';';
        out += result.secret_candidates[i].get_str();
    }
    return out + "}";
}

TrialRecord run_trial(std::uint64_t trial_id, const ExchangeOutcome& outcome,
                      const SearchRegion& region, const SearchLimits& limits,
                      bool measure_time) {
    const Transcript& t = outcome.transcript;
    TrialRecord row;
    row.trial_id = trial_id;
    row.mode = t.spec().finite() ? "finite" : "integer";
    row.varcount = t.spec().varcount;
    row.degree_f = t.relation.f().degree();
    row.chain_len = outcome.sender_key.chain.size();
    row.box_or_w = region.describe(t.spec());
    row.true_s = outcome.recipient_secret.value;
    const auto started = std::chrono::steady_clock::now();
    try {
        const AttackResult attack =
            brute_force_system(t.relation.f(), t.h, t.p, t.g, region, limits);
        row.n_solutions = attack.solutions.size();
        row.verdict = to_string(attack.verdict);
        row.attack_s_or_set = candidates_text(attack);
        row.evals = attack.points_scanned;
    } catch (const BudgetExceeded&) {
        row.verdict = "BudgetExceeded";
    }
    if (measure_time) {
        row.wall_ms = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - started)
                .count());
    }
    return row;
}

}  // namespace

std::vector<TrialRecord> attack_experiment(const ExperimentParams& params) {
    std::vector<TrialRecord> rows;
    rows.reserve(params.trials);
    for (std::uint64_t trial = 0; trial < params.trials; ++trial) {
        Rng rng = Rng::derived(params.seed, trial);
        const ExchangeParams exchange =
            sample_exchange_params(rng, params.finite, params.varcount);
        const ExchangeOutcome outcome = run_exchange(exchange, rng);
        const RingSpec& spec = outcome.transcript.spec();
        const SearchRegion region =
            spec.finite() ? SearchRegion::residues(spec.varcount)
                          : SearchRegion::box(spec.varcount, params.box_halfwidth);
        const SearchLimits limits{params.ceiling, params.threads};
        rows.push_back(run_trial(trial, outcome, region, limits, params.measure_time));
    }
    return rows;
}

TrialRecord golden_attack_trial(long box_halfwidth, std::uint64_t ceiling,
                                unsigned threads, bool measure_time) {
    const ExchangeOutcome outcome = golden_exchange();
    const SearchRegion region = SearchRegion::box(2, box_halfwidth);
    return run_trial(0, outcome, region, SearchLimits{ceiling, threads}, measure_time);
}

void write_csv(std::ostream& os, const std::vector<TrialRecord>& rows) {
    os << "trial_id,mode,m,degree_f,chain_len,box_or_w,n_solutions,verdict,"
          "true_s,attack_s_or_set,evals,wall_ms\n";
    for (const TrialRecord& r : rows) {
        os << r.trial_id << ',' << r.mode << ',' << r.varcount << ',' << r.degree_f
           << ',' << r.chain_len << ',' << r.box_or_w << ',' << r.n_solutions << ','
           << r.verdict << ',' << r.true_s.get_str() << ',' << r.attack_s_or_set
           << ',' << r.evals << ',' << r.wall_ms << '\n';
    }
}

}  // namespace diokex
