#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "diokex/attack.hpp"
#include "diokex/polyring.hpp"
#include "diokex/quotient.hpp"
#include "diokex/rng.hpp"
#include "diokex/toperator.hpp"

namespace diokex {

// ---------------------------------------------------------------------------
// Key material and transcript

struct RecipientPrivateKey {
    std::vector<mpz_class> point;  // the planted root k_1..k_m, never transmitted
    RingSpec spec;
};

struct SenderPrivateKey {
    OperatorChain chain;  // the trapdoor, never transmitted
    Polynomial g;
};

struct SharedSecret {
    mpz_class value;
};

// Everything an eavesdropper sees: the relation, the pair (g, h) and the
// reply p.  Private points, chains and secrets live in the key types above
// and never enter a Transcript.
struct Transcript {
    Relation relation;
    Polynomial g;
    Polynomial h;
    mpz_class p;

    const RingSpec& spec() const { return relation.spec(); }
    std::string f_message() const;
    std::string gh_message() const;
    std::string p_message() const;
    std::string to_text() const;  // the three wire lines
};

// ---------------------------------------------------------------------------
// Wire format: one line per message, `DIOKEX/1 <TYPE> <payload>` with
// TYPE in {F, GH, P}.  Finite mode appends " mod <w>" to the F payload.

std::string encode_f_message(const Relation& rel);
std::string encode_gh_message(const Polynomial& g, const Polynomial& h);
std::string encode_p_message(const mpz_class& p);

// Variable count is inferred from the highest index mentioned in f.
Relation parse_f_message(const std::string& line);
std::pair<Polynomial, Polynomial> parse_gh_message(const std::string& line,
                                                   const RingSpec& spec);
mpz_class parse_p_message(const std::string& line);

// Private key files (never part of a transcript).
std::string encode_recipient_key(const RecipientPrivateKey& key);
RecipientPrivateKey parse_recipient_key(const std::string& line);
std::string encode_sender_key(const SenderPrivateKey& key);
SenderPrivateKey parse_sender_key(const std::string& line);

// ---------------------------------------------------------------------------
// Parameters.  Defaults are desk-scale; every knob is caller-tunable.

struct KeygenParams {
    std::size_t varcount = 2;
    std::uint32_t relation_degree = 3;  // pivot degree, >= 2
    long coefficient_bound = 9;         // magnitude of random term coefficients
    long key_bound = 9;                 // |k_j| cap in integer mode
    std::size_t extra_terms = 2;        // random monomials beyond the guarantees
    bool finite = false;
    std::optional<mpz_class> modulus;   // fixed w; generated squarefree when absent
    std::uint64_t check_ceiling = 1'000'000;  // non-uniqueness gate budget
    unsigned check_threads = 1;
    int retries = 64;
};

struct SenderParams {
    std::size_t chain_length = 2;
    // Integer-mode exponent pool; finite mode derives odd exponents coprime
    // to phi(w) on its own.
    std::vector<unsigned long> exponent_choices = {1, 3, 5};
    long shift_bound = 9;  // |a_j|, |b_j| bound
    std::uint32_t g_degree = 3;
    std::size_t representation_budget = 2;
    // Desk-scale expansion caps for the symbolic chain image.
    std::uint64_t max_total_exponent = 45;   // prod c_j
    std::uint64_t max_expanded_degree = 60;  // deg(g) * prod c_j
    bool allow_weak = false;                 // lifts the n/c/deg policy floors
    int retries = 64;
};

struct ExchangeParams {
    KeygenParams keygen;
    SenderParams sender;
};

// ---------------------------------------------------------------------------
// Protocol steps

struct RecipientKeyMaterial {
    RecipientPrivateKey priv;
    Relation rel;
};

// Build a relation with a planted random root.  The generated f carries a
// monic pivot x_i^d strictly ahead of every other monomial, mentions every
// variable, and is even in one designated variable with k there nonzero, so
// the mirrored point is a second root and the published equation never pins
// its solution uniquely.  The non-uniqueness gate re-checks by enumeration
// whenever the region volume fits the ceiling.
RecipientKeyMaterial recipient_keygen(const KeygenParams& params, Rng& rng);

struct SenderKeyMaterial {
    SenderPrivateKey priv;
    Polynomial g;
    Polynomial h;
};

// Steps 3-4: pick g and a secret chain, publish (g, h).  Policy floors
// (unless allow_weak): m >= 2, deg f >= 2, n >= 2, at least one exponent
// >= 3, and deg h > deg g.
SenderKeyMaterial sender_respond(const Relation& rel, const SenderParams& params,
                                 Rng& rng);

struct RecipientReply {
    mpz_class p;          // transmitted
    SharedSecret secret;  // retained
};

// Steps 5-6: evaluate h and g at the private point.
RecipientReply recipient_reply(const RecipientPrivateKey& key, const Polynomial& g,
                               const Polynomial& h);

// Step 7: invert the chain on p.  Throws TranscriptCorrupted when p cannot
// have come from the matching forward chain (integer mode detects this via
// exact-root failures; finite mode cannot, every residue inverts).
SharedSecret sender_finish(const SenderPrivateKey& key, const mpz_class& p);

struct ExchangeOutcome {
    Transcript transcript;
    RecipientPrivateKey recipient_key;
    SenderPrivateKey sender_key;
    SharedSecret recipient_secret;
    SharedSecret sender_secret;
};

ExchangeOutcome run_exchange(const ExchangeParams& params, Rng& rng);

// Random squarefree modulus in [lo, hi].
mpz_class generate_squarefree_modulus(Rng& rng, long lo, long hi);

// ---------------------------------------------------------------------------
// The built-in worked instance used by --golden runs and fixtures:
// f = x1^3 - x2^2 + 1 with point (2,3), g = x1*x2^2, chain T[1,2;3],T[0,3;1].

Relation golden_relation();
RecipientPrivateKey golden_recipient_key();
Polynomial golden_g();
OperatorChain golden_chain();
ExchangeOutcome golden_exchange();

}  // namespace diokex
