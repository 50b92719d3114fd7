#include "diokex/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "diokex/intmath.hpp"

namespace diokex {

namespace {

constexpr const char* kProtocolTag = "DIOKEX/1";

std::string strip_mod_suffix(std::string payload, std::optional<mpz_class>& w_out) {
    const std::size_t at = payload.rfind(" mod ");
    if (at == std::string::npos) {
        w_out = std::nullopt;
        return payload;
    }
    const std::string digits = payload.substr(at + 5);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad modulus", at + 5);
    w_out = mpz_class(digits);
    payload.erase(at);
    return payload;
}

std::string expect_prefix(const std::string& line, const std::string& type) {
    const std::string prefix = std::string(kProtocolTag) + " " + type + " ";
    if (line.compare(0, prefix.size(), prefix) != 0)
        throw ParseError("expected '" + prefix + "' message", 0);
    std::string payload = line.substr(prefix.size());
    while (!payload.empty() && (payload.back() == '\n' || payload.back() == '\r'))
        payload.pop_back();
    return payload;
}

}  // namespace

// ---------------------------------------------------------------------------
// Messages

std::string encode_f_message(const Relation& rel) {
    std::string line = std::string(kProtocolTag) + " F " + format_polynomial(rel.f());
    if (rel.spec().finite()) line += " mod " + rel.spec().modulus->get_str();
    return line;
}

Relation parse_f_message(const std::string& line) {
    std::optional<mpz_class> w;
    const std::string poly_text = strip_mod_suffix(expect_prefix(line, "F"), w);
    const std::size_t m = scan_varcount(poly_text);
    if (m == 0) throw ParseError("relation mentions no variables", 0);
    const RingSpec spec = w ? residue_ring(m, *w) : integer_ring(m);
    return Relation(parse_polynomial(poly_text, spec));
}

std::string encode_gh_message(const Polynomial& g, const Polynomial& h) {
    return std::string(kProtocolTag) + " GH " + format_polynomial(g) + " ; " +
           format_polynomial(h);
}

std::pair<Polynomial, Polynomial> parse_gh_message(const std::string& line,
                                                   const RingSpec& spec) {
    const std::string payload = expect_prefix(line, "GH");
    const std::size_t split = payload.find(" ; ");
    if (split == std::string::npos)
        throw ParseError("GH message needs 'g ; h'", 0);
    return {parse_polynomial(payload.substr(0, split), spec),
            parse_polynomial(payload.substr(split + 3), spec)};
}

std::string encode_p_message(const mpz_class& p) {
    return std::string(kProtocolTag) + " P " + p.get_str();
}

mpz_class parse_p_message(const std::string& line) {
    const std::string payload = expect_prefix(line, "P");
    if (payload.empty() ||
        payload.find_first_not_of("-0123456789") != std::string::npos ||
        (payload.size() > 1 && payload.find('-', 1) != std::string::npos))
        throw ParseError("bad integer in P message", 0);
    return mpz_class(payload);
}

std::string Transcript::f_message() const { return encode_f_message(relation); }
std::string Transcript::gh_message() const { return encode_gh_message(g, h); }
std::string Transcript::p_message() const { return encode_p_message(p); }

std::string Transcript::to_text() const {
    return f_message() + "\n" + gh_message() + "\n" + p_message() + "\n";
}

// ---------------------------------------------------------------------------
// Key files

std::string encode_recipient_key(const RecipientPrivateKey& key) {
    std::string line = std::string(kProtocolTag) + " RKEY ";
    for (std::size_t i = 0; i < key.point.size(); ++i) {
        if (i > 0) line += ',';
        line += key.point[i].get_str();
    }
    if (key.spec.finite()) line += " mod " + key.spec.modulus->get_str();
    return line;
}

RecipientPrivateKey parse_recipient_key(const std::string& line) {
    std::optional<mpz_class> w;
    const std::string payload = strip_mod_suffix(expect_prefix(line, "RKEY"), w);
    std::vector<mpz_class> point;
    std::size_t pos = 0;
    while (pos <= payload.size()) {
        std::size_t comma = payload.find(',', pos);
        if (comma == std::string::npos) comma = payload.size();
        const std::string digits = payload.substr(pos, comma - pos);
        if (digits.empty() ||
            digits.find_first_not_of("-0123456789") != std::string::npos)
            throw ParseError("bad key coordinate", pos);
        point.emplace_back(digits);
        pos = comma + 1;
        if (comma == payload.size()) break;
    }
    if (point.empty()) throw ParseError("empty key point", 0);
    const std::size_t m = point.size();
    return RecipientPrivateKey{std::move(point),
                               w ? residue_ring(m, *w) : integer_ring(m)};
}

std::string encode_sender_key(const SenderPrivateKey& key) {
    std::string line = std::string(kProtocolTag) + " SKEY " + key.chain.to_text() +
                       " ; " + format_polynomial(key.g);
    if (key.g.spec().finite()) line += " mod " + key.g.spec().modulus->get_str();
    return line;
}

SenderPrivateKey parse_sender_key(const std::string& line) {
    std::optional<mpz_class> w;
    const std::string payload = strip_mod_suffix(expect_prefix(line, "SKEY"), w);
    const std::size_t split = payload.find(" ; ");
    if (split == std::string::npos)
        throw ParseError("SKEY needs 'chain ; g'", 0);
    OperatorChain chain = OperatorChain::from_text(payload.substr(0, split));
    const std::string g_text = payload.substr(split + 3);
    const std::size_t m = scan_varcount(g_text);
    if (m == 0) throw ParseError("sender key g mentions no variables", 0);
    const RingSpec spec = w ? residue_ring(m, *w) : integer_ring(m);
    return SenderPrivateKey{std::move(chain), parse_polynomial(g_text, spec)};
}

// ---------------------------------------------------------------------------
// Keygen

namespace {

// Largest halfwidth (capped at 20) whose box volume fits the ceiling.
long default_check_halfwidth(std::size_t m, std::uint64_t ceiling) {
    for (long hw = 20; hw >= 2; --hw) {
        mpz_class vol = 1;
        for (std::size_t i = 0; i < m; ++i) vol *= 2 * hw + 1;
        if (vol <= ceiling) return hw;
    }
    return 2;
}

}  // namespace

mpz_class generate_squarefree_modulus(Rng& rng, long lo, long hi) {
    for (int i = 0; i < 4096; ++i) {
        mpz_class w(static_cast<long>(rng.range(lo, hi)));
        if (is_squarefree(w)) return w;
    }
    throw KeygenFailed("could not find a squarefree modulus");
}

RecipientKeyMaterial recipient_keygen(const KeygenParams& params, Rng& rng) {
    if (params.varcount < 2)
        throw std::invalid_argument("keygen needs at least two variables");
    if (params.relation_degree < 2)
        throw std::invalid_argument("keygen needs relation degree >= 2");
    if (params.coefficient_bound < 1 || params.key_bound < 1)
        throw std::invalid_argument("keygen bounds must be positive");

    const std::size_t m = params.varcount;
    const std::uint32_t d = params.relation_degree;

    mpz_class w = 0;
    if (params.finite) {
        if (params.modulus) {
            w = *params.modulus;
            if (w < 2) throw KeygenFailed("modulus must be >= 2");
            try {
                if (!is_squarefree(w))
                    throw KeygenFailed("modulus must be squarefree");
            } catch (const FactorError& e) {
                throw KeygenFailed(std::string("cannot validate modulus: ") + e.what());
            }
        } else {
            w = generate_squarefree_modulus(rng, 15, 1'000'000);
        }
    }
    const RingSpec spec = params.finite ? residue_ring(m, w) : integer_ring(m);

    const long check_hw = default_check_halfwidth(m, params.check_ceiling);
    const long kb = std::min(params.key_bound, check_hw);

    for (int attempt = 0; attempt < params.retries; ++attempt) {
        // Roles: a pivot variable carrying the monic head, and a designated
        // variable of even degree whose sign flip yields a mirror root.
        std::size_t pivot_var = static_cast<std::size_t>(rng.below(m));
        std::size_t even_var = static_cast<std::size_t>(rng.below(m - 1));
        if (even_var >= pivot_var) ++even_var;
        if (d == 2 && even_var > pivot_var) std::swap(pivot_var, even_var);

        // Planted point; the even variable must not be its own mirror.
        std::vector<mpz_class> point(m);
        for (std::size_t j = 0; j < m; ++j) {
            if (params.finite) {
                point[j] = rng.range_mpz(0, w - 1);
            } else {
                point[j] = mpz_class(static_cast<long>(rng.range(-kb, kb)));
            }
        }
        for (int tries = 0; tries < 64; ++tries) {
            const bool mirror_fixed =
                params.finite ? mod_floor(2 * point[even_var], w) == 0
                              : point[even_var] == 0;
            if (!mirror_fixed) break;
            point[even_var] = params.finite
                                  ? rng.range_mpz(0, w - 1)
                                  : mpz_class(static_cast<long>(rng.range(-kb, kb)));
        }

        Polynomial r(spec);
        std::vector<std::uint32_t> head(m, 0);
        head[pivot_var] = d;
        r.add_term(Monomial(head), 1);

        auto random_coefficient = [&]() {
            mpz_class c(static_cast<long>(rng.range(1, params.coefficient_bound)));
            if (rng.coin()) c = -c;
            return c;
        };
        auto add_random_monomial = [&](std::size_t must_mention) {
            const auto t = static_cast<std::uint32_t>(
                rng.range(1, static_cast<long long>(d) - 1));
            std::vector<std::uint32_t> exps(m, 0);
            for (std::uint32_t unit = 0; unit < t; ++unit)
                exps[static_cast<std::size_t>(rng.below(m))] += 1;
            if (must_mention < m && exps[must_mention] == 0) {
                std::size_t donor = 0;
                while (donor < m && (exps[donor] == 0 || donor == must_mention)) ++donor;
                if (donor < m) exps[donor] -= 1;
                exps[must_mention] += 1;
            }
            // Keep the designated variable even-powered everywhere.
            if (exps[even_var] % 2 != 0) {
                exps[even_var] -= 1;
                std::size_t other = static_cast<std::size_t>(rng.below(m - 1));
                if (other >= even_var) ++other;
                exps[other] += 1;
            }
            const Monomial mono(std::move(exps));
            if (mono.is_constant()) return;
            r.add_term(mono, random_coefficient());
        };

        // Mirror-root guarantee: the even variable appears squared.
        if (d > 2 || even_var < pivot_var) {
            std::vector<std::uint32_t> sq(m, 0);
            sq[even_var] = 2;
            r.add_term(Monomial(sq), random_coefficient());
        }
        for (std::size_t j = 0; j < m; ++j)
            if (j != pivot_var && j != even_var && !r.mentions(j))
                add_random_monomial(j);
        for (std::size_t extra = 0; extra < params.extra_terms; ++extra)
            add_random_monomial(m);

        Polynomial f = r - Polynomial::constant(spec, r.eval(point));

        // Structural validation; resample on the rare degenerate draw.
        bool mentions_all = true;
        for (std::size_t j = 0; j < m; ++j) mentions_all &= f.mentions(j);
        if (!mentions_all) continue;
        const Monomial* lead = f.leading_monomial();
        if (lead == nullptr || !(*lead == Monomial([&] {
                std::vector<std::uint32_t> e(m, 0);
                e[pivot_var] = d;
                return e;
            }())))
            continue;
        if (f.coefficient(*lead) != 1) continue;
        if (f.eval(point) != 0) continue;

        Relation rel{f};

        // Non-uniqueness gate, enumerated whenever the region fits the budget.
        SearchRegion region = params.finite ? SearchRegion::residues(m)
                                            : SearchRegion::box(m, check_hw);
        const SearchLimits limits{params.check_ceiling, params.check_threads};
        if (region.volume(spec) <= params.check_ceiling) {
            if (!non_uniqueness_check(f, region, limits).pass) continue;
        }
        return RecipientKeyMaterial{RecipientPrivateKey{std::move(point), spec},
                                    std::move(rel)};
    }
    throw KeygenFailed("no admissible relation within the retry budget");
}

// ---------------------------------------------------------------------------
// Sender

namespace {

std::vector<unsigned long> finite_exponent_pool(const mpz_class& phi) {
    std::vector<unsigned long> pool;
    for (unsigned long c = 3; c <= 201 && pool.size() < 8; c += 2) {
        if (gcd(mpz_class(c), phi) == 1) pool.push_back(c);
    }
    return pool;
}

}  // namespace

SenderKeyMaterial sender_respond(const Relation& rel, const SenderParams& params,
                                 Rng& rng) {
    const RingSpec& spec = rel.spec();
    if (params.chain_length == 0)
        throw RelationRejected("chain length must be positive");
    if (!params.allow_weak) {
        if (spec.varcount < 2)
            throw RelationRejected("policy: at least two variables required");
        if (rel.f().degree() < 2)
            throw RelationRejected("policy: linear relations are decipherable");
        if (params.chain_length < 2)
            throw RelationRejected("policy: chain length below 2");
    }

    mpz_class phi = 0;
    std::vector<unsigned long> pool = params.exponent_choices;
    for (unsigned long c : pool)
        if (c == 0 || c % 2 == 0)
            throw std::invalid_argument("exponent choices must be odd and positive");
    if (pool.empty()) throw std::invalid_argument("empty exponent pool");
    if (spec.finite()) {
        Factorization fact;
        try {
            fact = factorize(*spec.modulus);
        } catch (const FactorError& e) {
            throw RelationRejected(std::string("cannot factor modulus: ") + e.what());
        }
        if (!fact.squarefree())
            throw RelationRejected("modulus is not squarefree; inversion would fail");
        phi = totient(fact);
        pool = finite_exponent_pool(phi);
        pool.push_back(1);
    }
    const bool pool_has_strong =
        std::any_of(pool.begin(), pool.end(), [](unsigned long c) { return c >= 3; });
    if (!params.allow_weak && !pool_has_strong)
        throw RelationRejected("policy: no usable exponent >= 3 for this ring");

    const std::size_t n = params.chain_length;
    const std::uint32_t pivot_deg =
        static_cast<std::uint32_t>(rel.pivot().degree());

    for (int attempt = 0; attempt < params.retries; ++attempt) {
        // Exponent schedule: random draws, one slot forced strong, and the
        // total exponent product held under the desk-scale cap.
        std::vector<unsigned long> cs(n, 1);
        for (auto& c : cs) c = rng.pick(pool);
        if (pool_has_strong && !params.allow_weak) {
            std::vector<unsigned long> strong;
            for (unsigned long c : pool)
                if (c >= 3) strong.push_back(c);
            const auto slot = static_cast<std::size_t>(rng.below(n));
            if (*std::max_element(cs.begin(), cs.end()) < 3)
                cs[slot] = strong[static_cast<std::size_t>(rng.below(strong.size()))];
        }
        auto product = [&]() {
            std::uint64_t p = 1;
            for (unsigned long c : cs) p *= c;
            return p;
        };
        for (std::size_t i = n; i-- > 0 && product() > params.max_total_exponent;) {
            std::uint64_t strongest = 0;
            std::size_t strongest_at = 0;
            std::size_t strong_count = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (cs[j] >= 3) ++strong_count;
                if (cs[j] > strongest) {
                    strongest = cs[j];
                    strongest_at = j;
                }
            }
            if (strong_count <= 1) break;  // keep the policy floor intact
            cs[strongest_at] = 1;
        }
        const std::uint64_t total_exponent = product();

        std::vector<TOperator> ops;
        ops.reserve(n);
        for (unsigned long c : cs) {
            mpz_class a(static_cast<long>(rng.range(-params.shift_bound, params.shift_bound)));
            mpz_class b(static_cast<long>(rng.range(-params.shift_bound, params.shift_bound)));
            ops.emplace_back(std::move(a), std::move(b), c);
        }
        OperatorChain chain{std::move(ops)};

        // The carrier g: one or two non-constant monomials plus an optional
        // constant.  Exponent caps keep the reduced image desk-scale.
        const std::uint64_t deg_cap = std::max<std::uint64_t>(
            1, params.max_expanded_degree / std::max<std::uint64_t>(1, total_exponent));
        const std::uint32_t max_u_deg = static_cast<std::uint32_t>(
            std::min<std::uint64_t>(params.g_degree, deg_cap));
        const std::uint32_t pivot_exp_cap = static_cast<std::uint32_t>(std::min<std::uint64_t>(
            max_u_deg, (15ull * pivot_deg) / std::max<std::uint64_t>(1, total_exponent)));

        auto sample_carrier_monomial = [&]() {
            const auto t = static_cast<std::uint32_t>(
                rng.range(1, std::max<std::uint32_t>(1, max_u_deg)));
            std::vector<std::uint32_t> exps(spec.varcount, 0);
            for (std::uint32_t unit = 0; unit < t; ++unit)
                exps[static_cast<std::size_t>(rng.below(spec.varcount))] += 1;
            // Rein in the pivot variable so reduction cannot blow up.
            const std::size_t pv = [&] {
                for (std::size_t j = 0; j < spec.varcount; ++j)
                    if (rel.pivot().exponent(j) > 0) return j;
                return std::size_t{0};
            }();
            while (exps[pv] > pivot_exp_cap) {
                exps[pv] -= 1;
                std::size_t other = static_cast<std::size_t>(rng.below(spec.varcount - 1));
                if (other >= pv) ++other;
                exps[other] += 1;
            }
            return Monomial(std::move(exps));
        };

        Polynomial g(spec);
        mpz_class cg(static_cast<long>(rng.range(1, 5)));
        if (!spec.finite() && rng.coin()) cg = -cg;
        g.add_term(sample_carrier_monomial(), cg);
        if (total_exponent <= 9 && rng.coin())
            g.add_term(sample_carrier_monomial(),
                       mpz_class(static_cast<long>(rng.range(1, 5))));
        if (rng.coin())
            g += Polynomial::constant(
                spec, mpz_class(static_cast<long>(rng.range(-9, 9))));
        if (g.is_constant()) continue;

        Polynomial h = chain_apply_symbolic(chain, g, rel, rng,
                                            params.representation_budget);
        if (!params.allow_weak && h.degree() <= g.degree()) continue;

        return SenderKeyMaterial{SenderPrivateKey{chain, g}, g, h};
    }
    throw RelationRejected("no acceptable (g, chain) within the retry budget");
}

// ---------------------------------------------------------------------------
// Reply / finish / full run

RecipientReply recipient_reply(const RecipientPrivateKey& key, const Polynomial& g,
                               const Polynomial& h) {
    if (!(g.spec() == key.spec) || !(h.spec() == key.spec))
        throw DimensionError("g/h do not match the recipient's ring");
    return RecipientReply{h.eval(key.point), SharedSecret{g.eval(key.point)}};
}

SharedSecret sender_finish(const SenderPrivateKey& key, const mpz_class& p) {
    try {
        return SharedSecret{chain_invert_numeric(key.chain, p, key.g.spec())};
    } catch (const NotAPerfectPower& e) {
        throw TranscriptCorrupted(e.what());
    }
}

ExchangeOutcome run_exchange(const ExchangeParams& params, Rng& rng) {
    RecipientKeyMaterial recipient = recipient_keygen(params.keygen, rng);
    SenderKeyMaterial sender = sender_respond(recipient.rel, params.sender, rng);
    RecipientReply reply = recipient_reply(recipient.priv, sender.g, sender.h);
    SharedSecret sender_secret = sender_finish(sender.priv, reply.p);
    Transcript transcript{recipient.rel, sender.g, sender.h, reply.p};
    return ExchangeOutcome{std::move(transcript), std::move(recipient.priv),
                           std::move(sender.priv), reply.secret, sender_secret};
}

// ---------------------------------------------------------------------------
// Built-in worked instance

Relation golden_relation() {
    const RingSpec spec = integer_ring(2);
    return Relation(parse_polynomial("x1^3 - x2^2 + 1", spec));
}

RecipientPrivateKey golden_recipient_key() {
    return RecipientPrivateKey{{mpz_class(2), mpz_class(3)}, integer_ring(2)};
}

Polynomial golden_g() {
    return parse_polynomial("x1*x2^2", integer_ring(2));
}

OperatorChain golden_chain() {
    return OperatorChain{{TOperator(1, 2, 3), TOperator(0, 3, 1)}};
}

ExchangeOutcome golden_exchange() {
    Relation rel = golden_relation();
    RecipientPrivateKey rkey = golden_recipient_key();
    Polynomial g = golden_g();
    OperatorChain chain = golden_chain();
    Rng rng(0);  // budget 0: never drawn from
    Polynomial h = chain_apply_symbolic(chain, g, rel, rng, 0);
    RecipientReply reply = recipient_reply(rkey, g, h);
    SenderPrivateKey skey{chain, g};
    SharedSecret sender_secret = sender_finish(skey, reply.p);
    Transcript transcript{rel, g, h, reply.p};
    return ExchangeOutcome{std::move(transcript), std::move(rkey), std::move(skey),
                           reply.secret, sender_secret};
}

}  // namespace diokex
