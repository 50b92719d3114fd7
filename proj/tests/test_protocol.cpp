#include <doctest.h>

#include "diokex/experiment.hpp"
#include "diokex/intmath.hpp"
#include "diokex/protocol.hpp"
#include "test_support.hpp"

using namespace diokex;

TEST_CASE("golden exchange replays the worked example") {
    const ExchangeOutcome outcome = golden_exchange();
    CHECK(outcome.transcript.h ==
          parse_polynomial("x2^8 - x2^6 + 12*x1^2*x2^4 + 48*x1*x2^2 + 66",
                           integer_ring(2)));
    CHECK(outcome.transcript.p == 10650);
    CHECK(outcome.recipient_secret.value == 18);
    CHECK(outcome.sender_secret.value == 18);
}

TEST_CASE("wire messages are byte-exact") {
    const ExchangeOutcome outcome = golden_exchange();
    CHECK(outcome.transcript.f_message() == "DIOKEX/1 F x1^3 - x2^2 + 1");
    CHECK(outcome.transcript.gh_message() ==
          "DIOKEX/1 GH x1*x2^2 ; x2^8 - x2^6 + 12*x1^2*x2^4 + 48*x1*x2^2 + 66");
    CHECK(outcome.transcript.p_message() == "DIOKEX/1 P 10650");

    const Relation rel = parse_f_message("DIOKEX/1 F x1^3 - x2^2 + 1");
    CHECK(rel.f() == golden_relation().f());
    CHECK_FALSE(rel.spec().finite());

    const Relation finite_rel = parse_f_message("DIOKEX/1 F x1^3 + 14*x2^2 + 1 mod 15");
    CHECK(finite_rel.spec().finite());
    CHECK(*finite_rel.spec().modulus == 15);
    CHECK(encode_f_message(finite_rel) == "DIOKEX/1 F x1^3 + 14*x2^2 + 1 mod 15");

    const auto [g, h] = parse_gh_message(outcome.transcript.gh_message(), integer_ring(2));
    CHECK(g == golden_g());
    CHECK(h == outcome.transcript.h);
    CHECK(parse_p_message("DIOKEX/1 P 10650") == 10650);
    CHECK(parse_p_message("DIOKEX/1 P -7") == -7);

    CHECK_THROWS_AS(parse_f_message("HELLO"), ParseError);
    CHECK_THROWS_AS(parse_f_message("DIOKEX/1 F "), ParseError);
    CHECK_THROWS_AS(parse_f_message("DIOKEX/1 F 12"), ParseError);
    CHECK_THROWS_AS(parse_p_message("DIOKEX/1 P ten"), ParseError);
    CHECK_THROWS_AS(parse_gh_message("DIOKEX/1 GH x1", integer_ring(2)), ParseError);
}

TEST_CASE("key files round trip") {
    const RecipientPrivateKey rkey = golden_recipient_key();
    CHECK(encode_recipient_key(rkey) == "DIOKEX/1 RKEY 2,3");
    const RecipientPrivateKey rback = parse_recipient_key(encode_recipient_key(rkey));
    CHECK(rback.point == rkey.point);
    CHECK(rback.spec == rkey.spec);

    const SenderPrivateKey skey{golden_chain(), golden_g()};
    CHECK(encode_sender_key(skey) == "DIOKEX/1 SKEY T[1,2;3],T[0,3;1] ; x1*x2^2");
    const SenderPrivateKey sback = parse_sender_key(encode_sender_key(skey));
    CHECK(sback.chain.to_text() == skey.chain.to_text());
    CHECK(sback.g == skey.g);

    const RecipientPrivateKey finite_key{{mpz_class(4), mpz_class(9)},
                                         residue_ring(2, 15)};
    CHECK(encode_recipient_key(finite_key) == "DIOKEX/1 RKEY 4,9 mod 15");
    const RecipientPrivateKey fback = parse_recipient_key(encode_recipient_key(finite_key));
    CHECK(fback.spec == finite_key.spec);

    CHECK_THROWS_AS(parse_recipient_key("DIOKEX/1 RKEY "), ParseError);
    CHECK_THROWS_AS(parse_sender_key("DIOKEX/1 SKEY T[1,2;3]"), ParseError);
}

TEST_CASE("keygen plants a root and passes its own gate") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        Rng rng(seed);
        KeygenParams params;
        params.varcount = 2 + static_cast<std::size_t>(seed % 3);
        const RecipientKeyMaterial material = recipient_keygen(params, rng);
        CHECK(material.rel.f().eval(material.priv.point) == 0);
        CHECK(material.rel.f().coefficient(material.rel.pivot()) == 1);
        for (std::size_t j = 0; j < params.varcount; ++j)
            CHECK(material.rel.f().mentions(j));
        // Same region the keygen gate scans: halfwidth 20 shrinking to 15 at m = 4.
        const SearchRegion region =
            SearchRegion::box(params.varcount, params.varcount == 4 ? 15 : 20);
        CHECK(non_uniqueness_check(material.rel.f(), region).pass);
    }
}

TEST_CASE("keygen in finite mode generates squarefree moduli") {
    for (std::uint64_t seed = 100; seed < 106; ++seed) {
        Rng rng(seed);
        KeygenParams params;
        params.finite = true;
        const RecipientKeyMaterial material = recipient_keygen(params, rng);
        REQUIRE(material.priv.spec.finite());
        const mpz_class w = *material.priv.spec.modulus;
        CHECK(w >= 15);
        CHECK(is_squarefree(w));
        CHECK(material.rel.f().eval(material.priv.point) == 0);
    }
    Rng rng(1);
    KeygenParams fixed;
    fixed.finite = true;
    fixed.modulus = 12;  // 12 = 2^2 * 3
    CHECK_THROWS_AS(recipient_keygen(fixed, rng), KeygenFailed);
    fixed.modulus = 3901;  // 47 * 83
    const RecipientKeyMaterial ok = recipient_keygen(fixed, rng);
    CHECK(*ok.priv.spec.modulus == 3901);
}

TEST_CASE("keygen validates its configuration") {
    Rng rng(0);
    KeygenParams params;
    params.varcount = 1;
    CHECK_THROWS_AS(recipient_keygen(params, rng), std::invalid_argument);
}

TEST_CASE("sender policy floors") {
    Rng rng(8);
    const Relation rel = golden_relation();

    SenderParams weak;
    weak.chain_length = 1;
    CHECK_THROWS_AS(sender_respond(rel, weak, rng), RelationRejected);

    SenderParams linear_only;
    linear_only.exponent_choices = {1};
    CHECK_THROWS_AS(sender_respond(rel, linear_only, rng), RelationRejected);

    const Relation linear_rel(parse_polynomial("x1 - x2 + 1", integer_ring(2)));
    CHECK_THROWS_AS(sender_respond(linear_rel, SenderParams{}, rng), RelationRejected);

    SenderParams permissive;
    permissive.chain_length = 1;
    permissive.exponent_choices = {1};
    permissive.allow_weak = true;
    const SenderKeyMaterial material = sender_respond(linear_rel, permissive, rng);
    CHECK(material.priv.chain.size() == 1);
}

TEST_CASE("sender rejects a non-squarefree modulus") {
    Rng rng(3);
    const Relation rel(parse_polynomial("x1^2 + x2", residue_ring(2, 12)));
    CHECK_THROWS_AS(sender_respond(rel, SenderParams{}, rng), RelationRejected);
}

TEST_CASE("sender output respects the complexity floor") {
    Rng rng(21);
    const Relation rel = golden_relation();
    for (int i = 0; i < 10; ++i) {
        const SenderKeyMaterial material = sender_respond(rel, SenderParams{}, rng);
        CHECK(material.h.degree() > material.g.degree());
        CHECK(material.priv.chain.size() >= 2);
        bool strong = false;
        for (const TOperator& op : material.priv.chain.ops()) {
            CHECK(op.exponent % 2 == 1);
            strong |= op.exponent >= 3;
        }
        CHECK(strong);
        CHECK(ideal_equivalent(
            material.h,
            chain_apply_symbolic(material.priv.chain, material.g, rel, rng, 0), rel));
    }
}

TEST_CASE("recipient reply evaluates both public polynomials") {
    const auto [p, secret] = recipient_reply(
        golden_recipient_key(), golden_g(),
        parse_polynomial("x2^8 - x2^6 + 12*x1^2*x2^4 + 48*x1*x2^2 + 66",
                         integer_ring(2)));
    CHECK(p == 10650);
    CHECK(secret.value == 18);

    CHECK_THROWS_AS(recipient_reply(golden_recipient_key(),
                                    parse_polynomial("x1", integer_ring(3)),
                                    parse_polynomial("x1", integer_ring(3))),
                    DimensionError);
}

TEST_CASE("sender finish inverts the chain and flags tampering") {
    const SenderPrivateKey key{golden_chain(), golden_g()};
    CHECK(sender_finish(key, 10650).value == 18);
    CHECK_THROWS_AS(sender_finish(key, 10651), TranscriptCorrupted);

    const SenderPrivateKey identity{OperatorChain{{TOperator(0, 0, 1)}}, golden_g()};
    CHECK(sender_finish(identity, 424242).value == 424242);
}

TEST_CASE("random exchanges agree on the secret") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Rng rng = Rng::derived(7, seed);
        const ExchangeParams params = sample_exchange_params(rng, seed % 2 == 1);
        const ExchangeOutcome outcome = run_exchange(params, rng);
        CHECK(outcome.recipient_secret.value == outcome.sender_secret.value);
        if (seed % 2 == 1) {
            REQUIRE(outcome.transcript.spec().finite());
            const mpz_class& w = *outcome.transcript.spec().modulus;
            CHECK(outcome.transcript.p >= 0);
            CHECK(outcome.transcript.p < w);
        }
    }
}

TEST_CASE("transcripts carry only public data") {
    const ExchangeOutcome golden = golden_exchange();
    CHECK(golden.transcript.to_text() ==
          "DIOKEX/1 F x1^3 - x2^2 + 1\n"
          "DIOKEX/1 GH x1*x2^2 ; x2^8 - x2^6 + 12*x1^2*x2^4 + 48*x1*x2^2 + 66\n"
          "DIOKEX/1 P 10650\n");

    Rng rng(11);
    const ExchangeOutcome outcome = run_exchange(sample_exchange_params(rng, false), rng);
    const std::string text = outcome.transcript.to_text();
    CHECK(text.find("T[") == std::string::npos);    // no trapdoor parameters
    CHECK(text.find("RKEY") == std::string::npos);  // no private point
    CHECK(text.find("SKEY") == std::string::npos);
    // Exactly the three protocol lines, each parseable as its message type.
    std::size_t lines = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t eol = text.find('\n', pos);
        REQUIRE(eol != std::string::npos);
        const std::string line = text.substr(pos, eol - pos);
        if (lines == 0) CHECK_NOTHROW(parse_f_message(line));
        if (lines == 1)
            CHECK_NOTHROW(parse_gh_message(line, outcome.transcript.spec()));
        if (lines == 2) CHECK_NOTHROW(parse_p_message(line));
        ++lines;
        pos = eol + 1;
    }
    CHECK(lines == 3);
}

TEST_CASE("same seed reproduces the same transcript") {
    auto run = [](std::uint64_t seed) {
        Rng rng(seed);
        ExchangeParams params;
        params.keygen.varcount = 3;
        return run_exchange(params, rng).transcript.to_text();
    };
    CHECK(run(99) == run(99));
    CHECK(run(99) != run(100));
}
