#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "eka/protocol.hpp"
#include "eka/simnet.hpp"

namespace {

using eka::AbortReason;
using eka::AdversaryBehavior;
using eka::DeliveryOrder;
using eka::MessageKind;
using eka::NetworkConfig;
using eka::Phase;
using eka::ProtocolParams;
using eka::SessionOutcome;

ProtocolParams params_for(unsigned n, unsigned t) {
    ProtocolParams p;
    p.n = n;
    p.t = t;
    return p;
}

NetworkConfig config_for(unsigned n, std::uint64_t seed) {
    NetworkConfig config;
    config.n = n;
    config.seed = seed;
    return config;
}

SessionOutcome run_honest(unsigned n, unsigned t, std::uint64_t seed,
                          NetworkConfig config = {}) {
    config.n = n;
    config.seed = seed;
    const auto p = params_for(n, t);
    auto secrets = eka::sample_secret_inputs(
        n, static_cast<std::size_t>(p.m_bits / 8),
        static_cast<std::uint32_t>(p.gamma * 1000), seed);
    return eka::run_session(config, p, std::move(secrets));
}

SessionOutcome run_with_adversary(const eka::AdversarySpec& adversary, std::uint64_t seed) {
    auto config = config_for(5, seed);
    config.adversary = adversary;
    const auto p = params_for(5, 3);
    auto secrets = eka::sample_secret_inputs(5, 48, 351000, seed);
    return eka::run_session(config, p, std::move(secrets));
}

bool same_transcript(const SessionOutcome& a, const SessionOutcome& b) {
    if (a.transcript.size() != b.transcript.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.transcript.size(); ++i) {
        const auto& x = a.transcript[i];
        const auto& y = b.transcript[i];
        if (x.round != y.round || x.sender != y.sender || x.kind != y.kind ||
            x.payload != y.payload) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("an honest session completes in five rounds with equal keys") {
    const auto outcome = run_honest(3, 2, 42);
    CHECK(outcome.rounds == 5);
    CHECK(outcome.interventions == 0);
    CHECK(outcome.adversary_view.empty());
    CHECK(outcome.all_honest_done_with_equal_keys());
    CHECK(outcome.honest_consistent());
    CHECK_FALSE(outcome.all_honest_aborted());

    REQUIRE(outcome.parties.size() == 3);
    for (const auto& party : outcome.parties) {
        CHECK(party.phase == Phase::Done);
        CHECK_FALSE(party.corrupted);
        CHECK_FALSE(party.abort_reason.has_value());
        REQUIRE(party.key.has_value());
        CHECK(party.key->size() == 16);
        CHECK(party.reconstructions.size() == 2);
    }
    CHECK(*outcome.parties[0].key == *outcome.parties[1].key);

    // The group key is the combined hash of all true input secrets.
    const auto secrets = eka::sample_secret_inputs(3, 48, 351000, 42);
    std::vector<eka::Bytes> plain;
    for (const auto& s : secrets) {
        plain.push_back(s.bytes);
    }
    CHECK(*outcome.parties[0].key == eka::derive_key(plain, 128));
}

TEST_CASE("the transcript has a fixed shape with senders ascending") {
    const auto outcome = run_honest(3, 2, 42);
    REQUIRE(outcome.transcript.size() == 15);

    std::array<int, 4> per_round{};
    int last_round = 0;
    eka::PartyId last_sender = 0;
    for (const auto& entry : outcome.transcript) {
        REQUIRE(entry.round >= 0);
        REQUIRE(entry.round <= 3);
        if (entry.round == last_round) {
            CHECK(entry.sender >= last_sender);
        } else {
            CHECK(entry.round > last_round);
        }
        last_round = entry.round;
        last_sender = entry.sender;
        ++per_round[static_cast<std::size_t>(entry.round)];

        switch (entry.round) {
            case 0:
                CHECK(entry.kind == MessageKind::Commit);
                CHECK(entry.payload.size() == 36);
                break;
            case 1:
                CHECK(entry.kind == MessageKind::Share);
                CHECK(entry.payload.size() == 49);
                break;
            case 2:
                CHECK(entry.kind == MessageKind::ShareEcho);
                CHECK(entry.payload.size() == 32 + 2 * 49);
                break;
            case 3:
                CHECK(entry.kind == MessageKind::Reveal);
                CHECK(entry.payload.size() == 52);
                break;
            default:
                break;
        }
    }
    CHECK(per_round == std::array<int, 4>{3, 6, 3, 3});
}

TEST_CASE("sessions are reproducible and seed-sensitive") {
    const auto first = run_honest(4, 3, 7);
    const auto second = run_honest(4, 3, 7);
    const auto other = run_honest(4, 3, 8);
    CHECK(same_transcript(first, second));
    CHECK(*first.parties[0].key == *second.parties[0].key);
    CHECK_FALSE(same_transcript(first, other));
    CHECK(*first.parties[0].key != *other.parties[0].key);
}

TEST_CASE("parallel stepping commits an identical transcript") {
    NetworkConfig parallel;
    parallel.parallel = true;
    const auto sequential = run_honest(5, 3, 42);
    const auto threaded = run_honest(5, 3, 42, parallel);
    CHECK(same_transcript(sequential, threaded));
    CHECK(*sequential.parties[0].key == *threaded.parties[0].key);
    CHECK(sequential.transcript.size() == 35);
}

TEST_CASE("delivery scheduling does not leak into emissions") {
    NetworkConfig shuffled;
    shuffled.delivery_order = DeliveryOrder::SeededShuffle;
    const auto ordered = run_honest(5, 3, 42);
    const auto scrambled = run_honest(5, 3, 42, shuffled);
    CHECK(same_transcript(ordered, scrambled));
    CHECK(*ordered.parties[0].key == *scrambled.parties[0].key);
}

TEST_CASE("secret sampling is deterministic per seed") {
    const auto a = eka::sample_secret_inputs(5, 48, 351000, 9);
    const auto b = eka::sample_secret_inputs(5, 48, 351000, 9);
    const auto c = eka::sample_secret_inputs(5, 48, 351000, 10);
    REQUIRE(a.size() == 5);
    for (unsigned i = 0; i < 5; ++i) {
        CHECK(a[i].party_id == i + 1);
        CHECK(a[i].bytes.size() == 48);
        CHECK(a[i].claimed_entropy.value_millibits == 351000);
        CHECK(a[i].bytes == b[i].bytes);
    }
    CHECK(a[0].bytes != c[0].bytes);
    CHECK(a[0].bytes != a[1].bytes);
}

TEST_CASE("halting after share delivery freezes mid-protocol state") {
    NetworkConfig halted;
    halted.halt_after_round = 2;
    const auto outcome = run_honest(3, 2, 42, halted);
    CHECK(outcome.rounds == 2);
    for (const auto& party : outcome.parties) {
        CHECK(party.phase == Phase::SharesSent);
        CHECK_FALSE(party.key.has_value());
    }
    for (const auto& entry : outcome.transcript) {
        CHECK(entry.kind != MessageKind::ShareEcho);
        CHECK(entry.kind != MessageKind::Reveal);
    }
}

TEST_CASE("session inputs are validated") {
    const auto p = params_for(3, 2);
    auto secrets = eka::sample_secret_inputs(3, 48, 351000, 1);

    auto wrong_n = config_for(4, 1);
    CHECK_THROWS_AS(eka::run_session(wrong_n, p, secrets), std::invalid_argument);

    auto config = config_for(3, 1);
    auto missing = secrets;
    missing.pop_back();
    CHECK_THROWS_AS(eka::run_session(config, p, missing), std::invalid_argument);

    auto reordered = secrets;
    std::swap(reordered[0], reordered[1]);
    CHECK_THROWS_AS(eka::run_session(config, p, reordered), std::invalid_argument);

    auto bad_corrupted = config;
    bad_corrupted.adversary.corrupted = {7};
    CHECK_THROWS_AS(eka::run_session(bad_corrupted, p, secrets), std::invalid_argument);

    auto bad_halt = config;
    bad_halt.halt_after_round = -1;
    CHECK_THROWS_AS(eka::run_session(bad_halt, p, secrets), std::invalid_argument);
}

TEST_CASE("passive collusion observes without disturbing the run") {
    eka::AdversarySpec spec;
    spec.behavior = AdversaryBehavior::PassiveCollude;
    spec.corrupted = {1, 2};
    const auto outcome = run_with_adversary(spec, 42);
    CHECK(outcome.interventions == 0);
    CHECK(outcome.all_honest_done_with_equal_keys());
    CHECK(outcome.parties[0].corrupted);
    CHECK(outcome.parties[2].phase == Phase::Done);
    CHECK_FALSE(outcome.adversary_view.empty());
    for (const auto& entry : outcome.adversary_view) {
        CHECK((entry.recipient == 1 || entry.recipient == 2));
        CHECK(entry.sender != entry.recipient);
    }
}

TEST_CASE("uniform share tampering aborts every honest party") {
    eka::AdversarySpec spec;
    spec.behavior = AdversaryBehavior::TamperShare;
    spec.corrupted = {2};
    const auto outcome = run_with_adversary(spec, 42);
    CHECK(outcome.interventions == 4);
    CHECK(outcome.all_honest_aborted());
    CHECK(outcome.honest_consistent());
    for (const auto& party : outcome.parties) {
        CHECK(party.phase == Phase::Aborted);
        if (party.id != 2) {
            CHECK(party.abort_reason == AbortReason::ShareVerification);
        } else {
            CHECK(party.abort_reason == AbortReason::PeerAbort);
        }
    }
}

TEST_CASE("selective share tampering is caught through the echo round") {
    eka::AdversarySpec spec;
    spec.behavior = AdversaryBehavior::TamperShare;
    spec.corrupted = {2};
    spec.target_recipients = {1};
    const auto outcome = run_with_adversary(spec, 43);
    CHECK(outcome.interventions == 1);
    CHECK(outcome.all_honest_aborted());
    CHECK(outcome.honest_consistent());
}

TEST_CASE("reveal tampering fails the opening checks") {
    eka::AdversarySpec spec;
    spec.behavior = AdversaryBehavior::TamperReveal;
    spec.corrupted = {3};
    const auto outcome = run_with_adversary(spec, 44);
    CHECK(outcome.interventions > 0);
    CHECK(outcome.all_honest_aborted());
    for (const auto& party : outcome.parties) {
        if (party.id != 3) {
            CHECK(party.abort_reason == AbortReason::RevealVerification);
        }
    }
}

TEST_CASE("commit equivocation is caught by the view comparison") {
    eka::AdversarySpec spec;
    spec.behavior = AdversaryBehavior::EquivocateCommit;
    spec.corrupted = {1};
    spec.target_recipients = {2};
    const auto outcome = run_with_adversary(spec, 45);
    CHECK(outcome.interventions > 0);
    CHECK(outcome.all_honest_aborted());
    bool view_mismatch = false;
    for (const auto& party : outcome.parties) {
        view_mismatch = view_mismatch || party.abort_reason == AbortReason::ViewMismatch;
    }
    CHECK(view_mismatch);
}

TEST_CASE("a silent party starves the commitment deadline") {
    eka::AdversarySpec spec;
    spec.behavior = AdversaryBehavior::DropMessages;
    spec.corrupted = {4};
    const auto outcome = run_with_adversary(spec, 46);
    CHECK(outcome.interventions > 0);
    CHECK(outcome.all_honest_aborted());
    for (const auto& party : outcome.parties) {
        if (party.id != 4) {
            CHECK(party.abort_reason == AbortReason::MissingCommitments);
        }
    }
}

TEST_CASE("a withheld reveal cannot take the key home") {
    eka::AdversarySpec spec;
    spec.behavior = AdversaryBehavior::DropMessages;
    spec.corrupted = {3};
    spec.drop_kinds = {MessageKind::Reveal};
    const auto outcome = run_with_adversary(spec, 47);
    CHECK(outcome.all_honest_aborted());
    for (const auto& party : outcome.parties) {
        CHECK_FALSE(party.key.has_value());
        if (party.id != 3) {
            CHECK(party.abort_reason == AbortReason::MissingReveals);
        }
    }
    // The corrupted party passed its own reveal checks, but the deferred
    // finalize round lets the honest aborts arrive before it outputs.
    CHECK(outcome.parties[2].phase == Phase::Aborted);
    CHECK(outcome.parties[2].abort_reason == AbortReason::PeerAbort);
}

TEST_CASE("below-threshold collusion sees a perfectly uniform alphabet") {
    const auto two = eka::collusion_probe(8, 5, 3, 1, 2);
    CHECK(two.honest_sources_checked == 3);
    CHECK(two.candidates_per_source == 256);
    CHECK(two.consistent_multiplicity == 1);
    CHECK(two.full_alphabet_uniform);
    CHECK_FALSE(two.unique_reconstruction);
    CHECK_FALSE(two.vacuous);

    const auto one = eka::collusion_probe(8, 5, 3, 2, 1);
    CHECK(one.consistent_multiplicity == 256);
    CHECK(one.full_alphabet_uniform);

    const auto pairwise = eka::collusion_probe(8, 4, 2, 3, 1);
    CHECK(pairwise.consistent_multiplicity == 1);
    CHECK(pairwise.full_alphabet_uniform);

    const auto narrow = eka::collusion_probe(4, 5, 3, 4, 2);
    CHECK(narrow.candidates_per_source == 16);
    CHECK(narrow.consistent_multiplicity == 1);
    CHECK(narrow.full_alphabet_uniform);
}

TEST_CASE("threshold-many colluders pin each honest secret uniquely") {
    const auto report = eka::collusion_probe(8, 5, 3, 5, 3);
    CHECK(report.unique_reconstruction);
    CHECK_FALSE(report.full_alphabet_uniform);
    CHECK(report.honest_sources_checked == 2);
}

TEST_CASE("a probe without colluders is flagged vacuous") {
    const auto report = eka::collusion_probe(8, 5, 3, 6, 0);
    CHECK(report.vacuous);
    CHECK(report.honest_sources_checked == 0);
    CHECK_FALSE(report.unique_reconstruction);
}

TEST_CASE("the probe rejects configurations it cannot enumerate") {
    CHECK_THROWS_AS(eka::collusion_probe(0, 5, 3, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(eka::collusion_probe(9, 5, 3, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(eka::collusion_probe(8, 1, 3, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(eka::collusion_probe(8, 7, 3, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(eka::collusion_probe(8, 5, 4, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(eka::collusion_probe(8, 5, 3, 1, 5), std::invalid_argument);
}

TEST_CASE("the adversarial matrix finds no wins and no split outcomes") {
    const std::array<AdversaryBehavior, 5> behaviors = {
        AdversaryBehavior::PassiveCollude, AdversaryBehavior::TamperShare,
        AdversaryBehavior::TamperReveal, AdversaryBehavior::EquivocateCommit,
        AdversaryBehavior::DropMessages,
    };
    const auto summary = eka::adversarial_matrix(params_for(5, 3), behaviors, 42);
    CHECK(summary.runs.size() == 150);
    CHECK(summary.wins == 0);
    CHECK(summary.consistent);
    CHECK(summary.out_of_model_secrecy_break);

    for (const auto& run : summary.runs) {
        CHECK_FALSE(run.invalid_share_accepted);
        CHECK_FALSE(run.split_outcome);
        if (run.behavior == AdversaryBehavior::PassiveCollude) {
            CHECK(run.all_honest_done);
            CHECK(run.interventions == 0);
        } else {
            CHECK(run.all_honest_aborted);
            CHECK(run.interventions > 0);
        }
        CHECK(!run.corrupted.empty());
        CHECK(run.corrupted.size() <= 2);
        CHECK_FALSE(run.variant.empty());
    }
}

TEST_CASE("behavior and order names round-trip through their parsers") {
    for (const auto behavior :
         {AdversaryBehavior::None, AdversaryBehavior::PassiveCollude,
          AdversaryBehavior::TamperShare, AdversaryBehavior::TamperReveal,
          AdversaryBehavior::EquivocateCommit, AdversaryBehavior::DropMessages}) {
        const auto parsed = eka::behavior_from_string(eka::to_string(behavior));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == behavior);
    }
    CHECK(std::string(eka::to_string(AdversaryBehavior::TamperShare)) == "tamper_share");
    CHECK(std::string(eka::to_string(DeliveryOrder::RoundRobin)) == "round_robin");
    CHECK(std::string(eka::to_string(DeliveryOrder::SeededShuffle)) == "seeded_shuffle");
    CHECK(eka::delivery_order_from_string("seeded_shuffle") == DeliveryOrder::SeededShuffle);
    CHECK_FALSE(eka::delivery_order_from_string("fifo").has_value());
    CHECK_FALSE(eka::behavior_from_string("replay").has_value());
    CHECK(eka::message_kind_from_string("share_echo") == MessageKind::ShareEcho);
    CHECK_FALSE(eka::message_kind_from_string("gossip").has_value());

    eka::AdversarySpec spec;
    spec.corrupted = {2, 4};
    CHECK(spec.is_corrupted(2));
    CHECK(spec.is_corrupted(4));
    CHECK_FALSE(spec.is_corrupted(3));
}
