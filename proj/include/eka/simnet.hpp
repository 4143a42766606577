#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eka/bytes.hpp"
#include "eka/params.hpp"
#include "eka/protocol.hpp"
#include "eka/sharing.hpp"

namespace eka {

// Simulated authenticated network.  The bus stamps every message with its true
// origin before delivery, so sender fields cannot be forged; the adversary acts
// only through transformation hooks on traffic leaving corrupted parties.

enum class DeliveryOrder : std::uint8_t {
    RoundRobin,
    SeededShuffle,
};

enum class AdversaryBehavior : std::uint8_t {
    None,
    PassiveCollude,
    TamperShare,
    TamperReveal,
    EquivocateCommit,
    DropMessages,
};

const char* to_string(DeliveryOrder order);
const char* to_string(AdversaryBehavior behavior);
std::optional<DeliveryOrder> delivery_order_from_string(std::string_view name);
std::optional<AdversaryBehavior> behavior_from_string(std::string_view name);
std::optional<MessageKind> message_kind_from_string(std::string_view name);

// Deterministic per-party secret material: secret_len uniform bytes each and a
// fixed certified entropy claim, drawn from a stream that never aliases the
// session's own fork labels under the same seed.
std::vector<SecretInput> sample_secret_inputs(unsigned n, std::size_t secret_len,
                                              std::uint32_t claimed_millibits,
                                              std::uint64_t seed);

struct AdversarySpec {
    std::vector<PartyId> corrupted;
    AdversaryBehavior behavior = AdversaryBehavior::None;

    // Recipients the behavior acts toward.  Empty means every recipient, so a
    // tampered broadcast stays a single consistent emission; a non-empty list
    // splits broadcasts per recipient to deliver divergent copies.
    std::vector<PartyId> target_recipients;

    // DropMessages only: which kinds vanish.  Empty means all kinds.
    std::vector<MessageKind> drop_kinds;

    // TamperShare only: also corrupt the echoed copies of relayed shares.
    bool tamper_echo = false;

    bool is_corrupted(PartyId id) const;
};

struct NetworkConfig {
    unsigned n = 5;
    DeliveryOrder delivery_order = DeliveryOrder::RoundRobin;
    std::uint64_t seed = 0;
    AdversarySpec adversary;

    // Run per-party handler and deadline steps on worker threads.  Emissions
    // are committed in party-id order in both modes, so transcripts are
    // identical with and without this flag.
    bool parallel = false;

    // Stop after delivering round N, before that round's deadline fires.
    // Zero runs the session to completion.
    int halt_after_round = 0;
};

struct TranscriptEntry {
    int round = 0;
    PartyId sender = 0;
    MessageKind kind = MessageKind::Abort;
    Bytes payload;
};

struct ViewEntry {
    int round = 0;
    PartyId recipient = 0;
    PartyId sender = 0;
    MessageKind kind = MessageKind::Abort;
    Bytes payload;
};

struct PartyOutcome {
    PartyId id = 0;
    bool corrupted = false;
    Phase phase = Phase::Init;
    std::optional<AbortReason> abort_reason;
    std::optional<Bytes> key;
    std::map<PartyId, Bytes> reconstructions;
};

struct SessionOutcome {
    std::vector<PartyOutcome> parties;

    // Every emission that entered the bus, post adversary hook, in commit
    // order: rounds ascending, sender id ascending within a round.
    std::vector<TranscriptEntry> transcript;

    // Every delivery whose recipient is corrupted, tagged with the round it
    // arrives in.
    std::vector<ViewEntry> adversary_view;

    int rounds = 0;
    int interventions = 0;

    bool all_honest_done_with_equal_keys() const;
    bool all_honest_aborted() const;
    bool honest_consistent() const;
};

// Runs one full session.  secrets must hold one input per party, ordered by
// party id starting at 1.
SessionOutcome run_session(const NetworkConfig& config, const ProtocolParams& params,
                           std::vector<SecretInput> secrets);

// Passive collusion census at protocol level: halts a session after share
// delivery, takes the colluders' pooled view of each honest dealer, and
// enumerates every sharing polynomial over the field to count how many are
// consistent with that view per candidate secret.  Below the threshold the
// count must be identical for every value of the secret alphabet; at the
// threshold exactly one candidate survives.
struct ProbeReport {
    unsigned secret_bits = 0;
    unsigned n = 0;
    unsigned t = 0;
    unsigned colluder_count = 0;
    bool vacuous = false;
    std::uint64_t honest_sources_checked = 0;
    std::uint64_t candidates_per_source = 0;
    std::uint64_t consistent_multiplicity = 0;
    bool full_alphabet_uniform = false;
    bool unique_reconstruction = false;
};

ProbeReport collusion_probe(unsigned secret_bits, unsigned n, unsigned t,
                            std::uint64_t seed, unsigned colluder_count);

// One adversarial session with its two win conditions evaluated against the
// dealers' true secrets.
struct AttackRun {
    AdversaryBehavior behavior = AdversaryBehavior::None;
    std::vector<PartyId> corrupted;
    std::string variant;
    bool invalid_share_accepted = false;
    bool split_outcome = false;
    bool all_honest_aborted = false;
    bool all_honest_done = false;
    int interventions = 0;
};

struct MatrixSummary {
    std::vector<AttackRun> runs;
    std::uint64_t wins = 0;
    bool consistent = true;

    // Threshold complement, run when the instance is small enough to
    // enumerate: t colluders pin each honest secret uniquely.  Informational;
    // does not count toward wins.
    bool out_of_model_secrecy_break = false;
};

// Exercises every corrupted set of size 1..t-1 against each behavior, in
// uniform and selective targeting variants, and checks that no run accepts an
// invalid share or splits the honest parties' outcome.
MatrixSummary adversarial_matrix(const ProtocolParams& params,
                                 std::span<const AdversaryBehavior> behaviors,
                                 std::uint64_t seed);

struct Scenario {
    unsigned n = 5;
    unsigned t = 3;
    std::uint64_t seed = 0;
    DeliveryOrder delivery_order = DeliveryOrder::RoundRobin;
    ProtocolParams params;
    AdversarySpec adversary;
};

}  // namespace eka
