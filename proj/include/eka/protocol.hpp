#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "eka/bytes.hpp"
#include "eka/commitment.hpp"
#include "eka/gf256.hpp"
#include "eka/params.hpp"
#include "eka/rng.hpp"
#include "eka/sharing.hpp"

namespace eka {

enum class Phase : std::uint8_t {
    Init,
    Committed,
    SharesSent,
    Verified,
    Revealed,
    Done,
    Aborted,
};

enum class MessageKind : std::uint8_t {
    Commit,
    Share,
    ShareEcho,
    Reveal,
    Abort,
};

enum class AbortReason : std::uint8_t {
    PeerAbort = 0,
    MissingCommitments = 1,
    MissingShares = 2,
    ViewMismatch = 3,
    ShareVerification = 4,
    LowEntropyClaim = 5,
    MissingReveals = 6,
    RevealVerification = 7,
    MalformedMessage = 8,
};

const char* to_string(Phase phase);
const char* to_string(MessageKind kind);
const char* to_string(AbortReason reason);

struct ProtocolMessage {
    MessageKind kind = MessageKind::Abort;
    PartyId sender = 0;
    Bytes payload;
};

// A message queued for the bus; no recipient means broadcast to everyone else.
struct Outbound {
    ProtocolMessage message;
    std::optional<PartyId> recipient;
};

struct CommitBody {
    Bytes digest;
    std::uint32_t millibits = 0;
};

struct ShareBody {
    PartyId recipient = 0;
    Bytes share;
};

struct EchoBody {
    Bytes view_digest;
    std::vector<std::pair<PartyId, Bytes>> shares;  // ascending source id
};

struct RevealBody {
    Bytes secret;
    std::uint32_t millibits = 0;
};

Bytes encode_commit(const CommitBody& body);
Bytes encode_share(const ShareBody& body);
Bytes encode_echo(const EchoBody& body);
Bytes encode_reveal(const RevealBody& body);
Bytes encode_abort(AbortReason reason);

// Decoders throw std::invalid_argument on any structural defect.
CommitBody decode_commit(std::span<const std::uint8_t> payload);
ShareBody decode_share(std::span<const std::uint8_t> payload, std::size_t share_len);
EchoBody decode_echo(std::span<const std::uint8_t> payload, std::size_t share_len);
RevealBody decode_reveal(std::span<const std::uint8_t> payload, std::size_t secret_len);
AbortReason decode_abort(std::span<const std::uint8_t> payload);

struct SourceVerdict {
    enum class Result : std::uint8_t {
        Pass,
        MissingCommitment,
        MissingShares,
        CommitmentMismatch,
        EntropyBelowThreshold,
    };
    Result result = Result::MissingShares;
    Bytes reconstructed;  // set when reconstruction succeeded
};

const char* to_string(SourceVerdict::Result result);

// One party's state machine. The orchestrator drives it with start(), one
// handle() per delivered message, and one on_deadline() per round; each call
// returns the messages to put on the bus. Five deadlines take an honest run
// to completion: commits in, shares out / shares in, echoes out / echoes in,
// verify and reveal / reveals in, key computed / finalize. The key is held
// back one full round after reveal verification so that a peer abort raised
// at the reveal deadline still reaches everyone before anyone outputs.
class Party {
public:
    Party(const ProtocolParams& params, SecretInput own_secret, Rng rng);

    std::vector<Outbound> start();
    std::vector<Outbound> handle(const ProtocolMessage& msg);
    std::vector<Outbound> on_deadline();

    // Reconstructs the named source from the shares seen so far and checks it
    // against the source's commitment and entropy claim.
    SourceVerdict verify_source(PartyId source) const;

    PartyId id() const { return secret_.party_id; }
    Phase phase() const { return phase_; }
    std::optional<AbortReason> abort_reason() const { return abort_reason_; }
    const std::optional<Bytes>& derived_key() const { return derived_key_; }
    const std::map<PartyId, Bytes>& reconstructions() const { return reconstructed_; }
    bool terminal() const { return phase_ == Phase::Done || phase_ == Phase::Aborted; }

private:
    std::vector<Outbound> abort(AbortReason reason);
    Bytes commit_view_digest() const;
    std::vector<Outbound> deadline_send_shares();
    std::vector<Outbound> deadline_send_echo();
    std::vector<Outbound> deadline_verify_and_reveal();
    std::vector<Outbound> deadline_check_reveals();

    ProtocolParams params_;
    SecretInput secret_;
    Rng rng_;
    Phase phase_ = Phase::Init;
    int tick_ = 0;
    Commitment own_commitment_;
    std::map<PartyId, Commitment> commitments_;
    std::map<PartyId, ShareBundle> direct_shares_;
    std::map<PartyId, EchoBody> echoes_;
    std::map<PartyId, Bytes> reconstructed_;
    std::map<PartyId, RevealBody> reveals_;
    std::optional<Bytes> pending_key_;
    std::optional<Bytes> derived_key_;
    std::optional<AbortReason> abort_reason_;
};

// xor of all secrets, then a domain-separated hash down to kappa bits.
// Invariant in the input order.
Bytes derive_key(std::span<const Bytes> secrets, std::int64_t kappa_bits);

// Byte-wise field linear combination sum(c_i * s_i) instead of the xor; with
// every coefficient 0x01 this reduces to derive_key.
Bytes derive_linear_key(std::span<const Bytes> secrets,
                        std::span<const FieldElement> coeffs, std::int64_t kappa_bits);

// Folds two kappa-bit keys from independent mechanisms into one.
Bytes hybrid_combine(std::span<const std::uint8_t> k_first,
                     std::span<const std::uint8_t> k_second);

}  // namespace eka
