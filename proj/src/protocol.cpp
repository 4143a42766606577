#include "eka/protocol.hpp"

#include <stdexcept>
#include <utility>

#include "eka/gf256.hpp"
#include "eka/hash.hpp"
#include "eka/kernels.hpp"

namespace eka {

const char* to_string(Phase phase) {
    switch (phase) {
        case Phase::Init: return "init";
        case Phase::Committed: return "committed";
        case Phase::SharesSent: return "shares_sent";
        case Phase::Verified: return "verified";
        case Phase::Revealed: return "revealed";
        case Phase::Done: return "done";
        case Phase::Aborted: return "aborted";
    }
    return "unknown";
}

const char* to_string(MessageKind kind) {
    switch (kind) {
        case MessageKind::Commit: return "commit";
        case MessageKind::Share: return "share";
        case MessageKind::ShareEcho: return "share_echo";
        case MessageKind::Reveal: return "reveal";
        case MessageKind::Abort: return "abort";
    }
    return "unknown";
}

const char* to_string(AbortReason reason) {
    switch (reason) {
        case AbortReason::PeerAbort: return "peer_abort";
        case AbortReason::MissingCommitments: return "missing_commitments";
        case AbortReason::MissingShares: return "missing_shares";
        case AbortReason::ViewMismatch: return "view_mismatch";
        case AbortReason::ShareVerification: return "share_verification";
        case AbortReason::LowEntropyClaim: return "low_entropy_claim";
        case AbortReason::MissingReveals: return "missing_reveals";
        case AbortReason::RevealVerification: return "reveal_verification";
        case AbortReason::MalformedMessage: return "malformed_message";
    }
    return "unknown";
}

const char* to_string(SourceVerdict::Result result) {
    switch (result) {
        case SourceVerdict::Result::Pass: return "pass";
        case SourceVerdict::Result::MissingCommitment: return "missing_commitment";
        case SourceVerdict::Result::MissingShares: return "missing_shares";
        case SourceVerdict::Result::CommitmentMismatch: return "commitment_mismatch";
        case SourceVerdict::Result::EntropyBelowThreshold: return "entropy_below_threshold";
    }
    return "unknown";
}

Bytes encode_commit(const CommitBody& body) {
    Bytes out;
    out.reserve(body.digest.size() + 4);
    out.insert(out.end(), body.digest.begin(), body.digest.end());
    append_u32_be(out, body.millibits);
    return out;
}

CommitBody decode_commit(std::span<const std::uint8_t> payload) {
    if (payload.size() != kCommitmentDigestLen + 4) {
        throw std::invalid_argument("commit payload: wrong length");
    }
    CommitBody body;
    body.digest.assign(payload.begin(), payload.begin() + kCommitmentDigestLen);
    body.millibits = read_u32_be(payload.subspan(kCommitmentDigestLen));
    return body;
}

Bytes encode_share(const ShareBody& body) {
    Bytes out;
    out.reserve(1 + body.share.size());
    out.push_back(body.recipient);
    out.insert(out.end(), body.share.begin(), body.share.end());
    return out;
}

ShareBody decode_share(std::span<const std::uint8_t> payload, std::size_t share_len) {
    if (payload.size() != 1 + share_len) {
        throw std::invalid_argument("share payload: wrong length");
    }
    if (payload[0] == 0) {
        throw std::invalid_argument("share payload: zero recipient");
    }
    ShareBody body;
    body.recipient = payload[0];
    body.share.assign(payload.begin() + 1, payload.end());
    return body;
}

Bytes encode_echo(const EchoBody& body) {
    Bytes out;
    out.reserve(body.view_digest.size() + body.shares.size() * 32);
    out.insert(out.end(), body.view_digest.begin(), body.view_digest.end());
    for (const auto& [source, share] : body.shares) {
        out.push_back(source);
        out.insert(out.end(), share.begin(), share.end());
    }
    return out;
}

EchoBody decode_echo(std::span<const std::uint8_t> payload, std::size_t share_len) {
    if (payload.size() < kCommitmentDigestLen) {
        throw std::invalid_argument("echo payload: too short");
    }
    const std::size_t entry_len = 1 + share_len;
    if ((payload.size() - kCommitmentDigestLen) % entry_len != 0) {
        throw std::invalid_argument("echo payload: ragged entries");
    }
    EchoBody body;
    body.view_digest.assign(payload.begin(), payload.begin() + kCommitmentDigestLen);
    unsigned last_source = 0;
    for (std::size_t off = kCommitmentDigestLen; off < payload.size(); off += entry_len) {
        const PartyId source = payload[off];
        if (source == 0 || source <= last_source) {
            throw std::invalid_argument("echo payload: source ids must ascend");
        }
        last_source = source;
        body.shares.emplace_back(
            source, Bytes(payload.begin() + off + 1, payload.begin() + off + 1 + share_len));
    }
    return body;
}

Bytes encode_reveal(const RevealBody& body) {
    Bytes out;
    out.reserve(body.secret.size() + 4);
    out.insert(out.end(), body.secret.begin(), body.secret.end());
    append_u32_be(out, body.millibits);
    return out;
}

RevealBody decode_reveal(std::span<const std::uint8_t> payload, std::size_t secret_len) {
    if (payload.size() != secret_len + 4) {
        throw std::invalid_argument("reveal payload: wrong length");
    }
    RevealBody body;
    body.secret.assign(payload.begin(), payload.begin() + secret_len);
    body.millibits = read_u32_be(payload.subspan(secret_len));
    return body;
}

Bytes encode_abort(AbortReason reason) {
    return Bytes{static_cast<std::uint8_t>(reason)};
}

AbortReason decode_abort(std::span<const std::uint8_t> payload) {
    if (payload.size() != 1 ||
        payload[0] > static_cast<std::uint8_t>(AbortReason::MalformedMessage)) {
        throw std::invalid_argument("abort payload: malformed");
    }
    return static_cast<AbortReason>(payload[0]);
}

namespace {

Outbound outbound(MessageKind kind, PartyId sender, Bytes payload,
                  std::optional<PartyId> to = std::nullopt) {
    Outbound o;
    o.message.kind = kind;
    o.message.sender = sender;
    o.message.payload = std::move(payload);
    o.recipient = to;
    return o;
}

}  // namespace

Party::Party(const ProtocolParams& params, SecretInput own_secret, Rng rng)
    : params_(params), secret_(std::move(own_secret)), rng_(rng) {
    params_.check_structure();
    if (params_.lambda != static_cast<std::int64_t>(kCommitmentDigestLen) * 8) {
        throw std::invalid_argument("party: wire format requires a 256-bit hash");
    }
    if (params_.kappa % 8 != 0) {
        throw std::invalid_argument("party: kappa must be a whole number of bytes");
    }
    if (secret_.party_id < 1 || static_cast<std::int64_t>(secret_.party_id) > params_.n) {
        throw std::invalid_argument("party: id out of range");
    }
    if (secret_.bytes.size() * 8 != static_cast<std::size_t>(params_.m_bits)) {
        throw std::invalid_argument("party: secret length does not match params");
    }
    own_commitment_ = commit(secret_);
}

std::vector<Outbound> Party::start() {
    if (phase_ != Phase::Init) {
        return {};
    }
    phase_ = Phase::Committed;
    CommitBody body{own_commitment_.digest, own_commitment_.claimed_entropy_millibits};
    return {outbound(MessageKind::Commit, id(), encode_commit(body))};
}

std::vector<Outbound> Party::handle(const ProtocolMessage& msg) {
    if (terminal()) {
        return {};
    }
    if (msg.sender == id() || msg.sender < 1 ||
        static_cast<std::int64_t>(msg.sender) > params_.n) {
        return {};
    }
    const std::size_t share_len = secret_.bytes.size();
    try {
        switch (msg.kind) {
            case MessageKind::Commit: {
                if (tick_ >= 1 || commitments_.count(msg.sender) != 0) {
                    return {};
                }
                CommitBody body = decode_commit(msg.payload);
                Commitment c;
                c.digest = std::move(body.digest);
                c.party_id = msg.sender;
                c.claimed_entropy_millibits = body.millibits;
                commitments_.emplace(msg.sender, std::move(c));
                return {};
            }
            case MessageKind::Share: {
                if (tick_ >= 2 || direct_shares_.count(msg.sender) != 0) {
                    return {};
                }
                ShareBody body = decode_share(msg.payload, share_len);
                if (body.recipient != id()) {
                    return {};
                }
                ShareBundle bundle;
                bundle.source_id = msg.sender;
                bundle.recipient_id = id();
                bundle.share_bytes = std::move(body.share);
                direct_shares_.emplace(msg.sender, std::move(bundle));
                return {};
            }
            case MessageKind::ShareEcho: {
                if (tick_ >= 3 || echoes_.count(msg.sender) != 0) {
                    return {};
                }
                EchoBody body = decode_echo(msg.payload, share_len);
                for (const auto& [source, share] : body.shares) {
                    if (source == msg.sender ||
                        static_cast<std::int64_t>(source) > params_.n) {
                        throw std::invalid_argument("echo payload: bad source id");
                    }
                }
                echoes_.emplace(msg.sender, std::move(body));
                return {};
            }
            case MessageKind::Reveal: {
                if (tick_ >= 4 || reveals_.count(msg.sender) != 0) {
                    return {};
                }
                reveals_.emplace(msg.sender, decode_reveal(msg.payload, share_len));
                return {};
            }
            case MessageKind::Abort: {
                decode_abort(msg.payload);
                return abort(AbortReason::PeerAbort);
            }
        }
    } catch (const std::invalid_argument&) {
        return abort(AbortReason::MalformedMessage);
    }
    return {};
}

std::vector<Outbound> Party::on_deadline() {
    if (terminal()) {
        return {};
    }
    ++tick_;
    switch (tick_) {
        case 1: return deadline_send_shares();
        case 2: return deadline_send_echo();
        case 3: return deadline_verify_and_reveal();
        case 4: return deadline_check_reveals();
        case 5:
            phase_ = Phase::Done;
            derived_key_ = pending_key_;
            return {};
        default: return {};
    }
}

std::vector<Outbound> Party::abort(AbortReason reason) {
    if (terminal()) {
        return {};
    }
    phase_ = Phase::Aborted;
    abort_reason_ = reason;
    pending_key_.reset();
    derived_key_.reset();
    return {outbound(MessageKind::Abort, id(), encode_abort(reason))};
}

Bytes Party::commit_view_digest() const {
    Bytes input;
    input.reserve(1 + static_cast<std::size_t>(params_.n) * (1 + kCommitmentDigestLen + 4));
    input.push_back(kTagCommitView);
    for (std::int64_t pid = 1; pid <= params_.n; ++pid) {
        const Commitment& c = pid == id()
                                  ? own_commitment_
                                  : commitments_.at(static_cast<PartyId>(pid));
        input.push_back(static_cast<std::uint8_t>(pid));
        input.insert(input.end(), c.digest.begin(), c.digest.end());
        append_u32_be(input, c.claimed_entropy_millibits);
    }
    return sha3_256(input);
}

std::vector<Outbound> Party::deadline_send_shares() {
    if (static_cast<std::int64_t>(commitments_.size()) != params_.n - 1) {
        return abort(AbortReason::MissingCommitments);
    }
    phase_ = Phase::SharesSent;
    auto bundles = make_shares(secret_, static_cast<unsigned>(params_.n),
                               static_cast<unsigned>(params_.t), rng_);
    std::vector<Outbound> out;
    out.reserve(bundles.size());
    for (auto& b : bundles) {
        ShareBody body{b.recipient_id, std::move(b.share_bytes)};
        out.push_back(
            outbound(MessageKind::Share, id(), encode_share(body), b.recipient_id));
    }
    return out;
}

std::vector<Outbound> Party::deadline_send_echo() {
    EchoBody body;
    body.view_digest = commit_view_digest();
    for (const auto& [source, bundle] : direct_shares_) {
        body.shares.emplace_back(source, bundle.share_bytes);
    }
    return {outbound(MessageKind::ShareEcho, id(), encode_echo(body))};
}

std::vector<Outbound> Party::deadline_verify_and_reveal() {
    const Bytes my_view = commit_view_digest();
    for (const auto& [holder, echo] : echoes_) {
        if (echo.view_digest != my_view) {
            return abort(AbortReason::ViewMismatch);
        }
    }
    for (std::int64_t pid = 1; pid <= params_.n; ++pid) {
        if (pid == id()) {
            continue;
        }
        SourceVerdict verdict = verify_source(static_cast<PartyId>(pid));
        switch (verdict.result) {
            case SourceVerdict::Result::Pass:
                break;
            case SourceVerdict::Result::MissingCommitment:
                return abort(AbortReason::MissingCommitments);
            case SourceVerdict::Result::MissingShares:
                return abort(AbortReason::MissingShares);
            case SourceVerdict::Result::CommitmentMismatch:
                return abort(AbortReason::ShareVerification);
            case SourceVerdict::Result::EntropyBelowThreshold:
                return abort(AbortReason::LowEntropyClaim);
        }
        reconstructed_.emplace(static_cast<PartyId>(pid), std::move(verdict.reconstructed));
    }
    phase_ = Phase::Verified;
    RevealBody body{secret_.bytes, secret_.claimed_entropy.value_millibits};
    phase_ = Phase::Revealed;
    return {outbound(MessageKind::Reveal, id(), encode_reveal(body))};
}

std::vector<Outbound> Party::deadline_check_reveals() {
    if (static_cast<std::int64_t>(reveals_.size()) != params_.n - 1) {
        return abort(AbortReason::MissingReveals);
    }
    for (const auto& [source, body] : reveals_) {
        SecretInput revealed;
        revealed.bytes = body.secret;
        revealed.claimed_entropy.value_millibits = body.millibits;
        revealed.party_id = source;
        if (!verify_opening(commitments_.at(source), revealed) ||
            body.secret != reconstructed_.at(source)) {
            return abort(AbortReason::RevealVerification);
        }
    }
    std::vector<Bytes> secrets;
    secrets.reserve(static_cast<std::size_t>(params_.n));
    secrets.push_back(secret_.bytes);
    for (const auto& [source, body] : reveals_) {
        secrets.push_back(body.secret);
    }
    pending_key_ = derive_key(secrets, params_.kappa);
    return {};
}

SourceVerdict Party::verify_source(PartyId source) const {
    SourceVerdict verdict;
    const auto cit = commitments_.find(source);
    if (cit == commitments_.end()) {
        verdict.result = SourceVerdict::Result::MissingCommitment;
        return verdict;
    }

    std::vector<ShareBundle> points;
    const auto own = direct_shares_.find(source);
    if (own != direct_shares_.end()) {
        points.push_back(own->second);
    }
    for (const auto& [holder, echo] : echoes_) {
        if (holder == source) {
            continue;
        }
        for (const auto& [src, share] : echo.shares) {
            if (src != source) {
                continue;
            }
            ShareBundle b;
            b.source_id = source;
            b.recipient_id = holder;
            b.share_bytes = share;
            points.push_back(b);
        }
    }
    if (points.size() < static_cast<std::size_t>(params_.t)) {
        verdict.result = SourceVerdict::Result::MissingShares;
        return verdict;
    }

    Bytes candidate = reconstruct_secret(points, static_cast<unsigned>(params_.t));
    SecretInput revealed;
    revealed.bytes = candidate;
    revealed.claimed_entropy.value_millibits = cit->second.claimed_entropy_millibits;
    revealed.party_id = source;
    if (!verify_opening(cit->second, revealed)) {
        verdict.result = SourceVerdict::Result::CommitmentMismatch;
        return verdict;
    }
    const std::int64_t threshold_millibits = (params_.gamma - params_.delta) * 1000;
    if (static_cast<std::int64_t>(cit->second.claimed_entropy_millibits) <
        threshold_millibits) {
        verdict.result = SourceVerdict::Result::EntropyBelowThreshold;
        return verdict;
    }
    verdict.result = SourceVerdict::Result::Pass;
    verdict.reconstructed = std::move(candidate);
    return verdict;
}

Bytes derive_key(std::span<const Bytes> secrets, std::int64_t kappa_bits) {
    if (secrets.empty()) {
        throw std::domain_error("derive_key: no secrets");
    }
    if (kappa_bits <= 0 || kappa_bits % 8 != 0) {
        throw std::domain_error("derive_key: kappa must be a positive multiple of 8");
    }
    const std::size_t len = secrets[0].size();
    Bytes acc(len, 0);
    const kernels::Ops& kern = kernels::ops();
    for (const Bytes& s : secrets) {
        if (s.size() != len) {
            throw std::domain_error("derive_key: secret lengths differ");
        }
        kern.xor_bytes(acc.data(), s.data(), len);
    }
    Bytes input;
    input.reserve(1 + len);
    input.push_back(kTagKeyDerivation);
    input.insert(input.end(), acc.begin(), acc.end());
    return shake256(input, static_cast<std::size_t>(kappa_bits / 8));
}

Bytes derive_linear_key(std::span<const Bytes> secrets,
                        std::span<const FieldElement> coeffs, std::int64_t kappa_bits) {
    if (secrets.empty() || secrets.size() != coeffs.size()) {
        throw std::domain_error("derive_linear_key: secrets and coefficients must pair up");
    }
    if (kappa_bits <= 0 || kappa_bits % 8 != 0) {
        throw std::domain_error("derive_linear_key: kappa must be a positive multiple of 8");
    }
    bool any_nonzero = false;
    for (const FieldElement c : coeffs) {
        any_nonzero = any_nonzero || c != 0;
    }
    if (!any_nonzero) {
        throw std::domain_error("derive_linear_key: all-zero coefficients destroy the entropy floor");
    }
    const std::size_t len = secrets[0].size();
    Bytes acc(len, 0);
    const kernels::Ops& kern = kernels::ops();
    for (std::size_t i = 0; i < secrets.size(); ++i) {
        if (secrets[i].size() != len) {
            throw std::domain_error("derive_linear_key: secret lengths differ");
        }
        kern.gf256_axpy(acc.data(), secrets[i].data(), coeffs[i], len);
    }
    Bytes input;
    input.reserve(1 + len);
    input.push_back(kTagKeyDerivation);
    input.insert(input.end(), acc.begin(), acc.end());
    return shake256(input, static_cast<std::size_t>(kappa_bits / 8));
}

Bytes hybrid_combine(std::span<const std::uint8_t> k_first,
                     std::span<const std::uint8_t> k_second) {
    if (k_first.empty() || k_first.size() != k_second.size()) {
        throw std::domain_error("hybrid_combine: keys must be equal length and non-empty");
    }
    Bytes input;
    input.reserve(1 + k_first.size());
    input.push_back(kTagKeyDerivation);
    for (std::size_t i = 0; i < k_first.size(); ++i) {
        input.push_back(static_cast<std::uint8_t>(k_first[i] ^ k_second[i]));
    }
    return shake256(input, k_first.size());
}

}  // namespace eka
