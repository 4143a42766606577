#include "eka/commitment.hpp"

#include <stdexcept>

#include "eka/hash.hpp"

namespace eka {

namespace {

Bytes commitment_digest(const Bytes& secret_bytes, std::uint32_t millibits) {
    Bytes input;
    input.reserve(1 + secret_bytes.size() + 4);
    input.push_back(kTagCommitment);
    input.insert(input.end(), secret_bytes.begin(), secret_bytes.end());
    append_u32_be(input, millibits);
    return sha3_256(input);
}

}  // namespace

Commitment commit(const SecretInput& secret) {
    Commitment c;
    c.digest = commitment_digest(secret.bytes, secret.claimed_entropy.value_millibits);
    c.party_id = secret.party_id;
    c.claimed_entropy_millibits = secret.claimed_entropy.value_millibits;
    return c;
}

bool verify_opening(const Commitment& c, const SecretInput& revealed) {
    if (revealed.claimed_entropy.value_millibits != c.claimed_entropy_millibits) {
        return false;
    }
    return commitment_digest(revealed.bytes, revealed.claimed_entropy.value_millibits) ==
           c.digest;
}

Bytes entropy_mac(std::span<const std::uint8_t> key, std::span<const std::uint8_t> message,
                  std::span<const std::uint8_t> entropy_salt) {
    if (key.size() != kCommitmentDigestLen) {
        throw std::domain_error("entropy_mac: key must be one digest long");
    }
    if (entropy_salt.size() != key.size()) {
        throw std::domain_error("entropy_mac: salt must match key length");
    }
    Bytes inner_input;
    inner_input.reserve(1 + message.size() + entropy_salt.size());
    inner_input.push_back(kTagMacInner);
    inner_input.insert(inner_input.end(), message.begin(), message.end());
    inner_input.insert(inner_input.end(), entropy_salt.begin(), entropy_salt.end());
    const Bytes inner = sha3_256(inner_input);

    Bytes outer_input;
    outer_input.reserve(1 + inner.size());
    outer_input.push_back(kTagMacOuter);
    for (std::size_t i = 0; i < inner.size(); ++i) {
        outer_input.push_back(static_cast<std::uint8_t>(key[i] ^ inner[i]));
    }
    return sha3_256(outer_input);
}

bool verify_entropy_mac(std::span<const std::uint8_t> key,
                        std::span<const std::uint8_t> message,
                        std::span<const std::uint8_t> entropy_salt,
                        std::span<const std::uint8_t> tag) {
    const Bytes expected = entropy_mac(key, message, entropy_salt);
    if (tag.size() != expected.size()) {
        return false;
    }
    // Fixed-pattern compare; no data-dependent early exit.
    std::uint8_t diff = 0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        diff = static_cast<std::uint8_t>(diff | (expected[i] ^ tag[i]));
    }
    return diff == 0;
}

}  // namespace eka
