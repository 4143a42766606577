#pragma once

#include <cstdint>
#include <span>

#include "eka/bytes.hpp"
#include "eka/sharing.hpp"

namespace eka {

inline constexpr std::size_t kCommitmentDigestLen = 32;

struct Commitment {
    Bytes digest;
    PartyId party_id = 0;
    std::uint32_t claimed_entropy_millibits = 0;
};

// Binding commitment to (secret bytes, claimed entropy). The claimed entropy
// rides along in the clear; the digest pins both.
Commitment commit(const SecretInput& secret);

// True iff the revealed secret and its claimed entropy reproduce the digest.
bool verify_opening(const Commitment& c, const SecretInput& revealed);

// tag = H(key xor H(message || salt)), each hash under its own domain tag.
// Key and salt must both be one digest long.
Bytes entropy_mac(std::span<const std::uint8_t> key, std::span<const std::uint8_t> message,
                  std::span<const std::uint8_t> entropy_salt);

bool verify_entropy_mac(std::span<const std::uint8_t> key,
                        std::span<const std::uint8_t> message,
                        std::span<const std::uint8_t> entropy_salt,
                        std::span<const std::uint8_t> tag);

}  // namespace eka
