#pragma once

#include <cstdint>
#include <span>

#include "eka/bytes.hpp"

namespace eka {

// Domain separation tags. Every hash invocation in the library prefixes its
// input with exactly one of these so transcripts from different contexts can
// never collide.
inline constexpr std::uint8_t kTagCommitment = 0x01;
inline constexpr std::uint8_t kTagKeyDerivation = 0x02;
inline constexpr std::uint8_t kTagMacInner = 0x03;
inline constexpr std::uint8_t kTagMacOuter = 0x04;
inline constexpr std::uint8_t kTagCommitView = 0x05;

Bytes sha3_256(std::span<const std::uint8_t> data);

// Variable-length XOF output.
Bytes shake256(std::span<const std::uint8_t> data, std::size_t out_len);

}  // namespace eka
