#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace eka {

using Bytes = std::vector<std::uint8_t>;

std::string to_hex(std::span<const std::uint8_t> data);
Bytes from_hex(const std::string& hex);

void append_u32_be(Bytes& out, std::uint32_t value);
std::uint32_t read_u32_be(std::span<const std::uint8_t> data, std::size_t offset = 0);

}  // namespace eka
