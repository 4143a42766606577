#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace eka {

// Arithmetic in GF(2^8) modulo x^8 + x^4 + x^3 + x + 1 (0x11B). Addition is
// XOR. Share indices are nonzero field elements, which caps a sharing group
// at 255 parties.
using FieldElement = std::uint8_t;

inline constexpr std::uint16_t kFieldModulus = 0x11B;

// Coefficients in ascending order; coeffs[0] is the embedded secret byte.
struct FieldPoly {
    std::vector<FieldElement> coeffs;

    std::size_t degree_bound() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

namespace gf256_detail {
struct Tables {
    std::array<std::uint8_t, 512> exp;
    std::array<std::uint8_t, 256> log;
    std::array<std::uint8_t, 256> inv;
    // mul[a][b] = a*b; full table so bulk kernels can slice rows
    std::array<std::array<std::uint8_t, 256>, 256> mul;
};
const Tables& tables();
}  // namespace gf256_detail

inline FieldElement gf_mul(FieldElement a, FieldElement b) {
    return gf256_detail::tables().mul[a][b];
}

// Multiplicative inverse; throws std::domain_error for zero.
FieldElement gf_inv(FieldElement a);

inline FieldElement gf_div(FieldElement a, FieldElement b) { return gf_mul(a, gf_inv(b)); }

// Horner evaluation of f at x.
FieldElement poly_eval(const FieldPoly& f, FieldElement x);

// Constant term of the unique interpolating polynomial through the given
// points. Indices must be distinct and nonzero.
FieldElement lagrange_at_zero(std::span<const std::pair<FieldElement, FieldElement>> points);

// Lagrange basis coefficients L_k(0) for the given x coordinates, so bulk
// reconstruction can reuse one coefficient vector across byte positions.
std::vector<FieldElement> lagrange_zero_coefficients(std::span<const FieldElement> xs);

}  // namespace eka
