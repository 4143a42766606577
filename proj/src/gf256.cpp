#include "eka/gf256.hpp"

#include <stdexcept>

namespace eka {
namespace gf256_detail {
namespace {

constexpr std::uint8_t xtime(std::uint8_t a) {
    return static_cast<std::uint8_t>((a << 1) ^ ((a & 0x80u) ? (kFieldModulus & 0xFFu) : 0u));
}

Tables build_tables() {
    Tables t{};
    // Powers of the generator 0x03; log is its inverse map.
    std::uint8_t x = 1;
    for (std::size_t i = 0; i < 255; ++i) {
        t.exp[i] = x;
        t.log[x] = static_cast<std::uint8_t>(i);
        x = static_cast<std::uint8_t>(xtime(x) ^ x);
    }
    for (std::size_t i = 255; i < t.exp.size(); ++i) {
        t.exp[i] = t.exp[i - 255];
    }
    t.log[0] = 0;

    t.inv[0] = 0;
    t.inv[1] = 1;
    for (std::size_t a = 2; a < 256; ++a) {
        t.inv[a] = t.exp[255 - t.log[a]];
    }

    for (std::size_t a = 0; a < 256; ++a) {
        t.mul[0][a] = 0;
        t.mul[a][0] = 0;
    }
    for (std::size_t a = 1; a < 256; ++a) {
        for (std::size_t b = 1; b < 256; ++b) {
            const unsigned s = t.log[a] + t.log[b];
            t.mul[a][b] = t.exp[s];
        }
    }
    return t;
}

}  // namespace

const Tables& tables() {
    static const Tables t = build_tables();
    return t;
}

}  // namespace gf256_detail

FieldElement gf_inv(FieldElement a) {
    if (a == 0) {
        throw std::domain_error("gf_inv: zero has no multiplicative inverse");
    }
    return gf256_detail::tables().inv[a];
}

FieldElement poly_eval(const FieldPoly& f, FieldElement x) {
    if (f.coeffs.empty()) {
        return 0;
    }
    FieldElement acc = f.coeffs.back();
    for (std::size_t k = f.coeffs.size() - 1; k-- > 0;) {
        acc = static_cast<FieldElement>(gf_mul(acc, x) ^ f.coeffs[k]);
    }
    return acc;
}

std::vector<FieldElement> lagrange_zero_coefficients(std::span<const FieldElement> xs) {
    if (xs.empty()) {
        throw std::invalid_argument("lagrange: need at least one point");
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] == 0) {
            throw std::invalid_argument("lagrange: index 0 is reserved for the secret");
        }
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            if (xs[i] == xs[j]) {
                throw std::invalid_argument("lagrange: duplicate share index");
            }
        }
    }
    std::vector<FieldElement> coeffs(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        FieldElement num = 1;
        FieldElement den = 1;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == k) {
                continue;
            }
            num = gf_mul(num, xs[j]);
            den = gf_mul(den, static_cast<FieldElement>(xs[j] ^ xs[k]));
        }
        coeffs[k] = gf_div(num, den);
    }
    return coeffs;
}

FieldElement lagrange_at_zero(std::span<const std::pair<FieldElement, FieldElement>> points) {
    std::vector<FieldElement> xs(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        xs[i] = points[i].first;
    }
    const auto basis = lagrange_zero_coefficients(xs);
    FieldElement acc = 0;
    for (std::size_t k = 0; k < points.size(); ++k) {
        acc = static_cast<FieldElement>(acc ^ gf_mul(points[k].second, basis[k]));
    }
    return acc;
}

}  // namespace eka
