#include "eka/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "eka/gf256.hpp"

namespace eka::kernels {
namespace {

// GF(2^8) scalar-times-vector via the nibble-table trick: for a fixed
// multiplier c, c*b = T_lo[b & 15] ^ T_hi[b >> 4], and both 16-entry tables
// fit a vpshufb lane.
struct NibbleTables {
    __m256i lo;
    __m256i hi;
};

inline NibbleTables load_nibble_tables(std::uint8_t c) {
    const auto& mul = gf256_detail::tables().mul[c];
    alignas(16) std::uint8_t lo[16];
    alignas(16) std::uint8_t hi[16];
    for (int i = 0; i < 16; ++i) {
        lo[i] = mul[i];
        hi[i] = mul[i << 4];
    }
    const __m128i lo128 = _mm_load_si128(reinterpret_cast<const __m128i*>(lo));
    const __m128i hi128 = _mm_load_si128(reinterpret_cast<const __m128i*>(hi));
    return {_mm256_broadcastsi128_si256(lo128), _mm256_broadcastsi128_si256(hi128)};
}

inline __m256i gf256_mul_vec(const NibbleTables& t, __m256i v) {
    const __m256i low_mask = _mm256_set1_epi8(0x0F);
    const __m256i lo_n = _mm256_and_si256(v, low_mask);
    const __m256i hi_n = _mm256_and_si256(_mm256_srli_epi64(v, 4), low_mask);
    return _mm256_xor_si256(_mm256_shuffle_epi8(t.lo, lo_n), _mm256_shuffle_epi8(t.hi, hi_n));
}

void gf256_axpy_avx2(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) {
    const NibbleTables t = load_nibble_tables(c);
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        __m256i d = _mm256_loadu_si256(reinterpret_cast<__m256i*>(dst + i));
        d = _mm256_xor_si256(d, gf256_mul_vec(t, s));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), d);
    }
    const auto& row = gf256_detail::tables().mul[c];
    for (; i < n; ++i) {
        dst[i] ^= row[src[i]];
    }
}

void gf256_horner_step_avx2(std::uint8_t* acc, const std::uint8_t* coeffs, std::uint8_t x,
                            std::size_t n) {
    const NibbleTables t = load_nibble_tables(x);
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + i));
        const __m256i c = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(coeffs + i));
        const __m256i r = _mm256_xor_si256(gf256_mul_vec(t, a), c);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + i), r);
    }
    const auto& row = gf256_detail::tables().mul[x];
    for (; i < n; ++i) {
        acc[i] = static_cast<std::uint8_t>(row[acc[i]] ^ coeffs[i]);
    }
}

void xor_bytes_avx2(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        __m256i d = _mm256_loadu_si256(reinterpret_cast<__m256i*>(dst + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(d, s));
    }
    for (; i < n; ++i) {
        dst[i] ^= src[i];
    }
}

// mul+add kept separate (no FMA) so results match the scalar reference
// bit-for-bit.
void axpy_f64_avx2(double* dst, const double* src, double a, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d s = _mm256_loadu_pd(src + i);
        const __m256d d = _mm256_loadu_pd(dst + i);
        _mm256_storeu_pd(dst + i, _mm256_add_pd(d, _mm256_mul_pd(va, s)));
    }
    for (; i < n; ++i) {
        dst[i] += a * src[i];
    }
}

void xor_permute_f64_avx2(double* dst, const double* src, std::size_t mask, std::size_t n) {
    if (n < 4) {
        for (std::size_t i = 0; i < n; ++i) {
            dst[i] = src[i ^ mask];
        }
        return;
    }
    const std::size_t block_mask = mask & ~std::size_t{3};
    const unsigned lane = static_cast<unsigned>(mask & 3);
    for (std::size_t base = 0; base < n; base += 4) {
        __m256d v = _mm256_loadu_pd(src + (base ^ block_mask));
        switch (lane) {
            case 0:
                break;
            case 1:
                v = _mm256_permute_pd(v, 0b0101);
                break;
            case 2:
                v = _mm256_permute2f128_pd(v, v, 0x01);
                break;
            case 3:
                v = _mm256_permute_pd(_mm256_permute2f128_pd(v, v, 0x01), 0b0101);
                break;
        }
        _mm256_storeu_pd(dst + base, v);
    }
}

double max_f64_avx2(const double* src, std::size_t n) {
    std::size_t i = 0;
    double m = src[0];
    if (n >= 4) {
        __m256d vm = _mm256_loadu_pd(src);
        for (i = 4; i + 4 <= n; i += 4) {
            vm = _mm256_max_pd(vm, _mm256_loadu_pd(src + i));
        }
        alignas(32) double lanes[4];
        _mm256_store_pd(lanes, vm);
        m = lanes[0];
        for (int k = 1; k < 4; ++k) {
            if (lanes[k] > m) {
                m = lanes[k];
            }
        }
    }
    for (; i < n; ++i) {
        if (src[i] > m) {
            m = src[i];
        }
    }
    return m;
}

constexpr Ops kAvx2Ops = {
    gf256_axpy_avx2,  gf256_horner_step_avx2, xor_bytes_avx2,
    axpy_f64_avx2,    xor_permute_f64_avx2,   max_f64_avx2,
};

}  // namespace

namespace detail {
const Ops* avx2_ops() { return &kAvx2Ops; }
}  // namespace detail

}  // namespace eka::kernels

#else  // non-x86 build: no vector backend, dispatcher falls back to scalar

namespace eka::kernels::detail {
const Ops* avx2_ops() { return nullptr; }
}  // namespace eka::kernels::detail

#endif
