#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace eka::kernels {

// Data-parallel inner loops shared by the field, sharing and entropy layers.
// Every kernel has a scalar reference implementation and, on x86-64 with
// AVX2, a vector variant selected at runtime. Variants are bit-for-bit
// equivalent to the reference (float kernels are compiled without FP
// contraction) so golden outputs never depend on the selected backend.

enum class Backend {
    scalar,
    avx2,
};

struct Ops {
    // dst[i] ^= gf256_mul(c, src[i])
    void (*gf256_axpy)(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n);
    // acc[i] = gf256_mul(x, acc[i]) ^ coeffs[i]
    void (*gf256_horner_step)(std::uint8_t* acc, const std::uint8_t* coeffs, std::uint8_t x, std::size_t n);
    // dst[i] ^= src[i]
    void (*xor_bytes)(std::uint8_t* dst, const std::uint8_t* src, std::size_t n);
    // dst[i] += a * src[i]
    void (*axpy_f64)(double* dst, const double* src, double a, std::size_t n);
    // dst[i] = src[i ^ mask]; n a power of two, mask < n
    void (*xor_permute_f64)(double* dst, const double* src, std::size_t mask, std::size_t n);
    // max over src[0..n)
    double (*max_f64)(const double* src, std::size_t n);
};

// Kernels for the given backend. Asking for an unsupported backend throws.
const Ops& ops_for(Backend backend);

// Active table. Defaults to the best supported backend; EKA_KERNELS=scalar|avx2
// in the environment overrides the choice at startup.
const Ops& ops();

Backend active_backend();
void set_backend(Backend backend);

bool backend_supported(Backend backend);
std::string_view backend_name(Backend backend);

}  // namespace eka::kernels
