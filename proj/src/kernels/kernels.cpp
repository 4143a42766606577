#include "eka/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "eka/gf256.hpp"

namespace eka::kernels {

namespace detail {
const Ops* avx2_ops();  // null when not compiled for x86-64
}

namespace {

void gf256_axpy_scalar(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) {
    const auto& row = gf256_detail::tables().mul[c];
    for (std::size_t i = 0; i < n; ++i) {
        dst[i] ^= row[src[i]];
    }
}

void gf256_horner_step_scalar(std::uint8_t* acc, const std::uint8_t* coeffs, std::uint8_t x,
                              std::size_t n) {
    const auto& row = gf256_detail::tables().mul[x];
    for (std::size_t i = 0; i < n; ++i) {
        acc[i] = static_cast<std::uint8_t>(row[acc[i]] ^ coeffs[i]);
    }
}

void xor_bytes_scalar(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        dst[i] ^= src[i];
    }
}

void axpy_f64_scalar(double* dst, const double* src, double a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        dst[i] += a * src[i];
    }
}

void xor_permute_f64_scalar(double* dst, const double* src, std::size_t mask, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        dst[i] = src[i ^ mask];
    }
}

double max_f64_scalar(const double* src, std::size_t n) {
    double m = src[0];
    for (std::size_t i = 1; i < n; ++i) {
        if (src[i] > m) {
            m = src[i];
        }
    }
    return m;
}

constexpr Ops kScalarOps = {
    gf256_axpy_scalar,  gf256_horner_step_scalar, xor_bytes_scalar,
    axpy_f64_scalar,    xor_permute_f64_scalar,   max_f64_scalar,
};

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

Backend pick_default_backend() {
    if (const char* env = std::getenv("EKA_KERNELS")) {
        const std::string v = env;
        if (v == "scalar") {
            return Backend::scalar;
        }
        if (v == "avx2" && backend_supported(Backend::avx2)) {
            return Backend::avx2;
        }
    }
    return backend_supported(Backend::avx2) ? Backend::avx2 : Backend::scalar;
}

Backend& active_backend_slot() {
    static Backend b = pick_default_backend();
    return b;
}

}  // namespace

bool backend_supported(Backend backend) {
    switch (backend) {
        case Backend::scalar:
            return true;
        case Backend::avx2:
            return detail::avx2_ops() != nullptr && cpu_has_avx2();
    }
    return false;
}

std::string_view backend_name(Backend backend) {
    switch (backend) {
        case Backend::scalar:
            return "scalar";
        case Backend::avx2:
            return "avx2";
    }
    return "unknown";
}

const Ops& ops_for(Backend backend) {
    switch (backend) {
        case Backend::scalar:
            return kScalarOps;
        case Backend::avx2:
            if (const Ops* t = detail::avx2_ops(); t != nullptr && cpu_has_avx2()) {
                return *t;
            }
            throw std::runtime_error("kernels: avx2 backend not supported on this host");
    }
    throw std::runtime_error("kernels: unknown backend");
}

const Ops& ops() { return ops_for(active_backend_slot()); }

Backend active_backend() { return active_backend_slot(); }

void set_backend(Backend backend) {
    if (!backend_supported(backend)) {
        throw std::runtime_error("kernels: backend not supported on this host");
    }
    active_backend_slot() = backend;
}

}  // namespace eka::kernels
