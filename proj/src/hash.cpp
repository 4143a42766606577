#include "eka/hash.hpp"

#include <openssl/evp.h>

#include <memory>
#include <stdexcept>

namespace eka {

namespace {

struct CtxDeleter {
    void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};
using CtxPtr = std::unique_ptr<EVP_MD_CTX, CtxDeleter>;

Bytes digest(const EVP_MD* md, std::span<const std::uint8_t> data, std::size_t out_len,
             bool xof) {
    CtxPtr ctx(EVP_MD_CTX_new());
    if (!ctx || EVP_DigestInit_ex(ctx.get(), md, nullptr) != 1) {
        throw std::runtime_error("hash: digest init failed");
    }
    if (!data.empty() && EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1) {
        throw std::runtime_error("hash: digest update failed");
    }
    Bytes out(out_len);
    const int rc = xof ? EVP_DigestFinalXOF(ctx.get(), out.data(), out.size())
                       : EVP_DigestFinal_ex(ctx.get(), out.data(), nullptr);
    if (rc != 1) {
        throw std::runtime_error("hash: digest final failed");
    }
    return out;
}

}  // namespace

Bytes sha3_256(std::span<const std::uint8_t> data) {
    return digest(EVP_sha3_256(), data, 32, false);
}

Bytes shake256(std::span<const std::uint8_t> data, std::size_t out_len) {
    return digest(EVP_shake256(), data, out_len, true);
}

}  // namespace eka
