#include "eka/sharing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "eka/gf256.hpp"
#include "eka/kernels.hpp"

namespace eka {

std::vector<ShareBundle> make_shares(const SecretInput& secret, unsigned n, unsigned t,
                                     Rng& rng) {
    if (n < 1 || n > 255) {
        throw std::invalid_argument("make_shares: party count must be in [1, 255]");
    }
    if (t < 1 || t > n) {
        throw std::invalid_argument("make_shares: threshold must be in [1, n]");
    }
    if (secret.party_id < 1 || secret.party_id > n) {
        throw std::invalid_argument("make_shares: dealer id out of range");
    }
    if (secret.bytes.empty()) {
        throw std::invalid_argument("make_shares: empty secret");
    }

    const std::size_t len = secret.bytes.size();
    std::vector<Bytes> coeffs(t);
    coeffs[0] = secret.bytes;
    for (unsigned k = 1; k < t; ++k) {
        coeffs[k].resize(len);
    }
    for (std::size_t b = 0; b < len; ++b) {
        for (unsigned k = 1; k < t; ++k) {
            coeffs[k][b] = rng.next_byte();
        }
    }

    const kernels::Ops& kern = kernels::ops();
    std::vector<ShareBundle> bundles;
    bundles.reserve(n - 1);
    for (unsigned j = 1; j <= n; ++j) {
        if (j == secret.party_id) {
            continue;
        }
        ShareBundle bundle;
        bundle.source_id = secret.party_id;
        bundle.recipient_id = static_cast<PartyId>(j);
        bundle.share_bytes = coeffs[t - 1];
        for (unsigned k = t - 1; k-- > 0;) {
            kern.gf256_horner_step(bundle.share_bytes.data(), coeffs[k].data(),
                                   static_cast<FieldElement>(j), len);
        }
        bundles.push_back(std::move(bundle));
    }
    return bundles;
}

Bytes reconstruct_secret(std::span<const ShareBundle> bundles, unsigned t) {
    if (t < 1) {
        throw std::invalid_argument("reconstruct_secret: threshold must be positive");
    }
    if (bundles.size() < t) {
        throw std::invalid_argument("reconstruct_secret: insufficient shares");
    }
    const PartyId source = bundles[0].source_id;
    const std::size_t len = bundles[0].share_bytes.size();
    std::vector<FieldElement> xs;
    xs.reserve(bundles.size());
    for (const auto& b : bundles) {
        if (b.source_id != source) {
            throw std::domain_error("reconstruct_secret: bundles from mixed sources");
        }
        if (b.share_bytes.size() != len) {
            throw std::invalid_argument("reconstruct_secret: share length mismatch");
        }
        xs.push_back(b.recipient_id);
    }

    const auto weights = lagrange_zero_coefficients(xs);
    Bytes out(len, 0);
    const kernels::Ops& kern = kernels::ops();
    for (std::size_t i = 0; i < bundles.size(); ++i) {
        kern.gf256_axpy(out.data(), bundles[i].share_bytes.data(), weights[i], len);
    }
    return out;
}

namespace {

double tv_from_uniform(std::span<const std::uint64_t> counts, std::uint64_t total) {
    if (total == 0) {
        return 0.0;
    }
    const double uniform = 1.0 / static_cast<double>(counts.size());
    double tv = 0.0;
    for (const std::uint64_t c : counts) {
        tv += std::abs(static_cast<double>(c) / static_cast<double>(total) - uniform);
    }
    return 0.5 * tv;
}

// Exhaustive threshold-2 census: one observed share per observer. For every
// (dealer, observer) pair, tally the conditional secret counts behind each
// observable share value and measure their distance from uniform.
void census_pairs(CensusReport& report) {
    const unsigned secret_count = 1u << report.secret_bits;
    std::vector<std::uint64_t> counts;
    for (unsigned dealer = 1; dealer <= report.n; ++dealer) {
        for (unsigned observer = 1; observer <= report.n; ++observer) {
            if (observer == dealer) {
                continue;
            }
            counts.assign(std::size_t{256} * secret_count, 0);
            for (unsigned s = 0; s < secret_count; ++s) {
                for (unsigned a1 = 0; a1 < 256; ++a1) {
                    const auto v = static_cast<std::uint8_t>(
                        s ^ gf_mul(static_cast<FieldElement>(a1),
                                   static_cast<FieldElement>(observer)));
                    ++counts[std::size_t{v} * secret_count + s];
                }
            }
            ++report.observer_sets;
            report.cases_checked += std::uint64_t{secret_count} * 256;
            for (unsigned v = 0; v < 256; ++v) {
                const std::span<const std::uint64_t> row(
                    counts.data() + std::size_t{v} * secret_count, secret_count);
                std::uint64_t total = 0;
                for (const auto c : row) {
                    total += c;
                }
                report.max_tv_distance =
                    std::max(report.max_tv_distance, tv_from_uniform(row, total));
            }
        }
    }
}

// Sampled threshold-3 census: observers hold two shares. The observer's best
// guess is the degree-1 extrapolation to zero through its two points; the
// residual secret xor guess must look uniform or the shares leak.
void census_triples(CensusReport& report, std::uint64_t seed) {
    constexpr std::uint64_t kSamplesPerSet = 1'000'000;
    const unsigned secret_mask = (1u << report.secret_bits) - 1u;
    report.tolerance = 3.0 * std::sqrt(256.0 / static_cast<double>(kSamplesPerSet));

    const Rng root(seed);
    std::uint64_t set_index = 0;
    for (unsigned dealer = 1; dealer <= report.n; ++dealer) {
        std::vector<FieldElement> recipients;
        for (unsigned j = 1; j <= report.n; ++j) {
            if (j != dealer) {
                recipients.push_back(static_cast<FieldElement>(j));
            }
        }
        for (std::size_t i = 0; i < recipients.size(); ++i) {
            for (std::size_t j = i + 1; j < recipients.size(); ++j) {
                const FieldElement x1 = recipients[i];
                const FieldElement x2 = recipients[j];
                const FieldElement denom = static_cast<FieldElement>(x1 ^ x2);
                const FieldElement l1 = gf_div(x2, denom);
                const FieldElement l2 = gf_div(x1, denom);

                Rng stream = root.fork(set_index++);
                std::array<std::uint64_t, 256> bins{};
                for (std::uint64_t k = 0; k < kSamplesPerSet; ++k) {
                    const std::uint8_t s = stream.next_byte() & secret_mask;
                    const std::uint8_t a1 = stream.next_byte();
                    const std::uint8_t a2 = stream.next_byte();
                    const auto v1 = static_cast<std::uint8_t>(
                        s ^ gf_mul(a1, x1) ^ gf_mul(a2, gf_mul(x1, x1)));
                    const auto v2 = static_cast<std::uint8_t>(
                        s ^ gf_mul(a1, x2) ^ gf_mul(a2, gf_mul(x2, x2)));
                    const auto guess =
                        static_cast<std::uint8_t>(gf_mul(v1, l1) ^ gf_mul(v2, l2));
                    ++bins[static_cast<std::uint8_t>(s ^ guess)];
                }
                ++report.observer_sets;
                report.cases_checked += kSamplesPerSet;
                report.max_tv_distance = std::max(
                    report.max_tv_distance, tv_from_uniform(bins, kSamplesPerSet));
            }
        }
    }
}

}  // namespace

CensusReport secrecy_census(unsigned secret_bits, unsigned n, unsigned t,
                            std::uint64_t seed) {
    if (secret_bits < 1 || secret_bits > 8) {
        throw std::invalid_argument("secrecy_census: secret width must be in [1, 8] bits");
    }
    if (n < 2 || n > 6) {
        throw std::invalid_argument("secrecy_census: party count must be in [2, 6]");
    }
    if (t != 2 && t != 3) {
        throw std::invalid_argument("secrecy_census: census covers thresholds 2 and 3 only");
    }
    if (t > n) {
        throw std::invalid_argument("secrecy_census: threshold exceeds party count");
    }

    CensusReport report;
    report.secret_bits = secret_bits;
    report.n = n;
    report.t = t;
    report.exhaustive = (t == 2);
    if (t == 2) {
        census_pairs(report);
    } else {
        census_triples(report, seed);
    }
    report.uniform = report.max_tv_distance <= report.tolerance;
    return report;
}

}  // namespace eka
