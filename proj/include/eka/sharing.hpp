#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "eka/bytes.hpp"
#include "eka/entropy.hpp"
#include "eka/rng.hpp"

namespace eka {

// Party identifiers double as field evaluation points, so they live in
// [1, 255]; 0 is reserved for the secret.
using PartyId = std::uint8_t;

struct SecretInput {
    Bytes bytes;
    EntropyEstimate claimed_entropy;
    PartyId party_id = 0;
};

struct ShareBundle {
    PartyId source_id = 0;
    PartyId recipient_id = 0;
    Bytes share_bytes;
};

// Splits the secret into n-1 bundles, one per party other than the dealer.
// Each byte position gets an independent degree-(t-1) polynomial whose
// constant term is that secret byte; a bundle holds the evaluations at the
// recipient's id. Coefficients are drawn from rng byte position by byte
// position, low coefficient first, so a fixed seed pins the full output.
std::vector<ShareBundle> make_shares(const SecretInput& secret, unsigned n, unsigned t,
                                     Rng& rng);

// Byte-wise interpolation at zero over all provided bundles. Every bundle
// participates, so a tampered share anywhere changes the result.
Bytes reconstruct_secret(std::span<const ShareBundle> bundles, unsigned t);

struct CensusReport {
    unsigned secret_bits = 0;
    unsigned n = 0;
    unsigned t = 0;
    bool exhaustive = false;
    std::uint64_t cases_checked = 0;
    std::uint64_t observer_sets = 0;
    double max_tv_distance = 0.0;  // worst conditional distance from uniform
    double tolerance = 0.0;        // 0 for exhaustive enumeration
    bool uniform = false;
};

// Measures what t-1 observed shares reveal about a secret of secret_bits
// bits. t = 2 enumerates every polynomial and demands exact uniformity;
// t = 3 samples and allows only the statistical tolerance of the sample size.
CensusReport secrecy_census(unsigned secret_bits, unsigned n, unsigned t,
                            std::uint64_t seed = 0);

}  // namespace eka
