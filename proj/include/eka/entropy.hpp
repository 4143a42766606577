#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace eka {

// Probability distribution over {0,1}^w, stored as 2^w probabilities indexed
// by outcome.
struct Distribution {
    std::vector<double> probs;

    std::size_t size() const { return probs.size(); }

    // Throws std::invalid_argument unless probabilities are non-negative,
    // sum to 1 within 1e-12, and the alphabet size is a power of two.
    void validate() const;
};

struct EntropyEstimate {
    std::uint32_t value_millibits = 0;
    std::uint32_t accuracy_delta_millibits = 0;
    std::uint64_t sample_count = 0;
};

// Order-alpha entropy in bits, alpha > 0 and != 1. Computed in the log domain
// with the largest probability factored out so it stays stable for alpha in
// the thousands.
double renyi_entropy(const Distribution& d, double alpha);

double shannon_entropy(const Distribution& d);

// -log2 of the largest probability.
double min_entropy(const Distribution& d);

// Equals renyi_entropy(d, 2).
double collision_entropy(const Distribution& d);

// Exact distribution of X xor Y for independent X ~ a, Y ~ b over the same
// alphabet.
Distribution xor_convolve(const Distribution& a, const Distribution& b);

struct PreservationReport {
    double exact_bits = 0.0;          // min-entropy of the xor of all inputs
    double floor_bits = 0.0;          // max(0, n*gamma - (n-1)*w), gamma = weakest input
    double max_component_bits = 0.0;  // best single input
    double sum_floor_bits = 0.0;      // sum of inputs - (n-1)*w, may be negative
    bool holds = false;               // exact_bits dominates all three floors
};

// Convolves the inputs together and checks the exact min-entropy of the xor
// against the three lower bounds above.
PreservationReport check_preservation_bound(std::span<const Distribution> dists,
                                            unsigned width_bits);

// Plug-in min-entropy estimate from samples over [0, alphabet_size), with a
// deviation allowance delta such that the true min-entropy lies within
// value +/- delta except with probability about epsilon.
EntropyEstimate estimate_min_entropy(std::span<const std::uint16_t> samples,
                                     std::size_t alphabet_size, double epsilon);

}  // namespace eka
