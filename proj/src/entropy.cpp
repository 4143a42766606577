#include "eka/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "eka/kernels.hpp"

namespace eka {

namespace {

constexpr double kSumTolerance = 1e-12;
constexpr double kBoundSlack = 1e-9;

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

double max_prob(const Distribution& d) {
    return kernels::ops().max_f64(d.probs.data(), d.probs.size());
}

}  // namespace

void Distribution::validate() const {
    if (!is_power_of_two(probs.size())) {
        throw std::invalid_argument("distribution: alphabet size must be a power of two");
    }
    double sum = 0.0;
    for (const double p : probs) {
        if (!(p >= 0.0)) {
            throw std::invalid_argument("distribution: negative probability");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
        throw std::invalid_argument("distribution: probabilities do not sum to 1");
    }
}

double renyi_entropy(const Distribution& d, double alpha) {
    d.validate();
    if (!(alpha > 0.0) || alpha == 1.0) {
        throw std::domain_error("renyi_entropy: order must be positive and != 1");
    }
    const double pmax = max_prob(d);
    // sum p^alpha = pmax^alpha * sum (p/pmax)^alpha; the ratio sum stays in
    // [1, N] so its log never overflows even for very large alpha.
    double ratio_sum = 0.0;
    for (const double p : d.probs) {
        if (p > 0.0) {
            ratio_sum += std::pow(p / pmax, alpha);
        }
    }
    return (alpha * std::log2(pmax) + std::log2(ratio_sum)) / (1.0 - alpha);
}

double shannon_entropy(const Distribution& d) {
    d.validate();
    double h = 0.0;
    for (const double p : d.probs) {
        if (p > 0.0) {
            h -= p * std::log2(p);
        }
    }
    return h;
}

double min_entropy(const Distribution& d) {
    d.validate();
    return -std::log2(max_prob(d));
}

double collision_entropy(const Distribution& d) { return renyi_entropy(d, 2.0); }

Distribution xor_convolve(const Distribution& a, const Distribution& b) {
    a.validate();
    b.validate();
    if (a.size() != b.size()) {
        throw std::domain_error("xor_convolve: alphabet sizes differ");
    }
    const std::size_t n = a.size();
    const kernels::Ops& k = kernels::ops();
    Distribution out;
    out.probs.assign(n, 0.0);
    std::vector<double> permuted(n);
    for (std::size_t x = 0; x < n; ++x) {
        if (a.probs[x] == 0.0) {
            continue;
        }
        k.xor_permute_f64(permuted.data(), b.probs.data(), x, n);
        k.axpy_f64(out.probs.data(), permuted.data(), a.probs[x], n);
    }
    return out;
}

PreservationReport check_preservation_bound(std::span<const Distribution> dists,
                                            unsigned width_bits) {
    if (dists.empty()) {
        throw std::invalid_argument("check_preservation_bound: no distributions");
    }
    const std::size_t alphabet = std::size_t{1} << width_bits;
    for (const auto& d : dists) {
        d.validate();
        if (d.size() != alphabet) {
            throw std::invalid_argument("check_preservation_bound: width mismatch");
        }
    }

    const auto n = static_cast<double>(dists.size());
    const double w = static_cast<double>(width_bits);
    double gamma = min_entropy(dists[0]);
    double best = gamma;
    double total = gamma;
    Distribution acc = dists[0];
    for (std::size_t i = 1; i < dists.size(); ++i) {
        const double h = min_entropy(dists[i]);
        gamma = std::min(gamma, h);
        best = std::max(best, h);
        total += h;
        acc = xor_convolve(acc, dists[i]);
    }

    PreservationReport report;
    report.exact_bits = min_entropy(acc);
    report.floor_bits = std::max(0.0, n * gamma - (n - 1.0) * w);
    report.max_component_bits = best;
    report.sum_floor_bits = total - (n - 1.0) * w;
    report.holds = report.exact_bits + kBoundSlack >= report.floor_bits &&
                   report.exact_bits + kBoundSlack >= report.max_component_bits &&
                   report.exact_bits + kBoundSlack >= report.sum_floor_bits;
    return report;
}

EntropyEstimate estimate_min_entropy(std::span<const std::uint16_t> samples,
                                     std::size_t alphabet_size, double epsilon) {
    if (samples.empty()) {
        throw std::domain_error("estimate_min_entropy: no samples");
    }
    if (!is_power_of_two(alphabet_size) || alphabet_size > (std::size_t{1} << 16)) {
        throw std::invalid_argument(
            "estimate_min_entropy: alphabet size must be a power of two <= 2^16");
    }
    if (!(epsilon > 0.0) || epsilon >= 1.0) {
        throw std::invalid_argument("estimate_min_entropy: epsilon must be in (0, 1)");
    }

    std::vector<std::uint64_t> counts(alphabet_size, 0);
    for (const std::uint16_t s : samples) {
        if (s >= alphabet_size) {
            throw std::invalid_argument("estimate_min_entropy: sample out of range");
        }
        ++counts[s];
    }
    const auto n = static_cast<double>(samples.size());
    const double p_hat = static_cast<double>(*std::max_element(counts.begin(), counts.end())) / n;
    const double value_bits = -std::log2(p_hat);

    // One-sided deviation bound on the empirical maximum; when it swamps the
    // estimate entirely, fall back to the width of the whole alphabet.
    const double deviation =
        std::sqrt(std::log(2.0 * static_cast<double>(alphabet_size) / epsilon) / (2.0 * n));
    const double width_bits = std::log2(static_cast<double>(alphabet_size));
    double delta_bits;
    if (p_hat - deviation <= 0.0) {
        delta_bits = width_bits;
    } else {
        delta_bits = std::log2(p_hat / (p_hat - deviation));
    }
    delta_bits = std::min(delta_bits, width_bits);

    EntropyEstimate estimate;
    estimate.value_millibits = static_cast<std::uint32_t>(std::llround(1000.0 * value_bits));
    estimate.accuracy_delta_millibits =
        static_cast<std::uint32_t>(std::ceil(1000.0 * delta_bits));
    estimate.sample_count = samples.size();
    return estimate;
}

}  // namespace eka
