#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace eka {

// Every count is a plain integer; epsilon and the adversary's query and
// memory budgets enter as base-2 logarithms so the arithmetic stays exact
// far past the range of floating point. A negative log2 budget means a zero
// budget and removes the corresponding term entirely.
struct ProtocolParams {
    std::int64_t n = 5;
    std::int64_t t = 3;
    std::int64_t m_bits = 384;
    std::int64_t kappa = 128;
    std::int64_t gamma = 351;
    std::int64_t delta = 10;
    std::int64_t epsilon_log2 = 40;
    std::int64_t lambda = 256;
    std::int64_t q_queries_log2 = 64;
    std::int64_t q_memory_log2 = 64;
    std::int64_t zeta = 0;

    // Shape constraints every run needs: ranges, divisibility, gamma > delta.
    // Throws std::invalid_argument.
    void check_structure() const;

    // Structure plus the hardened-deployment floor m >= 3*kappa.
    void check_security() const;
};

// max(0, n*(gamma - delta) - (n-1)*m): the guaranteed min-entropy of the
// xor-combined secret after estimation error.
std::int64_t hinf_floor(const ProtocolParams& p);

struct GammaSolution {
    std::int64_t gamma = 0;
    bool feasible = false;  // false when the required gamma exceeds m
};

// Smallest integer per-source entropy bound gamma meeting the kappa-bit
// target: ceil((kappa + epsilon_log2 + zeta + n*delta + (n-1)*m) / n).
GammaSolution solve_gamma(std::int64_t n, std::int64_t m_bits, std::int64_t kappa,
                          std::int64_t delta, std::int64_t epsilon_log2,
                          std::int64_t zeta = 0);

struct AdvantageTerms {
    double key_guess = 0.0;        // -kappa
    double hash_collision = 0.0;   // 2q - m
    double authentication = 0.0;   // 2*log2(n) - lambda
    double quantum_memory = 0.0;   // q_mem - (n*gamma - (n-1)*m)
    double total = 0.0;            // log2 of the summed advantage
};

struct BoundReport {
    std::int64_t hinf_S_bits = 0;
    bool feasible = false;
    std::int64_t margin_bits = 0;  // hinf_S_bits - kappa - epsilon_log2
    AdvantageTerms advantage_log2;
    double active_attack_log2 = 0.0;  // invalid-share acceptance, active adversary
    double forged_share_log2 = 0.0;   // single forged-share slip past verification
    std::int64_t comm_cost_bits = 0;  // n*(n-1)*m share traffic
};

double comm_cost_kb(std::int64_t n, std::int64_t m_bits);

// Evaluates the distinguishing-advantage terms in log2 and the feasibility
// margin. Feasible means the margin covers zeta and every adversary term
// stays at or below -kappa.
BoundReport advantage_bound(const ProtocolParams& p);

struct ConstraintVerdict {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Hardening checklist: collision resistance needs m >= 3*kappa, memory-bounded
// search needs gamma >= kappa + log2(Q), and the entropy margin must survive
// the estimation error delta.
std::vector<ConstraintVerdict> mitigation_check(const ProtocolParams& p);

struct TableRow {
    int n = 0;
    std::int64_t gamma_computed = 0;
    std::int64_t gamma_reference = 0;
    bool gamma_match = false;
    std::int64_t hinf_computed = 0;  // from the reference gamma, isolating that cell
    std::int64_t hinf_reference = 0;
    bool hinf_match = false;
    double comm_kb_computed = 0.0;
    double comm_kb_reference = 0.0;
    bool comm_match = false;
};

struct TableReport {
    std::int64_t kappa = 0;
    std::int64_t m_bits = 0;
    std::int64_t delta = 0;
    std::int64_t epsilon_log2 = 0;
    std::vector<TableRow> rows;
    std::vector<std::string> discrepancies;
};

// Recomputes the shipped reference parameter table row by row and reports
// every cell that the formulas fail to reproduce. Discrepancies are reported,
// never corrected. Rows cover n in [n_min, n_max] within [3, 7].
TableReport reproduce_table(std::int64_t kappa = 128, std::int64_t m_bits = 384,
                            std::int64_t delta = 10, std::int64_t epsilon_log2 = 40,
                            int n_min = 3, int n_max = 7);

}  // namespace eka
