#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "eka/params.hpp"
#include "eka/rng.hpp"

namespace {

using Catch::Matchers::WithinAbs;
using eka::ProtocolParams;

// Smallest gamma with n*(gamma - delta) - (n-1)*m >= kappa + eps + zeta,
// found by linear search instead of the closed form.
std::int64_t gamma_search_oracle(std::int64_t n, std::int64_t m, std::int64_t kappa,
                                 std::int64_t delta, std::int64_t eps, std::int64_t zeta) {
    const std::int64_t target = kappa + eps + zeta;
    for (std::int64_t gamma = 0;; ++gamma) {
        if (n * (gamma - delta) - (n - 1) * m >= target) {
            return gamma;
        }
    }
}

}  // namespace

TEST_CASE("reference parameter set evaluates to the pinned report") {
    const ProtocolParams p;
    CHECK(eka::hinf_floor(p) == 169);

    const auto solved = eka::solve_gamma(p.n, p.m_bits, p.kappa, p.delta, p.epsilon_log2);
    CHECK(solved.gamma == 351);
    CHECK(solved.feasible);

    const auto report = eka::advantage_bound(p);
    CHECK(report.hinf_S_bits == 169);
    CHECK(report.feasible);
    CHECK(report.margin_bits == 1);
    CHECK(report.comm_cost_bits == 7680);
    CHECK_THAT(report.advantage_log2.key_guess, WithinAbs(-128.0, 1e-12));
    CHECK_THAT(report.advantage_log2.hash_collision, WithinAbs(-256.0, 1e-12));
    CHECK_THAT(report.advantage_log2.authentication,
               WithinAbs(-251.35614381022526, 1e-9));
    CHECK_THAT(report.advantage_log2.quantum_memory, WithinAbs(-155.0, 1e-12));
    CHECK_THAT(report.advantage_log2.total, WithinAbs(-127.99999998925108, 1e-9));
    CHECK_THAT(report.active_attack_log2, WithinAbs(-251.2995602818589, 1e-9));
    CHECK_THAT(report.forged_share_log2, WithinAbs(-256.0, 1e-9));

    CHECK_THAT(eka::comm_cost_kb(5, 384), WithinAbs(0.9375, 1e-12));
}

TEST_CASE("every advantage term at the reference clears the security target") {
    const auto report = eka::advantage_bound(ProtocolParams{});
    const double target = -128.0;
    CHECK(report.advantage_log2.key_guess <= target);
    CHECK(report.advantage_log2.hash_collision <= target);
    CHECK(report.advantage_log2.authentication <= target);
    CHECK(report.advantage_log2.quantum_memory <= target);
}

TEST_CASE("solved gamma is minimal against the linear-search oracle") {
    eka::Rng rng(601);
    for (int trial = 0; trial < 400; ++trial) {
        const std::int64_t n = 2 + static_cast<std::int64_t>(rng.below(8));
        const std::int64_t m = 8 * (1 + static_cast<std::int64_t>(rng.below(64)));
        const std::int64_t kappa = 1 + static_cast<std::int64_t>(rng.below(256));
        const std::int64_t delta = static_cast<std::int64_t>(rng.below(21));
        const std::int64_t eps = static_cast<std::int64_t>(rng.below(65));
        const std::int64_t zeta = static_cast<std::int64_t>(rng.below(9));
        const auto solved = eka::solve_gamma(n, m, kappa, delta, eps, zeta);
        CHECK(solved.gamma == gamma_search_oracle(n, m, kappa, delta, eps, zeta));
        CHECK(solved.feasible == (solved.gamma <= m));
    }
}

TEST_CASE("solve_gamma flags parameter sets that outgrow the secret") {
    const auto solved = eka::solve_gamma(2, 160, 128, 10, 40);
    CHECK(solved.gamma == 174);
    CHECK_FALSE(solved.feasible);
    CHECK_THROWS_AS(eka::solve_gamma(0, 384, 128, 10, 40), std::invalid_argument);
    CHECK_THROWS_AS(eka::solve_gamma(5, 384, 128, -1, 40), std::invalid_argument);
}

TEST_CASE("entropy floor clamps at zero") {
    ProtocolParams p;
    p.gamma = p.delta + 1;
    CHECK(eka::hinf_floor(p) == 0);
}

TEST_CASE("advantage terms respond monotonically to their parameters") {
    ProtocolParams base;
    const auto baseline = eka::advantage_bound(base);

    ProtocolParams stronger_gamma = base;
    stronger_gamma.gamma = base.gamma + 8;
    const auto with_gamma = eka::advantage_bound(stronger_gamma);
    CHECK(with_gamma.advantage_log2.quantum_memory <
          baseline.advantage_log2.quantum_memory);
    CHECK(with_gamma.hinf_S_bits > baseline.hinf_S_bits);

    ProtocolParams wider_hash = base;
    wider_hash.lambda = 512;
    const auto with_hash = eka::advantage_bound(wider_hash);
    CHECK(with_hash.advantage_log2.authentication <
          baseline.advantage_log2.authentication);

    ProtocolParams busier_adversary = base;
    busier_adversary.q_queries_log2 = 96;
    const auto with_queries = eka::advantage_bound(busier_adversary);
    CHECK(with_queries.advantage_log2.hash_collision >
          baseline.advantage_log2.hash_collision);
}

TEST_CASE("negative query budgets drop their terms entirely") {
    ProtocolParams p;
    p.q_queries_log2 = -1;
    const auto report = eka::advantage_bound(p);
    CHECK(std::isinf(report.advantage_log2.hash_collision));
    CHECK(report.advantage_log2.hash_collision < 0.0);
    CHECK(std::isfinite(report.advantage_log2.total));

    ProtocolParams q = p;
    q.q_memory_log2 = -1;
    const auto both = eka::advantage_bound(q);
    CHECK(std::isinf(both.advantage_log2.quantum_memory));
    // Only the guessing and authentication terms remain; the authentication
    // term sits 123 binades below the guessing term, outside double precision.
    CHECK_THAT(both.advantage_log2.total, WithinAbs(-128.0, 1e-9));
    CHECK(both.feasible);
}

TEST_CASE("feasibility fails when any term or the margin slips") {
    ProtocolParams tight_margin;
    tight_margin.zeta = 2;  // margin at the reference is 1
    CHECK_FALSE(eka::advantage_bound(tight_margin).feasible);

    ProtocolParams heavy_queries;
    heavy_queries.q_queries_log2 = 130;  // collision term rises to -124
    CHECK_FALSE(eka::advantage_bound(heavy_queries).feasible);

    ProtocolParams heavy_memory;
    heavy_memory.q_memory_log2 = 100;  // memory term rises to -119
    CHECK_FALSE(eka::advantage_bound(heavy_memory).feasible);
}

TEST_CASE("hardening checklist pins its verdict text") {
    const auto verdicts = eka::mitigation_check(ProtocolParams{});
    REQUIRE(verdicts.size() == 3);
    CHECK(verdicts[0].name == "collision_resistance");
    CHECK(verdicts[0].pass);
    CHECK(verdicts[0].detail == "m = 384 >= 3*kappa = 384");
    CHECK(verdicts[1].name == "memory_bounded_search");
    CHECK(verdicts[1].pass);
    CHECK(verdicts[1].detail == "gamma = 351 >= kappa + log2(Q) = 192");
    CHECK(verdicts[2].name == "entropy_margin");
    CHECK(verdicts[2].pass);
    CHECK(verdicts[2].detail ==
          "n*(gamma-delta)-(n-1)*m = 169 >= kappa + epsilon_log2 + zeta = 168");
}

TEST_CASE("hardening checklist flags violations") {
    ProtocolParams p;
    p.m_bits = 376;
    p.gamma = 190;
    const auto verdicts = eka::mitigation_check(p);
    CHECK_FALSE(verdicts[0].pass);
    CHECK_FALSE(verdicts[1].pass);
}

TEST_CASE("table reproduction isolates each mismatched cell") {
    const auto report = eka::reproduce_table();
    REQUIRE(report.rows.size() == 5);

    const std::int64_t expected_gamma[] = {322, 340, 351, 358, 364};
    const std::int64_t expected_hinf[] = {147, 168, 169, 132, 139};
    const double expected_comm[] = {0.28125, 0.5625, 0.9375, 1.40625, 1.96875};
    const bool expected_match[] = {false, true, true, false, false};

    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& row = report.rows[i];
        CHECK(row.n == static_cast<int>(i) + 3);
        CHECK(row.gamma_computed == expected_gamma[i]);
        CHECK(row.gamma_match == expected_match[i]);
        CHECK(row.hinf_computed == expected_hinf[i]);
        CHECK(row.hinf_match == expected_match[i]);
        CHECK_THAT(row.comm_kb_computed, WithinAbs(expected_comm[i], 1e-12));
        CHECK_FALSE(row.comm_match);
    }
    // Three gamma cells, three floor cells, five communication cells.
    CHECK(report.discrepancies.size() == 11);
}

TEST_CASE("table reproduction respects the requested row range") {
    const auto report = eka::reproduce_table(128, 384, 10, 40, 4, 5);
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[0].n == 4);
    CHECK(report.rows[1].n == 5);
    CHECK(report.discrepancies.size() == 2);  // the two communication cells
    CHECK_THROWS_AS(eka::reproduce_table(128, 384, 10, 40, 2, 5), std::invalid_argument);
    CHECK_THROWS_AS(eka::reproduce_table(128, 384, 10, 40, 5, 8), std::invalid_argument);
}

TEST_CASE("structural validation rejects each out-of-range field") {
    const auto expect_bad = [](auto mutate) {
        ProtocolParams p;
        mutate(p);
        CHECK_THROWS_AS(p.check_structure(), std::invalid_argument);
    };
    CHECK_NOTHROW(ProtocolParams{}.check_structure());
    expect_bad([](ProtocolParams& p) { p.n = 1; });
    expect_bad([](ProtocolParams& p) { p.t = 1; });
    expect_bad([](ProtocolParams& p) { p.t = p.n + 1; });
    expect_bad([](ProtocolParams& p) { p.m_bits = 383; });
    expect_bad([](ProtocolParams& p) { p.m_bits = 0; });
    expect_bad([](ProtocolParams& p) { p.kappa = 0; });
    expect_bad([](ProtocolParams& p) { p.delta = -1; });
    expect_bad([](ProtocolParams& p) { p.gamma = p.delta; });
    expect_bad([](ProtocolParams& p) { p.gamma = p.m_bits + 1; });
    expect_bad([](ProtocolParams& p) { p.epsilon_log2 = -1; });
    expect_bad([](ProtocolParams& p) { p.zeta = -1; });
    expect_bad([](ProtocolParams& p) { p.lambda = 0; });
    expect_bad([](ProtocolParams& p) { p.lambda = 255; });
}

TEST_CASE("security validation adds the hardened length floor") {
    ProtocolParams p;
    CHECK_NOTHROW(p.check_security());
    p.m_bits = 376;  // still a valid structure, below 3*kappa
    CHECK_NOTHROW(p.check_structure());
    CHECK_THROWS_AS(p.check_security(), std::invalid_argument);
}
