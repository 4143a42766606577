#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eka/entropy.hpp"
#include "eka/params.hpp"
#include "eka/serial.hpp"
#include "eka/simnet.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAbort = 2;
constexpr int kExitVectorMismatch = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot read file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument("cannot write file: " + path);
    }
    out << content;
}

std::optional<std::uint64_t> env_seed() {
    const char* value = std::getenv("ENTROPY_KA_SEED");
    if (value == nullptr || *value == '\0') {
        return std::nullopt;
    }
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(value, &end, 10);
    if (end == value || *end != '\0') {
        throw std::invalid_argument("ENTROPY_KA_SEED must be a decimal integer");
    }
    return static_cast<std::uint64_t>(parsed);
}

std::string violated_inequality(const eka::ProtocolParams& p, const eka::BoundReport& r) {
    std::ostringstream out;
    if (r.margin_bits < p.zeta) {
        out << "margin n*(gamma - delta) - (n-1)*m - kappa - epsilon_log2 = " << r.margin_bits
            << " falls below zeta = " << p.zeta;
        return out.str();
    }
    if (r.advantage_log2.hash_collision > -static_cast<double>(p.kappa)) {
        out << "collision exponent 2*q - m = " << r.advantage_log2.hash_collision
            << " exceeds -kappa = " << -p.kappa;
        return out.str();
    }
    if (r.advantage_log2.authentication > -static_cast<double>(p.kappa)) {
        out << "authentication exponent 2*log2(n) - lambda = " << r.advantage_log2.authentication
            << " exceeds -kappa = " << -p.kappa;
        return out.str();
    }
    if (r.advantage_log2.quantum_memory > -static_cast<double>(p.kappa)) {
        out << "memory exponent q_memory - (n*gamma - (n-1)*m) = "
            << r.advantage_log2.quantum_memory << " exceeds -kappa = " << -p.kappa;
        return out.str();
    }
    out << "total advantage exceeds the 2^-kappa target";
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-party key agreement over entropy-certified secrets"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Run one session on the simulated network");
    unsigned sim_n = 5;
    unsigned sim_t = 3;
    std::int64_t sim_m = 384;
    std::int64_t sim_gamma = 351;
    std::int64_t sim_delta = 10;
    std::int64_t sim_kappa = 128;
    std::uint64_t sim_seed = 0;
    std::string sim_scenario_path;
    std::string sim_adversary_path;
    std::string sim_order = "round_robin";
    std::string sim_transcript_path;
    bool sim_parallel = false;
    bool sim_reveal_key = false;
    auto* sim_n_opt = sim->add_option("--n", sim_n, "Party count");
    auto* sim_t_opt = sim->add_option("--t", sim_t, "Reconstruction threshold (default n/2 + 1)");
    auto* sim_m_opt = sim->add_option("--m", sim_m, "Secret width in bits");
    auto* sim_gamma_opt = sim->add_option("--gamma", sim_gamma, "Certified per-source entropy bound");
    auto* sim_delta_opt = sim->add_option("--delta", sim_delta, "Estimator accuracy slack in bits");
    auto* sim_kappa_opt = sim->add_option("--kappa", sim_kappa, "Key length in bits");
    auto* sim_seed_opt = sim->add_option("--seed", sim_seed, "Session seed (ENTROPY_KA_SEED fallback)");
    sim->add_option("--scenario", sim_scenario_path, "Scenario JSON file");
    sim->add_option("--adversary", sim_adversary_path, "Adversary spec JSON file");
    auto* sim_order_opt =
        sim->add_option("--delivery-order", sim_order, "round_robin or seeded_shuffle");
    sim->add_option("--transcript,--out", sim_transcript_path, "Write the transcript as JSON lines");
    sim->add_flag("--parallel", sim_parallel, "Step parties on worker threads");
    sim->add_flag("--reveal-key", sim_reveal_key, "Print derived keys instead of digests");

    // params
    auto* par = app.add_subcommand("params", "Evaluate or solve a security parameterization");
    eka::ProtocolParams par_p;
    auto* par_gamma_opt =
        par->add_option("--gamma", par_p.gamma, "Per-source entropy bound (omit to solve)");
    par->add_option("--n", par_p.n, "Party count");
    par->add_option("--t", par_p.t, "Reconstruction threshold");
    par->add_option("--m", par_p.m_bits, "Secret width in bits");
    par->add_option("--kappa", par_p.kappa, "Key length in bits");
    par->add_option("--delta", par_p.delta, "Estimator accuracy slack in bits");
    par->add_option("--epsilon,--log2-epsilon", par_p.epsilon_log2, "Extraction loss budget, -log2");
    par->add_option("--zeta", par_p.zeta, "Required slack margin in bits");
    par->add_option("--lambda", par_p.lambda, "Authentication hash width in bits");
    par->add_option("--q-queries", par_p.q_queries_log2, "Adversary query budget, log2");
    par->add_option("--q-memory", par_p.q_memory_log2, "Adversary memory budget, log2");

    // table
    auto* tab = app.add_subcommand("table", "Recompute the reference parameter table");
    std::int64_t tab_kappa = 128;
    std::int64_t tab_m = 384;
    std::int64_t tab_delta = 10;
    std::int64_t tab_epsilon = 40;
    int tab_n_min = 3;
    int tab_n_max = 7;
    tab->add_option("--kappa", tab_kappa, "Key length in bits");
    tab->add_option("--m", tab_m, "Secret width in bits");
    tab->add_option("--delta", tab_delta, "Estimator accuracy slack in bits");
    tab->add_option("--epsilon,--log2-epsilon", tab_epsilon, "Extraction loss budget, -log2");
    tab->add_option("--n-min", tab_n_min, "First row");
    tab->add_option("--n-max", tab_n_max, "Last row");

    // entropy
    auto* ent = app.add_subcommand("entropy", "Entropy measures, convolution, and estimation");
    std::vector<std::string> ent_dist_paths;
    double ent_alpha = 2.0;
    std::string ent_samples_path;
    std::size_t ent_alphabet = 256;
    double ent_epsilon = 1e-6;
    ent->add_option("--dist", ent_dist_paths, "Distribution JSON file (repeatable)");
    auto* ent_alpha_opt = ent->add_option("--alpha", ent_alpha, "Also report Renyi entropy of this order");
    ent->add_option("--samples", ent_samples_path, "Sample JSON file for the plug-in estimator");
    ent->add_option("--alphabet", ent_alphabet, "Estimator alphabet size");
    ent->add_option("--epsilon", ent_epsilon, "Estimator failure probability");
    bool ent_xor_sweep = false;
    ent->add_flag("--xor-sweep", ent_xor_sweep,
                  "Require the xor preservation sweep (needs two or more --dist files)");

    // attack-suite
    auto* atk = app.add_subcommand("attack-suite", "Adversarial matrix and collusion probes");
    unsigned atk_n = 5;
    unsigned atk_t = 3;
    std::int64_t atk_m = 384;
    std::int64_t atk_gamma = 351;
    std::int64_t atk_delta = 10;
    std::int64_t atk_kappa = 128;
    std::uint64_t atk_seed = 0;
    std::vector<std::string> atk_behaviors = {"passive_collude", "tamper_share", "tamper_reveal",
                                              "equivocate_commit", "drop_messages"};
    auto* atk_n_opt = atk->add_option("--n", atk_n, "Party count");
    auto* atk_t_opt = atk->add_option("--t", atk_t, "Reconstruction threshold (default n/2 + 1)");
    atk->add_option("--m", atk_m, "Secret width in bits");
    atk->add_option("--gamma", atk_gamma, "Certified per-source entropy bound");
    atk->add_option("--delta", atk_delta, "Estimator accuracy slack in bits");
    atk->add_option("--kappa", atk_kappa, "Key length in bits");
    auto* atk_seed_opt = atk->add_option("--seed", atk_seed, "Suite seed (ENTROPY_KA_SEED fallback)");
    atk->add_option("--behaviors", atk_behaviors, "Behaviors to exercise");

    // vectors
    auto* vec = app.add_subcommand("vectors", "Verify or regenerate the primitive test vectors");
    std::string vec_path = "data/golden/vectors.json";
    bool vec_write = false;
    vec->add_option("--file", vec_path, "Vector file path");
    vec->add_flag("--write", vec_write, "Regenerate the file instead of verifying");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sim->parsed()) {
            eka::Scenario scenario;
            const bool have_scenario = !sim_scenario_path.empty();
            if (have_scenario) {
                scenario = eka::scenario_from_json(slurp(sim_scenario_path));
            }
            if (!sim_adversary_path.empty()) {
                scenario.adversary = eka::adversary_from_json(slurp(sim_adversary_path));
            }
            if (sim_n_opt->count() > 0) {
                scenario.n = sim_n;
                if (sim_t_opt->count() == 0 && !have_scenario) {
                    scenario.t = sim_n / 2 + 1;
                }
            }
            if (sim_t_opt->count() > 0) {
                scenario.t = sim_t;
            }
            scenario.params.n = scenario.n;
            scenario.params.t = scenario.t;
            if (sim_m_opt->count() > 0) {
                scenario.params.m_bits = sim_m;
            }
            if (sim_gamma_opt->count() > 0) {
                scenario.params.gamma = sim_gamma;
            }
            if (sim_delta_opt->count() > 0) {
                scenario.params.delta = sim_delta;
            }
            if (sim_kappa_opt->count() > 0) {
                scenario.params.kappa = sim_kappa;
            }
            if (sim_order_opt->count() > 0) {
                const auto order = eka::delivery_order_from_string(sim_order);
                if (!order) {
                    throw std::invalid_argument("unknown delivery order: " + sim_order);
                }
                scenario.delivery_order = *order;
            }

            std::uint64_t seed = scenario.seed;
            if (sim_seed_opt->count() > 0) {
                seed = sim_seed;
            } else if (!have_scenario) {
                seed = env_seed().value_or(seed);
            }

            eka::NetworkConfig config;
            config.n = scenario.n;
            config.delivery_order = scenario.delivery_order;
            config.seed = seed;
            config.adversary = scenario.adversary;
            config.parallel = sim_parallel;

            const eka::ProtocolParams& params = scenario.params;
            std::vector<eka::SecretInput> secrets = eka::sample_secret_inputs(
                config.n, static_cast<std::size_t>(params.m_bits / 8),
                static_cast<std::uint32_t>(1000 * params.gamma), seed);
            const eka::SessionOutcome outcome = eka::run_session(config, params, std::move(secrets));

            std::cout << eka::session_report_json(outcome, params, seed, sim_reveal_key);
            if (!sim_transcript_path.empty()) {
                write_file(sim_transcript_path, eka::transcript_to_json_lines(outcome.transcript));
            }
            return outcome.all_honest_done_with_equal_keys() ? kExitOk : kExitAbort;
        }

        if (par->parsed()) {
            bool solved = false;
            if (par_gamma_opt->count() == 0) {
                const eka::GammaSolution solution =
                    eka::solve_gamma(par_p.n, par_p.m_bits, par_p.kappa, par_p.delta,
                                     par_p.epsilon_log2, par_p.zeta);
                if (!solution.feasible) {
                    std::cerr << "infeasible: required gamma = " << solution.gamma
                              << " exceeds m_bits = " << par_p.m_bits << "\n";
                    return kExitUsage;
                }
                par_p.gamma = solution.gamma;
                solved = true;
            }
            std::cout << eka::params_report_json(par_p, solved);
            const eka::BoundReport report = eka::advantage_bound(par_p);
            if (!report.feasible) {
                std::cerr << "infeasible: " << violated_inequality(par_p, report) << "\n";
                return kExitUsage;
            }
            return kExitOk;
        }

        if (tab->parsed()) {
            const eka::TableReport report =
                eka::reproduce_table(tab_kappa, tab_m, tab_delta, tab_epsilon, tab_n_min, tab_n_max);
            std::cout << eka::table_report_json(report);
            return kExitOk;
        }

        if (ent->parsed()) {
            eka::EntropyReportInputs inputs;
            for (const std::string& path : ent_dist_paths) {
                inputs.distributions.push_back(eka::distribution_from_json(slurp(path)));
            }
            if (ent_alpha_opt->count() > 0) {
                inputs.alpha = ent_alpha;
            }
            if (!ent_samples_path.empty()) {
                const std::vector<std::uint16_t> samples =
                    eka::samples_from_json(slurp(ent_samples_path));
                inputs.estimate = eka::estimate_min_entropy(samples, ent_alphabet, ent_epsilon);
            }
            if (inputs.distributions.empty() && !inputs.estimate) {
                std::cerr << "error: provide at least one --dist file or a --samples file\n";
                return kExitUsage;
            }
            if (ent_xor_sweep && inputs.distributions.size() < 2) {
                std::cerr << "error: --xor-sweep needs at least two --dist files\n";
                return kExitUsage;
            }
            std::cout << eka::entropy_report_json(inputs);
            return kExitOk;
        }

        if (atk->parsed()) {
            if (atk_n_opt->count() > 0 && atk_t_opt->count() == 0) {
                atk_t = atk_n / 2 + 1;
            }
            eka::ProtocolParams p;
            p.n = atk_n;
            p.t = atk_t;
            p.m_bits = atk_m;
            p.gamma = atk_gamma;
            p.delta = atk_delta;
            p.kappa = atk_kappa;
            const std::uint64_t seed =
                atk_seed_opt->count() > 0 ? atk_seed : env_seed().value_or(atk_seed);

            std::vector<eka::AdversaryBehavior> behaviors;
            for (const std::string& name : atk_behaviors) {
                const auto behavior = eka::behavior_from_string(name);
                if (!behavior) {
                    throw std::invalid_argument("unknown behavior: " + name);
                }
                if (*behavior != eka::AdversaryBehavior::None) {
                    behaviors.push_back(*behavior);
                }
            }

            const eka::MatrixSummary matrix = eka::adversarial_matrix(p, behaviors, seed);
            const eka::ProbeReport below = eka::collusion_probe(8, atk_n, atk_t, seed, atk_t - 1);
            const eka::ProbeReport at = eka::collusion_probe(8, atk_n, atk_t, seed, atk_t);
            std::cout << eka::attack_suite_report_json(p, matrix, below, at);

            const bool ok = matrix.wins == 0 && matrix.consistent && below.full_alphabet_uniform;
            return ok ? kExitOk : kExitAbort;
        }

        if (vec->parsed()) {
            if (vec_write) {
                write_file(vec_path, eka::generate_vectors_json());
                std::cout << "wrote " << vec_path << "\n";
                return kExitOk;
            }
            std::string mismatch;
            if (eka::verify_vectors_json(slurp(vec_path), mismatch)) {
                std::cout << "vectors ok: " << vec_path << "\n";
                return kExitOk;
            }
            std::cerr << "vector mismatch: " << mismatch << "\n";
            return kExitVectorMismatch;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
