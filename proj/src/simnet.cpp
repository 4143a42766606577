#include "eka/simnet.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>
#include <string_view>
#include <thread>
#include <utility>

#include "eka/gf256.hpp"
#include "eka/rng.hpp"

namespace eka {
namespace {

constexpr std::uint8_t kTamperMask = 0xA5;

// Rng fork labels used by the orchestrator: 1..n for party streams,
// 0x100 + round for delivery shuffles.  The secret sampler forks well above
// that range so its stream never aliases a session stream under the same seed.
constexpr std::uint64_t kSecretStreamLabel = 0x10000;

struct Emission {
    ProtocolMessage message;
    std::optional<PartyId> recipient;
};

struct Delivery {
    PartyId to = 0;
    ProtocolMessage message;
};

bool contains_id(const std::vector<PartyId>& ids, PartyId id) {
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

bool targeted(const AdversarySpec& adv, PartyId recipient) {
    return adv.target_recipients.empty() || contains_id(adv.target_recipients, recipient);
}

bool drop_applies(const AdversarySpec& adv, MessageKind kind) {
    return adv.drop_kinds.empty() ||
           std::find(adv.drop_kinds.begin(), adv.drop_kinds.end(), kind) != adv.drop_kinds.end();
}

// Flips one content byte: the share body, the first echoed share byte, the
// first secret byte, or the first digest byte.  Structure stays intact so the
// corruption must be caught by verification, not by the decoder.
void tamper_payload(MessageKind kind, Bytes& payload) {
    switch (kind) {
        case MessageKind::Commit:
        case MessageKind::Reveal:
            if (!payload.empty()) {
                payload[0] ^= kTamperMask;
            }
            break;
        case MessageKind::Share:
            if (payload.size() > 1) {
                payload[1] ^= kTamperMask;
            }
            break;
        case MessageKind::ShareEcho:
            if (payload.size() > kCommitmentDigestLen + 1) {
                payload[kCommitmentDigestLen + 1] ^= kTamperMask;
            }
            break;
        case MessageKind::Abort:
            break;
    }
}

std::vector<Emission> apply_adversary(const AdversarySpec& adv, unsigned n, PartyId sender,
                                      const Outbound& out, int& interventions) {
    const MessageKind kind = out.message.kind;
    const bool tampering =
        (adv.behavior == AdversaryBehavior::TamperShare &&
         (kind == MessageKind::Share ||
          (adv.tamper_echo && kind == MessageKind::ShareEcho))) ||
        (adv.behavior == AdversaryBehavior::TamperReveal && kind == MessageKind::Reveal) ||
        (adv.behavior == AdversaryBehavior::EquivocateCommit && kind == MessageKind::Commit);
    const bool dropping =
        adv.behavior == AdversaryBehavior::DropMessages && drop_applies(adv, kind);

    if (!tampering && !dropping) {
        return {{out.message, out.recipient}};
    }

    std::vector<PartyId> recipients;
    if (out.recipient) {
        recipients.push_back(*out.recipient);
    } else {
        for (unsigned id = 1; id <= n; ++id) {
            if (id != sender) {
                recipients.push_back(static_cast<PartyId>(id));
            }
        }
    }

    std::vector<Emission> emissions;
    if (dropping) {
        std::vector<PartyId> kept;
        for (PartyId r : recipients) {
            if (targeted(adv, r)) {
                ++interventions;
            } else {
                kept.push_back(r);
            }
        }
        if (kept.size() == recipients.size()) {
            return {{out.message, out.recipient}};
        }
        for (PartyId r : kept) {
            emissions.push_back({out.message, r});
        }
        return emissions;
    }

    if (adv.target_recipients.empty()) {
        Emission e{out.message, out.recipient};
        tamper_payload(kind, e.message.payload);
        ++interventions;
        emissions.push_back(std::move(e));
        return emissions;
    }
    for (PartyId r : recipients) {
        Emission e{out.message, r};
        if (targeted(adv, r)) {
            tamper_payload(kind, e.message.payload);
            ++interventions;
        }
        emissions.push_back(std::move(e));
    }
    return emissions;
}

std::vector<std::vector<PartyId>> subsets_of_size(unsigned n, unsigned k) {
    std::vector<std::vector<PartyId>> result;
    if (k == 0 || k > n) {
        return result;
    }
    std::vector<unsigned> idx(k);
    for (unsigned i = 0; i < k; ++i) {
        idx[i] = i + 1;
    }
    while (true) {
        std::vector<PartyId> set;
        set.reserve(k);
        for (unsigned v : idx) {
            set.push_back(static_cast<PartyId>(v));
        }
        result.push_back(std::move(set));
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && idx[static_cast<unsigned>(i)] == n - k + 1 + static_cast<unsigned>(i)) {
            --i;
        }
        if (i < 0) {
            break;
        }
        ++idx[static_cast<unsigned>(i)];
        for (unsigned j = static_cast<unsigned>(i) + 1; j < k; ++j) {
            idx[j] = idx[j - 1] + 1;
        }
    }
    return result;
}

}  // namespace

const char* to_string(DeliveryOrder order) {
    switch (order) {
        case DeliveryOrder::RoundRobin: return "round_robin";
        case DeliveryOrder::SeededShuffle: return "seeded_shuffle";
    }
    return "unknown";
}

const char* to_string(AdversaryBehavior behavior) {
    switch (behavior) {
        case AdversaryBehavior::None: return "none";
        case AdversaryBehavior::PassiveCollude: return "passive_collude";
        case AdversaryBehavior::TamperShare: return "tamper_share";
        case AdversaryBehavior::TamperReveal: return "tamper_reveal";
        case AdversaryBehavior::EquivocateCommit: return "equivocate_commit";
        case AdversaryBehavior::DropMessages: return "drop_messages";
    }
    return "unknown";
}

std::optional<DeliveryOrder> delivery_order_from_string(std::string_view name) {
    if (name == "round_robin") return DeliveryOrder::RoundRobin;
    if (name == "seeded_shuffle") return DeliveryOrder::SeededShuffle;
    return std::nullopt;
}

std::optional<AdversaryBehavior> behavior_from_string(std::string_view name) {
    if (name == "none") return AdversaryBehavior::None;
    if (name == "passive_collude") return AdversaryBehavior::PassiveCollude;
    if (name == "tamper_share") return AdversaryBehavior::TamperShare;
    if (name == "tamper_reveal") return AdversaryBehavior::TamperReveal;
    if (name == "equivocate_commit") return AdversaryBehavior::EquivocateCommit;
    if (name == "drop_messages") return AdversaryBehavior::DropMessages;
    return std::nullopt;
}

std::optional<MessageKind> message_kind_from_string(std::string_view name) {
    if (name == "commit") return MessageKind::Commit;
    if (name == "share") return MessageKind::Share;
    if (name == "share_echo") return MessageKind::ShareEcho;
    if (name == "reveal") return MessageKind::Reveal;
    if (name == "abort") return MessageKind::Abort;
    return std::nullopt;
}

bool AdversarySpec::is_corrupted(PartyId id) const {
    return contains_id(corrupted, id);
}

bool SessionOutcome::all_honest_done_with_equal_keys() const {
    const Bytes* reference = nullptr;
    for (const PartyOutcome& p : parties) {
        if (p.corrupted) {
            continue;
        }
        if (p.phase != Phase::Done || !p.key) {
            return false;
        }
        if (reference == nullptr) {
            reference = &*p.key;
        } else if (*p.key != *reference) {
            return false;
        }
    }
    return true;
}

bool SessionOutcome::all_honest_aborted() const {
    for (const PartyOutcome& p : parties) {
        if (!p.corrupted && p.phase != Phase::Aborted) {
            return false;
        }
    }
    return true;
}

bool SessionOutcome::honest_consistent() const {
    return all_honest_done_with_equal_keys() || all_honest_aborted();
}

std::vector<SecretInput> sample_secret_inputs(unsigned n, std::size_t secret_len,
                                              std::uint32_t claimed_millibits,
                                              std::uint64_t seed) {
    Rng stream = Rng(seed).fork(kSecretStreamLabel);
    std::vector<SecretInput> secrets;
    secrets.reserve(n);
    for (unsigned id = 1; id <= n; ++id) {
        SecretInput s;
        s.bytes = stream.bytes(secret_len);
        s.claimed_entropy.value_millibits = claimed_millibits;
        s.claimed_entropy.accuracy_delta_millibits = 0;
        s.claimed_entropy.sample_count = 0;
        s.party_id = static_cast<PartyId>(id);
        secrets.push_back(std::move(s));
    }
    return secrets;
}

SessionOutcome run_session(const NetworkConfig& config, const ProtocolParams& params,
                           std::vector<SecretInput> secrets) {
    params.check_structure();
    if (config.n != static_cast<unsigned>(params.n)) {
        throw std::invalid_argument("run_session: config and params disagree on n");
    }
    if (secrets.size() != config.n) {
        throw std::invalid_argument("run_session: need one secret input per party");
    }
    for (std::size_t i = 0; i < secrets.size(); ++i) {
        if (secrets[i].party_id != static_cast<PartyId>(i + 1)) {
            throw std::invalid_argument("run_session: secret inputs must be ordered by party id from 1");
        }
    }
    for (PartyId id : config.adversary.corrupted) {
        if (id < 1 || id > config.n) {
            throw std::invalid_argument("run_session: corrupted id out of range");
        }
    }
    if (config.halt_after_round < 0) {
        throw std::invalid_argument("run_session: halt round must be non-negative");
    }

    const unsigned n = config.n;
    Rng session_rng(config.seed);

    std::vector<Party> parties;
    parties.reserve(n);
    for (unsigned i = 0; i < n; ++i) {
        parties.emplace_back(params, secrets[i], session_rng.fork(i + 1));
    }

    SessionOutcome outcome;
    std::vector<Delivery> pending;

    auto queue = [&](int arrival_round, PartyId to, const ProtocolMessage& msg) {
        if (config.adversary.is_corrupted(to)) {
            outcome.adversary_view.push_back({arrival_round, to, msg.sender, msg.kind, msg.payload});
        }
        pending.push_back({to, msg});
    };

    auto commit_outbound = [&](int round, PartyId sender, std::vector<Outbound>& outs) {
        for (Outbound& out : outs) {
            out.message.sender = sender;
            std::vector<Emission> emissions =
                config.adversary.is_corrupted(sender)
                    ? apply_adversary(config.adversary, n, sender, out, outcome.interventions)
                    : std::vector<Emission>{{out.message, out.recipient}};
            for (Emission& e : emissions) {
                outcome.transcript.push_back({round, sender, e.message.kind, e.message.payload});
                if (e.recipient) {
                    queue(round + 1, *e.recipient, e.message);
                } else {
                    for (unsigned id = 1; id <= n; ++id) {
                        if (id != sender) {
                            queue(round + 1, static_cast<PartyId>(id), e.message);
                        }
                    }
                }
            }
        }
    };

    // Runs one step per party, on worker threads when requested, then commits
    // emissions in party-id order so both modes produce the same transcript.
    auto step_parties = [&](int round, auto&& step) {
        std::vector<std::vector<Outbound>> outs(n);
        if (config.parallel) {
            std::vector<std::thread> workers;
            workers.reserve(n);
            for (unsigned i = 0; i < n; ++i) {
                workers.emplace_back([&outs, &step, i] { outs[i] = step(i); });
            }
            for (std::thread& w : workers) {
                w.join();
            }
        } else {
            for (unsigned i = 0; i < n; ++i) {
                outs[i] = step(i);
            }
        }
        for (unsigned i = 0; i < n; ++i) {
            commit_outbound(round, static_cast<PartyId>(i + 1), outs[i]);
        }
    };

    step_parties(0, [&parties](unsigned i) { return parties[i].start(); });

    constexpr int kMaxRounds = 8;
    int round = 1;
    bool halted = false;
    while (round <= kMaxRounds) {
        std::vector<Delivery> current = std::move(pending);
        pending.clear();
        const bool all_terminal =
            std::all_of(parties.begin(), parties.end(), [](const Party& p) { return p.terminal(); });
        if (current.empty() && all_terminal) {
            break;
        }

        // Abort notices go first so a finalize deadline in the same round
        // still sees them; the rest follow the configured schedule.
        auto mid = std::stable_partition(current.begin(), current.end(), [](const Delivery& d) {
            return d.message.kind == MessageKind::Abort;
        });
        if (config.delivery_order == DeliveryOrder::RoundRobin) {
            std::stable_sort(mid, current.end(),
                             [](const Delivery& a, const Delivery& b) { return a.to < b.to; });
        } else {
            Rng shuffle_rng = session_rng.fork(0x100 + static_cast<std::uint64_t>(round));
            const std::size_t tail = static_cast<std::size_t>(current.end() - mid);
            for (std::size_t i = tail; i > 1; --i) {
                const std::size_t j = static_cast<std::size_t>(shuffle_rng.below(i));
                std::swap(mid[i - 1], mid[j]);
            }
        }

        std::vector<std::vector<ProtocolMessage>> inbox(n);
        for (Delivery& d : current) {
            inbox[static_cast<unsigned>(d.to) - 1].push_back(std::move(d.message));
        }
        step_parties(round, [&parties, &inbox](unsigned i) {
            std::vector<Outbound> outs;
            for (const ProtocolMessage& msg : inbox[i]) {
                std::vector<Outbound> emitted = parties[i].handle(msg);
                outs.insert(outs.end(), std::make_move_iterator(emitted.begin()),
                            std::make_move_iterator(emitted.end()));
            }
            return outs;
        });

        if (config.halt_after_round > 0 && round >= config.halt_after_round) {
            halted = true;
            break;
        }

        step_parties(round, [&parties](unsigned i) { return parties[i].on_deadline(); });
        ++round;
    }
    outcome.rounds = halted ? round : round - 1;

    outcome.parties.reserve(n);
    for (unsigned i = 0; i < n; ++i) {
        const Party& p = parties[i];
        PartyOutcome po;
        po.id = static_cast<PartyId>(i + 1);
        po.corrupted = config.adversary.is_corrupted(po.id);
        po.phase = p.phase();
        po.abort_reason = p.abort_reason();
        po.key = p.derived_key();
        po.reconstructions = p.reconstructions();
        outcome.parties.push_back(std::move(po));
    }
    return outcome;
}

ProbeReport collusion_probe(unsigned secret_bits, unsigned n, unsigned t,
                            std::uint64_t seed, unsigned colluder_count) {
    if (secret_bits < 1 || secret_bits > 8) {
        throw std::invalid_argument("collusion_probe: secret width must be in [1, 8] bits");
    }
    if (n < 2 || n > 6 || t < 2 || t > 3 || t > n) {
        throw std::invalid_argument("collusion_probe: instance too large to enumerate");
    }
    if (colluder_count > n - 1) {
        throw std::invalid_argument("collusion_probe: need at least one honest party");
    }

    ProbeReport report;
    report.secret_bits = secret_bits;
    report.n = n;
    report.t = t;
    report.colluder_count = colluder_count;
    report.vacuous = colluder_count == 0;
    report.candidates_per_source = 1ull << secret_bits;

    ProtocolParams params;
    params.n = n;
    params.t = t;
    params.m_bits = 8;
    params.kappa = 8;
    params.gamma = secret_bits;
    params.delta = 0;
    params.epsilon_log2 = 0;

    NetworkConfig config;
    config.n = n;
    config.seed = seed;
    config.halt_after_round = 2;
    config.adversary.behavior = AdversaryBehavior::PassiveCollude;
    for (unsigned id = 1; id <= colluder_count; ++id) {
        config.adversary.corrupted.push_back(static_cast<PartyId>(id));
    }

    std::vector<SecretInput> secrets = sample_secret_inputs(n, 1, 1000 * secret_bits, seed);
    const std::uint8_t mask = static_cast<std::uint8_t>((1u << secret_bits) - 1);
    for (SecretInput& s : secrets) {
        s.bytes[0] &= mask;
    }

    SessionOutcome outcome = run_session(config, params, secrets);

    // Pool the colluders' received shares per honest dealer.
    std::map<PartyId, std::vector<std::pair<FieldElement, FieldElement>>> points;
    for (const ViewEntry& e : outcome.adversary_view) {
        if (e.kind != MessageKind::Share || config.adversary.is_corrupted(e.sender)) {
            continue;
        }
        ShareBody body = decode_share(e.payload, 1);
        points[e.sender].push_back({e.recipient, body.share[0]});
    }
    report.honest_sources_checked = points.size();

    const unsigned coeff_count = t - 1;
    const std::uint64_t poly_count = 1ull << (8u * coeff_count);
    bool uniform = true;
    bool unique = colluder_count > 0 && !points.empty();
    std::uint64_t common_multiplicity = 0;
    bool first_source = true;

    for (const auto& [source, pts] : points) {
        std::vector<std::uint64_t> multiplicity(report.candidates_per_source, 0);
        if (pts.empty()) {
            for (std::uint64_t& m : multiplicity) {
                m = poly_count;
            }
        } else {
            for (std::uint64_t c = 0; c < poly_count; ++c) {
                const FieldElement a1 = static_cast<FieldElement>(c & 0xFF);
                const FieldElement a2 = static_cast<FieldElement>((c >> 8) & 0xFF);
                std::uint8_t candidate = 0;
                bool consistent = true;
                for (std::size_t k = 0; k < pts.size(); ++k) {
                    const FieldElement x = pts[k].first;
                    const FieldElement g =
                        gf_mul(a1, x) ^ gf_mul(a2, gf_mul(x, x));
                    const std::uint8_t implied = pts[k].second ^ g;
                    if (k == 0) {
                        candidate = implied;
                    } else if (implied != candidate) {
                        consistent = false;
                        break;
                    }
                }
                if (consistent && candidate < report.candidates_per_source) {
                    ++multiplicity[candidate];
                }
            }
        }

        std::uint64_t nonzero = 0;
        for (std::uint64_t m : multiplicity) {
            if (m > 0) {
                ++nonzero;
            }
            if (m != multiplicity[0]) {
                uniform = false;
            }
        }
        if (multiplicity[0] == 0) {
            uniform = false;
        }
        const std::uint8_t true_secret = secrets[static_cast<unsigned>(source) - 1].bytes[0];
        if (multiplicity[true_secret] == 0) {
            uniform = false;
            unique = false;
        }
        if (nonzero != 1 || multiplicity[true_secret] == 0) {
            unique = false;
        }
        if (first_source) {
            common_multiplicity = multiplicity[0];
            first_source = false;
        } else if (multiplicity[0] != common_multiplicity) {
            uniform = false;
        }
    }

    if (colluder_count > 0 && points.size() != n - colluder_count) {
        uniform = false;
        unique = false;
    }
    report.full_alphabet_uniform = uniform;
    report.consistent_multiplicity = uniform && !points.empty() ? common_multiplicity : 0;
    report.unique_reconstruction = unique;
    return report;
}

MatrixSummary adversarial_matrix(const ProtocolParams& params,
                                 std::span<const AdversaryBehavior> behaviors,
                                 std::uint64_t seed) {
    params.check_structure();
    const unsigned n = static_cast<unsigned>(params.n);
    const unsigned t = static_cast<unsigned>(params.t);
    const std::size_t secret_len = static_cast<std::size_t>(params.m_bits / 8);

    std::vector<std::vector<PartyId>> sets;
    for (unsigned k = 1; k < t; ++k) {
        std::vector<std::vector<PartyId>> of_size = subsets_of_size(n, k);
        sets.insert(sets.end(), std::make_move_iterator(of_size.begin()),
                    std::make_move_iterator(of_size.end()));
    }

    MatrixSummary summary;
    Rng root(seed);
    std::uint64_t run_index = 0;

    auto execute = [&](AdversaryBehavior behavior, const std::vector<PartyId>& corrupted,
                       const char* variant) {
        NetworkConfig config;
        config.n = n;
        config.seed = root.fork(2 * run_index).seed();
        config.adversary.corrupted = corrupted;
        config.adversary.behavior = behavior;
        const std::string_view variant_name(variant);
        if (variant_name == "selective") {
            for (unsigned id = 1; id <= n; ++id) {
                if (!contains_id(corrupted, static_cast<PartyId>(id))) {
                    config.adversary.target_recipients = {static_cast<PartyId>(id)};
                    break;
                }
            }
        } else if (variant_name == "echo") {
            config.adversary.tamper_echo = true;
        }

        std::vector<SecretInput> secrets =
            sample_secret_inputs(n, secret_len, static_cast<std::uint32_t>(1000 * params.gamma),
                                 root.fork(2 * run_index + 1).seed());
        SessionOutcome outcome = run_session(config, params, secrets);

        AttackRun run;
        run.behavior = behavior;
        run.corrupted = corrupted;
        run.variant = variant;
        run.interventions = outcome.interventions;
        run.all_honest_aborted = outcome.all_honest_aborted();
        run.all_honest_done = outcome.all_honest_done_with_equal_keys();
        run.split_outcome = !outcome.honest_consistent();
        for (const PartyOutcome& p : outcome.parties) {
            if (p.corrupted) {
                continue;
            }
            for (const auto& [source, value] : p.reconstructions) {
                if (value != secrets[static_cast<unsigned>(source) - 1].bytes) {
                    run.invalid_share_accepted = true;
                }
            }
        }
        if (run.invalid_share_accepted || run.split_outcome) {
            ++summary.wins;
        }
        if (run.split_outcome) {
            summary.consistent = false;
        }
        summary.runs.push_back(std::move(run));
        ++run_index;
    };

    for (AdversaryBehavior behavior : behaviors) {
        std::vector<const char*> variants;
        switch (behavior) {
            case AdversaryBehavior::None:
                break;
            case AdversaryBehavior::PassiveCollude:
                variants = {"uniform"};
                break;
            case AdversaryBehavior::TamperShare:
                variants = {"uniform", "selective", "echo"};
                break;
            case AdversaryBehavior::TamperReveal:
            case AdversaryBehavior::EquivocateCommit:
            case AdversaryBehavior::DropMessages:
                variants = {"uniform", "selective"};
                break;
        }
        for (const std::vector<PartyId>& set : sets) {
            for (const char* variant : variants) {
                execute(behavior, set, variant);
            }
        }
    }

    if (n <= 6 && t <= 3) {
        ProbeReport demo = collusion_probe(8, n, t, root.fork(0x20000).seed(), t);
        summary.out_of_model_secrecy_break = demo.unique_reconstruction;
    }
    return summary;
}

}  // namespace eka
