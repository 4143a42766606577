#include "eka/serial.hpp"

#include <array>
#include <cmath>
#include <cstring>
#include <map>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "eka/bytes.hpp"
#include "eka/commitment.hpp"
#include "eka/hash.hpp"
#include "eka/protocol.hpp"
#include "eka/rng.hpp"

namespace eka {
namespace {

using Json = nlohmann::ordered_json;

Json parse_text(const std::string& text, const char* what) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        throw std::invalid_argument(std::string(what) + ": malformed JSON");
    }
    return j;
}

const Json& require_field(const Json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key)) {
        throw std::invalid_argument(std::string(what) + ": missing field '" + key + "'");
    }
    return j.at(key);
}

std::int64_t int_field(const Json& j, const char* key, const char* what) {
    const Json& v = require_field(j, key, what);
    if (!v.is_number_integer()) {
        throw std::invalid_argument(std::string(what) + ": field '" + key +
                                    "' must be an integer");
    }
    return v.get<std::int64_t>();
}

std::string hex_field(const Json& j, const char* key, const char* what) {
    const Json& v = require_field(j, key, what);
    if (!v.is_string()) {
        throw std::invalid_argument(std::string(what) + ": field '" + key +
                                    "' must be a hex string");
    }
    return v.get<std::string>();
}

PartyId party_id_from(const Json& v, const char* what) {
    if (!v.is_number_integer()) {
        throw std::invalid_argument(std::string(what) + ": party id must be an integer");
    }
    const std::int64_t id = v.get<std::int64_t>();
    if (id < 1 || id > 255) {
        throw std::invalid_argument(std::string(what) + ": party id must be in [1, 255]");
    }
    return static_cast<PartyId>(id);
}

std::vector<PartyId> ids_from(const Json& arr, const char* what) {
    if (!arr.is_array()) {
        throw std::invalid_argument(std::string(what) + ": expected an array of party ids");
    }
    std::vector<PartyId> out;
    out.reserve(arr.size());
    for (const Json& v : arr) {
        out.push_back(party_id_from(v, what));
    }
    return out;
}

Json log2_or_null(double value) {
    return std::isfinite(value) ? Json(value) : Json(nullptr);
}

Json params_to_obj(const ProtocolParams& p) {
    Json j;
    j["n"] = p.n;
    j["t"] = p.t;
    j["m_bits"] = p.m_bits;
    j["kappa"] = p.kappa;
    j["gamma"] = p.gamma;
    j["delta"] = p.delta;
    j["epsilon_log2"] = p.epsilon_log2;
    j["lambda"] = p.lambda;
    j["q_queries_log2"] = p.q_queries_log2;
    j["q_memory_log2"] = p.q_memory_log2;
    j["zeta"] = p.zeta;
    return j;
}

ProtocolParams params_from_obj(const Json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("params: expected an object");
    }
    static const std::map<std::string, std::int64_t ProtocolParams::*> kFields = {
        {"n", &ProtocolParams::n},
        {"t", &ProtocolParams::t},
        {"m_bits", &ProtocolParams::m_bits},
        {"kappa", &ProtocolParams::kappa},
        {"gamma", &ProtocolParams::gamma},
        {"delta", &ProtocolParams::delta},
        {"epsilon_log2", &ProtocolParams::epsilon_log2},
        {"lambda", &ProtocolParams::lambda},
        {"q_queries_log2", &ProtocolParams::q_queries_log2},
        {"q_memory_log2", &ProtocolParams::q_memory_log2},
        {"zeta", &ProtocolParams::zeta},
    };
    ProtocolParams p;
    for (const auto& [key, value] : j.items()) {
        auto it = kFields.find(key);
        if (it == kFields.end()) {
            throw std::invalid_argument("params: unknown field '" + key + "'");
        }
        if (!value.is_number_integer()) {
            throw std::invalid_argument("params: field '" + key + "' must be an integer");
        }
        p.*(it->second) = value.get<std::int64_t>();
    }
    return p;
}

Json adversary_to_obj(const AdversarySpec& spec) {
    Json j;
    j["behavior"] = to_string(spec.behavior);
    j["corrupted"] = Json::array();
    for (PartyId id : spec.corrupted) {
        j["corrupted"].push_back(id);
    }
    j["target_recipients"] = Json::array();
    for (PartyId id : spec.target_recipients) {
        j["target_recipients"].push_back(id);
    }
    j["drop_kinds"] = Json::array();
    for (MessageKind kind : spec.drop_kinds) {
        j["drop_kinds"].push_back(to_string(kind));
    }
    j["tamper_echo"] = spec.tamper_echo;
    return j;
}

AdversarySpec adversary_from_obj(const Json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("adversary: expected an object");
    }
    AdversarySpec spec;
    for (const auto& [key, value] : j.items()) {
        if (key == "behavior") {
            if (!value.is_string()) {
                throw std::invalid_argument("adversary: behavior must be a string");
            }
            const auto behavior = behavior_from_string(value.get<std::string>());
            if (!behavior) {
                throw std::invalid_argument("adversary: unknown behavior '" +
                                            value.get<std::string>() + "'");
            }
            spec.behavior = *behavior;
        } else if (key == "corrupted") {
            spec.corrupted = ids_from(value, "adversary");
        } else if (key == "target_recipients") {
            spec.target_recipients = ids_from(value, "adversary");
        } else if (key == "drop_kinds") {
            if (!value.is_array()) {
                throw std::invalid_argument("adversary: drop_kinds must be an array");
            }
            for (const Json& name : value) {
                if (!name.is_string()) {
                    throw std::invalid_argument("adversary: drop_kinds entries must be strings");
                }
                const auto kind = message_kind_from_string(name.get<std::string>());
                if (!kind) {
                    throw std::invalid_argument("adversary: unknown message kind '" +
                                                name.get<std::string>() + "'");
                }
                spec.drop_kinds.push_back(*kind);
            }
        } else if (key == "tamper_echo") {
            if (!value.is_boolean()) {
                throw std::invalid_argument("adversary: tamper_echo must be a boolean");
            }
            spec.tamper_echo = value.get<bool>();
        } else {
            throw std::invalid_argument("adversary: unknown field '" + key + "'");
        }
    }
    return spec;
}

}  // namespace

std::string distribution_to_json(const Distribution& d) {
    Json j = Json::array();
    for (double p : d.probs) {
        j.push_back(p);
    }
    return j.dump() + "\n";
}

Distribution distribution_from_json(const std::string& text) {
    Json j = parse_text(text, "distribution");
    if (!j.is_array()) {
        throw std::invalid_argument("distribution: expected an array of probabilities");
    }
    Distribution d;
    d.probs.reserve(j.size());
    for (const Json& v : j) {
        if (!v.is_number()) {
            throw std::invalid_argument("distribution: entries must be numbers");
        }
        d.probs.push_back(v.get<double>());
    }
    d.validate();
    return d;
}

std::string estimate_to_json(const EntropyEstimate& e) {
    Json j;
    j["value_millibits"] = e.value_millibits;
    j["accuracy_delta_millibits"] = e.accuracy_delta_millibits;
    j["sample_count"] = e.sample_count;
    return j.dump(2) + "\n";
}

EntropyEstimate estimate_from_json(const std::string& text) {
    Json j = parse_text(text, "estimate");
    EntropyEstimate e;
    e.value_millibits = static_cast<std::uint32_t>(int_field(j, "value_millibits", "estimate"));
    e.accuracy_delta_millibits =
        static_cast<std::uint32_t>(int_field(j, "accuracy_delta_millibits", "estimate"));
    e.sample_count = static_cast<std::uint64_t>(int_field(j, "sample_count", "estimate"));
    return e;
}

std::string bundle_to_json(const ShareBundle& b) {
    Json j;
    j["source_id"] = b.source_id;
    j["recipient_id"] = b.recipient_id;
    j["share_hex"] = to_hex(b.share_bytes);
    return j.dump(2) + "\n";
}

ShareBundle bundle_from_json(const std::string& text) {
    Json j = parse_text(text, "bundle");
    ShareBundle b;
    b.source_id = party_id_from(require_field(j, "source_id", "bundle"), "bundle");
    b.recipient_id = party_id_from(require_field(j, "recipient_id", "bundle"), "bundle");
    b.share_bytes = from_hex(hex_field(j, "share_hex", "bundle"));
    return b;
}

std::string params_to_json(const ProtocolParams& p) {
    return params_to_obj(p).dump(2) + "\n";
}

ProtocolParams params_from_json(const std::string& text) {
    return params_from_obj(parse_text(text, "params"));
}

AdversarySpec adversary_from_json(const std::string& text) {
    return adversary_from_obj(parse_text(text, "adversary"));
}

std::string adversary_to_json(const AdversarySpec& spec) {
    return adversary_to_obj(spec).dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
    Json j = parse_text(text, "scenario");
    if (!j.is_object()) {
        throw std::invalid_argument("scenario: expected an object");
    }
    Scenario scenario;
    bool have_n = false;
    bool have_t = false;
    for (const auto& [key, value] : j.items()) {
        if (key == "n") {
            scenario.n = static_cast<unsigned>(int_field(j, "n", "scenario"));
            have_n = true;
        } else if (key == "t") {
            scenario.t = static_cast<unsigned>(int_field(j, "t", "scenario"));
            have_t = true;
        } else if (key == "seed") {
            if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
                throw std::invalid_argument("scenario: seed must be a non-negative integer");
            }
            scenario.seed = value.get<std::uint64_t>();
        } else if (key == "delivery_order") {
            if (!value.is_string()) {
                throw std::invalid_argument("scenario: delivery_order must be a string");
            }
            const auto order = delivery_order_from_string(value.get<std::string>());
            if (!order) {
                throw std::invalid_argument("scenario: unknown delivery order '" +
                                            value.get<std::string>() + "'");
            }
            scenario.delivery_order = *order;
        } else if (key == "params") {
            scenario.params = params_from_obj(value);
        } else if (key == "adversary") {
            scenario.adversary = adversary_from_obj(value);
        } else {
            throw std::invalid_argument("scenario: unknown field '" + key + "'");
        }
    }
    if (have_n) {
        scenario.params.n = scenario.n;
    } else {
        scenario.n = static_cast<unsigned>(scenario.params.n);
    }
    if (have_t) {
        scenario.params.t = scenario.t;
    } else {
        scenario.t = static_cast<unsigned>(scenario.params.t);
    }
    return scenario;
}

std::string scenario_to_json(const Scenario& scenario) {
    Json j;
    j["n"] = scenario.n;
    j["t"] = scenario.t;
    j["seed"] = scenario.seed;
    j["delivery_order"] = to_string(scenario.delivery_order);
    j["params"] = params_to_obj(scenario.params);
    j["adversary"] = adversary_to_obj(scenario.adversary);
    return j.dump(2) + "\n";
}

std::string params_report_json(const ProtocolParams& p, bool gamma_solved) {
    const BoundReport report = advantage_bound(p);
    const std::vector<ConstraintVerdict> verdicts = mitigation_check(p);

    Json j;
    j["params"] = params_to_obj(p);
    j["gamma_solved"] = gamma_solved;
    j["hinf_bits"] = report.hinf_S_bits;
    j["margin_bits"] = report.margin_bits;
    j["feasible"] = report.feasible;
    Json terms;
    terms["key_guess"] = log2_or_null(report.advantage_log2.key_guess);
    terms["hash_collision"] = log2_or_null(report.advantage_log2.hash_collision);
    terms["authentication"] = log2_or_null(report.advantage_log2.authentication);
    terms["quantum_memory"] = log2_or_null(report.advantage_log2.quantum_memory);
    terms["total"] = log2_or_null(report.advantage_log2.total);
    j["advantage_log2"] = std::move(terms);
    j["active_attack_log2"] = log2_or_null(report.active_attack_log2);
    j["forged_share_log2"] = log2_or_null(report.forged_share_log2);
    j["comm_cost_bits"] = report.comm_cost_bits;
    j["comm_cost_kb"] = comm_cost_kb(p.n, p.m_bits);
    Json mitigations = Json::array();
    for (const ConstraintVerdict& v : verdicts) {
        Json entry;
        entry["name"] = v.name;
        entry["pass"] = v.pass;
        entry["detail"] = v.detail;
        mitigations.push_back(std::move(entry));
    }
    j["mitigations"] = std::move(mitigations);
    return j.dump(2) + "\n";
}

std::string table_report_json(const TableReport& report) {
    Json j;
    j["kappa"] = report.kappa;
    j["m_bits"] = report.m_bits;
    j["delta"] = report.delta;
    j["epsilon_log2"] = report.epsilon_log2;
    Json rows = Json::array();
    for (const TableRow& row : report.rows) {
        Json r;
        r["n"] = row.n;
        r["gamma_computed"] = row.gamma_computed;
        r["gamma_reference"] = row.gamma_reference;
        r["gamma_match"] = row.gamma_match;
        r["hinf_computed"] = row.hinf_computed;
        r["hinf_reference"] = row.hinf_reference;
        r["hinf_match"] = row.hinf_match;
        r["comm_kb_computed"] = row.comm_kb_computed;
        r["comm_kb_reference"] = row.comm_kb_reference;
        r["comm_match"] = row.comm_match;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["discrepancies"] = report.discrepancies;
    return j.dump(2) + "\n";
}

std::string transcript_to_json_lines(const std::vector<TranscriptEntry>& transcript) {
    std::string out;
    for (const TranscriptEntry& entry : transcript) {
        Json j;
        j["round"] = entry.round;
        j["sender"] = entry.sender;
        j["kind"] = to_string(entry.kind);
        j["payload_hex"] = to_hex(entry.payload);
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::string session_report_json(const SessionOutcome& outcome, const ProtocolParams& p,
                                std::uint64_t seed, bool reveal_key) {
    Json j;
    j["seed"] = seed;
    j["n"] = p.n;
    j["t"] = p.t;
    j["rounds"] = outcome.rounds;
    j["interventions"] = outcome.interventions;
    Json parties = Json::array();
    for (const PartyOutcome& party : outcome.parties) {
        Json entry;
        entry["id"] = party.id;
        entry["corrupted"] = party.corrupted;
        entry["phase"] = to_string(party.phase);
        entry["abort_reason"] =
            party.abort_reason ? Json(to_string(*party.abort_reason)) : Json(nullptr);
        if (!party.key) {
            entry[reveal_key ? "key" : "key_digest"] = nullptr;
        } else if (reveal_key) {
            entry["key"] = to_hex(*party.key);
        } else {
            entry["key_digest"] = to_hex(sha3_256(*party.key));
        }
        parties.push_back(std::move(entry));
    }
    j["parties"] = std::move(parties);
    j["all_honest_done_with_equal_keys"] = outcome.all_honest_done_with_equal_keys();
    j["all_honest_aborted"] = outcome.all_honest_aborted();
    return j.dump(2) + "\n";
}

std::string probe_report_json(const ProbeReport& report) {
    Json j;
    j["secret_bits"] = report.secret_bits;
    j["n"] = report.n;
    j["t"] = report.t;
    j["colluder_count"] = report.colluder_count;
    j["vacuous"] = report.vacuous;
    j["honest_sources_checked"] = report.honest_sources_checked;
    j["candidates_per_source"] = report.candidates_per_source;
    j["consistent_multiplicity"] = report.consistent_multiplicity;
    j["full_alphabet_uniform"] = report.full_alphabet_uniform;
    j["unique_reconstruction"] = report.unique_reconstruction;
    return j.dump(2) + "\n";
}

std::string matrix_report_json(const MatrixSummary& summary) {
    Json j;
    j["wins"] = summary.wins;
    j["consistent"] = summary.consistent;
    j["out_of_model_secrecy_break"] = summary.out_of_model_secrecy_break;
    Json runs = Json::array();
    for (const AttackRun& run : summary.runs) {
        Json entry;
        entry["behavior"] = to_string(run.behavior);
        entry["corrupted"] = Json::array();
        for (PartyId id : run.corrupted) {
            entry["corrupted"].push_back(id);
        }
        entry["variant"] = run.variant;
        entry["invalid_share_accepted"] = run.invalid_share_accepted;
        entry["split_outcome"] = run.split_outcome;
        entry["all_honest_aborted"] = run.all_honest_aborted;
        entry["all_honest_done"] = run.all_honest_done;
        entry["interventions"] = run.interventions;
        runs.push_back(std::move(entry));
    }
    j["runs"] = std::move(runs);
    return j.dump(2) + "\n";
}

std::string attack_suite_report_json(const ProtocolParams& p, const MatrixSummary& matrix,
                                     const ProbeReport& below_threshold,
                                     const ProbeReport& at_threshold) {
    Json j;
    j["params"] = params_to_obj(p);
    j["matrix"] = Json::parse(matrix_report_json(matrix));
    j["probe_below_threshold"] = Json::parse(probe_report_json(below_threshold));
    j["probe_at_threshold"] = Json::parse(probe_report_json(at_threshold));
    return j.dump(2) + "\n";
}

std::vector<std::uint16_t> samples_from_json(const std::string& text) {
    Json j = parse_text(text, "samples");
    if (!j.is_array()) {
        throw std::invalid_argument("samples: expected an array of integers");
    }
    std::vector<std::uint16_t> samples;
    samples.reserve(j.size());
    for (const Json& v : j) {
        if (!v.is_number_integer()) {
            throw std::invalid_argument("samples: entries must be integers");
        }
        const std::int64_t value = v.get<std::int64_t>();
        if (value < 0 || value > 0xFFFF) {
            throw std::invalid_argument("samples: entries must be in [0, 65535]");
        }
        samples.push_back(static_cast<std::uint16_t>(value));
    }
    return samples;
}

std::string entropy_report_json(const EntropyReportInputs& inputs) {
    Json j;
    Json per = Json::array();
    for (const Distribution& d : inputs.distributions) {
        Json entry;
        entry["size"] = d.size();
        entry["min_entropy"] = min_entropy(d);
        entry["shannon_entropy"] = shannon_entropy(d);
        entry["collision_entropy"] = collision_entropy(d);
        if (inputs.alpha) {
            entry["renyi_alpha"] = *inputs.alpha;
            entry["renyi_entropy"] = renyi_entropy(d, *inputs.alpha);
        }
        per.push_back(std::move(entry));
    }
    j["distributions"] = std::move(per);

    if (inputs.distributions.size() >= 2) {
        Distribution combined = inputs.distributions.front();
        for (std::size_t i = 1; i < inputs.distributions.size(); ++i) {
            combined = xor_convolve(combined, inputs.distributions[i]);
        }
        Json conv;
        conv["size"] = combined.size();
        conv["min_entropy"] = min_entropy(combined);
        conv["shannon_entropy"] = shannon_entropy(combined);
        conv["collision_entropy"] = collision_entropy(combined);
        j["convolution"] = std::move(conv);

        unsigned width_bits = 0;
        for (std::size_t s = combined.size(); s > 1; s >>= 1) {
            ++width_bits;
        }
        const PreservationReport bound =
            check_preservation_bound(inputs.distributions, width_bits);
        Json pres;
        pres["exact_bits"] = bound.exact_bits;
        pres["floor_bits"] = bound.floor_bits;
        pres["max_component_bits"] = bound.max_component_bits;
        pres["sum_floor_bits"] = bound.sum_floor_bits;
        pres["holds"] = bound.holds;
        j["preservation"] = std::move(pres);
    }

    if (inputs.estimate) {
        Json est;
        est["value_millibits"] = inputs.estimate->value_millibits;
        est["accuracy_delta_millibits"] = inputs.estimate->accuracy_delta_millibits;
        est["sample_count"] = inputs.estimate->sample_count;
        j["estimate"] = std::move(est);
    }
    return j.dump(2) + "\n";
}

namespace {

Bytes pattern_bytes(std::size_t len, std::uint8_t start, std::uint8_t step) {
    Bytes out(len);
    std::uint8_t v = start;
    for (std::uint8_t& b : out) {
        b = v;
        v = static_cast<std::uint8_t>(v + step);
    }
    return out;
}

Bytes ascii_bytes(const char* s) {
    return Bytes(s, s + std::strlen(s));
}

struct VectorInputs {
    std::vector<Bytes> sha3_inputs;
    std::vector<std::pair<Bytes, std::size_t>> shake_inputs;
    std::vector<SecretInput> commitment_inputs;
    std::vector<std::array<Bytes, 3>> mac_inputs;  // key, message, salt
    std::vector<std::pair<std::vector<Bytes>, std::int64_t>> derive_inputs;
    std::vector<Bytes> linear_secrets;
    std::vector<FieldElement> linear_coefficients;
    std::int64_t linear_kappa = 64;
    Bytes hybrid_first;
    Bytes hybrid_second;
    std::uint64_t share_seed = 7;
    SecretInput share_secret;
};

VectorInputs fixed_vector_inputs() {
    VectorInputs in;
    in.sha3_inputs = {Bytes{}, ascii_bytes("abc"), pattern_bytes(64, 0x00, 0x01)};
    in.shake_inputs = {{Bytes{}, 16}, {ascii_bytes("abc"), 32}, {pattern_bytes(48, 0x07, 0x03), 48}};

    SecretInput c1;
    c1.bytes = pattern_bytes(48, 0x01, 0x05);
    c1.claimed_entropy = {351000, 10000, 1000000};
    c1.party_id = 1;
    SecretInput c2;
    c2.bytes = ascii_bytes("twelve bytes");
    c2.claimed_entropy = {12000, 500, 4096};
    c2.party_id = 7;
    in.commitment_inputs = {c1, c2};

    in.mac_inputs = {{pattern_bytes(32, 0x80, 0x01), ascii_bytes("share verification message"),
                      pattern_bytes(32, 0x11, 0x07)}};

    std::vector<Bytes> five;
    for (unsigned i = 0; i < 5; ++i) {
        five.push_back(pattern_bytes(48, static_cast<std::uint8_t>(16 * i + 1),
                                     static_cast<std::uint8_t>(i + 1)));
    }
    std::vector<Bytes> three;
    for (unsigned i = 0; i < 3; ++i) {
        three.push_back(pattern_bytes(32, static_cast<std::uint8_t>(9 * i + 2),
                                      static_cast<std::uint8_t>(2 * i + 3)));
    }
    in.derive_inputs = {{five, 128}, {three, 256}};

    in.linear_secrets = {pattern_bytes(8, 0x21, 0x01), pattern_bytes(8, 0x42, 0x02),
                         pattern_bytes(8, 0x63, 0x03)};
    in.linear_coefficients = {0x01, 0x02, 0x03};

    in.hybrid_first = pattern_bytes(16, 0x03, 0x03);
    in.hybrid_second = pattern_bytes(16, 0xC8, 0xFB);

    in.share_secret.bytes = pattern_bytes(4, 0xA0, 0x0B);
    in.share_secret.claimed_entropy = {32000, 0, 0};
    in.share_secret.party_id = 1;
    return in;
}

}  // namespace

std::string generate_vectors_json() {
    const VectorInputs in = fixed_vector_inputs();
    Json j;

    Json sha3 = Json::array();
    for (const Bytes& input : in.sha3_inputs) {
        Json entry;
        entry["input_hex"] = to_hex(input);
        entry["digest"] = to_hex(sha3_256(input));
        sha3.push_back(std::move(entry));
    }
    j["sha3_256"] = std::move(sha3);

    Json shake = Json::array();
    for (const auto& [input, out_len] : in.shake_inputs) {
        Json entry;
        entry["input_hex"] = to_hex(input);
        entry["output_len"] = out_len;
        entry["digest"] = to_hex(shake256(input, out_len));
        shake.push_back(std::move(entry));
    }
    j["shake256"] = std::move(shake);

    Json commitments = Json::array();
    for (const SecretInput& secret : in.commitment_inputs) {
        const Commitment c = commit(secret);
        Json entry;
        entry["secret_hex"] = to_hex(secret.bytes);
        entry["millibits"] = secret.claimed_entropy.value_millibits;
        entry["party_id"] = secret.party_id;
        entry["digest"] = to_hex(c.digest);
        commitments.push_back(std::move(entry));
    }
    j["commitment"] = std::move(commitments);

    Json macs = Json::array();
    for (const auto& [key, message, salt] : in.mac_inputs) {
        Json entry;
        entry["key_hex"] = to_hex(key);
        entry["message_hex"] = to_hex(message);
        entry["salt_hex"] = to_hex(salt);
        entry["tag"] = to_hex(entropy_mac(key, message, salt));
        macs.push_back(std::move(entry));
    }
    j["entropy_mac"] = std::move(macs);

    Json derived = Json::array();
    for (const auto& [secrets, kappa] : in.derive_inputs) {
        Json entry;
        Json hexes = Json::array();
        for (const Bytes& s : secrets) {
            hexes.push_back(to_hex(s));
        }
        entry["secrets_hex"] = std::move(hexes);
        entry["kappa"] = kappa;
        entry["key"] = to_hex(derive_key(secrets, kappa));
        derived.push_back(std::move(entry));
    }
    j["derived_key"] = std::move(derived);

    {
        Json entry;
        Json hexes = Json::array();
        for (const Bytes& s : in.linear_secrets) {
            hexes.push_back(to_hex(s));
        }
        entry["secrets_hex"] = std::move(hexes);
        Json coeffs = Json::array();
        for (FieldElement c : in.linear_coefficients) {
            coeffs.push_back(c);
        }
        entry["coefficients"] = std::move(coeffs);
        entry["kappa"] = in.linear_kappa;
        entry["key"] =
            to_hex(derive_linear_key(in.linear_secrets, in.linear_coefficients, in.linear_kappa));
        j["linear_key"] = Json::array({std::move(entry)});
    }

    {
        Json entry;
        entry["first_hex"] = to_hex(in.hybrid_first);
        entry["second_hex"] = to_hex(in.hybrid_second);
        entry["combined"] = to_hex(hybrid_combine(in.hybrid_first, in.hybrid_second));
        j["hybrid"] = Json::array({std::move(entry)});
    }

    {
        Rng rng(in.share_seed);
        const unsigned n = 5;
        const unsigned t = 3;
        const std::vector<ShareBundle> bundles = make_shares(in.share_secret, n, t, rng);
        Json entry;
        entry["seed"] = in.share_seed;
        entry["n"] = n;
        entry["t"] = t;
        entry["secret_hex"] = to_hex(in.share_secret.bytes);
        entry["claimed_millibits"] = in.share_secret.claimed_entropy.value_millibits;
        entry["party_id"] = in.share_secret.party_id;
        Json bundle_list = Json::array();
        for (const ShareBundle& b : bundles) {
            Json item;
            item["source_id"] = b.source_id;
            item["recipient_id"] = b.recipient_id;
            item["share_hex"] = to_hex(b.share_bytes);
            bundle_list.push_back(std::move(item));
        }
        entry["bundles"] = std::move(bundle_list);
        const std::vector<ShareBundle> first_t(bundles.begin(), bundles.begin() + t);
        entry["reconstructed_hex"] = to_hex(reconstruct_secret(first_t, t));
        j["shares"] = Json::array({std::move(entry)});
    }

    return j.dump(2) + "\n";
}

bool verify_vectors_json(const std::string& text, std::string& first_mismatch) {
    first_mismatch.clear();
    try {
        const Json j = parse_text(text, "vectors");
        if (!j.is_object()) {
            first_mismatch = "vectors: expected an object";
            return false;
        }
        const char* kSections[] = {"sha3_256",    "shake256", "commitment", "entropy_mac",
                                   "derived_key", "linear_key", "hybrid",   "shares"};
        for (const char* section : kSections) {
            if (!j.contains(section) || !j.at(section).is_array()) {
                first_mismatch = std::string(section) + ": section missing";
                return false;
            }
        }

        std::size_t index = 0;
        for (const Json& entry : j.at("sha3_256")) {
            const Bytes input = from_hex(hex_field(entry, "input_hex", "sha3_256"));
            if (to_hex(sha3_256(input)) != hex_field(entry, "digest", "sha3_256")) {
                first_mismatch = "sha3_256[" + std::to_string(index) + "]: digest mismatch";
                return false;
            }
            ++index;
        }

        index = 0;
        for (const Json& entry : j.at("shake256")) {
            const Bytes input = from_hex(hex_field(entry, "input_hex", "shake256"));
            const std::size_t out_len =
                static_cast<std::size_t>(int_field(entry, "output_len", "shake256"));
            if (to_hex(shake256(input, out_len)) != hex_field(entry, "digest", "shake256")) {
                first_mismatch = "shake256[" + std::to_string(index) + "]: digest mismatch";
                return false;
            }
            ++index;
        }

        index = 0;
        for (const Json& entry : j.at("commitment")) {
            SecretInput secret;
            secret.bytes = from_hex(hex_field(entry, "secret_hex", "commitment"));
            secret.claimed_entropy.value_millibits =
                static_cast<std::uint32_t>(int_field(entry, "millibits", "commitment"));
            secret.party_id =
                party_id_from(require_field(entry, "party_id", "commitment"), "commitment");
            if (to_hex(commit(secret).digest) != hex_field(entry, "digest", "commitment")) {
                first_mismatch = "commitment[" + std::to_string(index) + "]: digest mismatch";
                return false;
            }
            ++index;
        }

        index = 0;
        for (const Json& entry : j.at("entropy_mac")) {
            const Bytes key = from_hex(hex_field(entry, "key_hex", "entropy_mac"));
            const Bytes message = from_hex(hex_field(entry, "message_hex", "entropy_mac"));
            const Bytes salt = from_hex(hex_field(entry, "salt_hex", "entropy_mac"));
            if (to_hex(entropy_mac(key, message, salt)) != hex_field(entry, "tag", "entropy_mac")) {
                first_mismatch = "entropy_mac[" + std::to_string(index) + "]: tag mismatch";
                return false;
            }
            ++index;
        }

        index = 0;
        for (const Json& entry : j.at("derived_key")) {
            std::vector<Bytes> secrets;
            for (const Json& hex : require_field(entry, "secrets_hex", "derived_key")) {
                secrets.push_back(from_hex(hex.get<std::string>()));
            }
            const std::int64_t kappa = int_field(entry, "kappa", "derived_key");
            if (to_hex(derive_key(secrets, kappa)) != hex_field(entry, "key", "derived_key")) {
                first_mismatch = "derived_key[" + std::to_string(index) + "]: key mismatch";
                return false;
            }
            ++index;
        }

        index = 0;
        for (const Json& entry : j.at("linear_key")) {
            std::vector<Bytes> secrets;
            for (const Json& hex : require_field(entry, "secrets_hex", "linear_key")) {
                secrets.push_back(from_hex(hex.get<std::string>()));
            }
            std::vector<FieldElement> coefficients;
            for (const Json& c : require_field(entry, "coefficients", "linear_key")) {
                coefficients.push_back(static_cast<FieldElement>(c.get<unsigned>()));
            }
            const std::int64_t kappa = int_field(entry, "kappa", "linear_key");
            if (to_hex(derive_linear_key(secrets, coefficients, kappa)) !=
                hex_field(entry, "key", "linear_key")) {
                first_mismatch = "linear_key[" + std::to_string(index) + "]: key mismatch";
                return false;
            }
            ++index;
        }

        index = 0;
        for (const Json& entry : j.at("hybrid")) {
            const Bytes first = from_hex(hex_field(entry, "first_hex", "hybrid"));
            const Bytes second = from_hex(hex_field(entry, "second_hex", "hybrid"));
            if (to_hex(hybrid_combine(first, second)) != hex_field(entry, "combined", "hybrid")) {
                first_mismatch = "hybrid[" + std::to_string(index) + "]: combination mismatch";
                return false;
            }
            ++index;
        }

        index = 0;
        for (const Json& entry : j.at("shares")) {
            SecretInput secret;
            secret.bytes = from_hex(hex_field(entry, "secret_hex", "shares"));
            secret.claimed_entropy.value_millibits =
                static_cast<std::uint32_t>(int_field(entry, "claimed_millibits", "shares"));
            secret.party_id = party_id_from(require_field(entry, "party_id", "shares"), "shares");
            const std::uint64_t seed = static_cast<std::uint64_t>(int_field(entry, "seed", "shares"));
            const unsigned n = static_cast<unsigned>(int_field(entry, "n", "shares"));
            const unsigned t = static_cast<unsigned>(int_field(entry, "t", "shares"));
            Rng rng(seed);
            const std::vector<ShareBundle> bundles = make_shares(secret, n, t, rng);
            const Json& listed = require_field(entry, "bundles", "shares");
            if (!listed.is_array() || listed.size() != bundles.size()) {
                first_mismatch = "shares[" + std::to_string(index) + "]: bundle count mismatch";
                return false;
            }
            for (std::size_t b = 0; b < bundles.size(); ++b) {
                const Json& item = listed.at(b);
                if (int_field(item, "source_id", "shares") != bundles[b].source_id ||
                    int_field(item, "recipient_id", "shares") != bundles[b].recipient_id ||
                    hex_field(item, "share_hex", "shares") != to_hex(bundles[b].share_bytes)) {
                    first_mismatch = "shares[" + std::to_string(index) + "]: bundle " +
                                     std::to_string(b) + " mismatch";
                    return false;
                }
            }
            const std::vector<ShareBundle> first_t(bundles.begin(), bundles.begin() + t);
            if (to_hex(reconstruct_secret(first_t, t)) !=
                hex_field(entry, "reconstructed_hex", "shares")) {
                first_mismatch = "shares[" + std::to_string(index) + "]: reconstruction mismatch";
                return false;
            }
            ++index;
        }
        return true;
    } catch (const std::exception& e) {
        first_mismatch = e.what();
        return false;
    }
}

}  // namespace eka
