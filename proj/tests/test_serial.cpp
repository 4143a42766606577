#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eka/serial.hpp"
#include "eka/simnet.hpp"

namespace {

using Json = nlohmann::json;
using eka::ProtocolParams;

eka::SessionOutcome tiny_session(std::uint64_t seed) {
    eka::NetworkConfig config;
    config.n = 3;
    config.seed = seed;
    ProtocolParams p;
    p.n = 3;
    p.t = 2;
    auto secrets = eka::sample_secret_inputs(3, 48, 351000, seed);
    return eka::run_session(config, p, std::move(secrets));
}

}  // namespace

TEST_CASE("distributions round-trip through json") {
    const auto d = eka::distribution_from_json("[0.75, 0.25]");
    REQUIRE(d.size() == 2);
    CHECK(d.probs[0] == 0.75);
    const auto back = eka::distribution_from_json(eka::distribution_to_json(d));
    CHECK(back.probs == d.probs);

    CHECK_THROWS_AS(eka::distribution_from_json("{}"), std::invalid_argument);
    CHECK_THROWS_AS(eka::distribution_from_json("[0.75, \"x\"]"), std::invalid_argument);
    CHECK_THROWS_AS(eka::distribution_from_json("[0.75, 0.35]"), std::invalid_argument);
    CHECK_THROWS_AS(eka::distribution_from_json("[0.5, 0.25, 0.25]"),
                    std::invalid_argument);
    CHECK_THROWS_AS(eka::distribution_from_json("not json"), std::invalid_argument);
}

TEST_CASE("entropy estimates round-trip through json") {
    eka::EntropyEstimate e;
    e.value_millibits = 351000;
    e.accuracy_delta_millibits = 1234;
    e.sample_count = 1000000;
    const auto back = eka::estimate_from_json(eka::estimate_to_json(e));
    CHECK(back.value_millibits == e.value_millibits);
    CHECK(back.accuracy_delta_millibits == e.accuracy_delta_millibits);
    CHECK(back.sample_count == e.sample_count);
    CHECK_THROWS_AS(eka::estimate_from_json("{\"value_millibits\": 1}"),
                    std::invalid_argument);
}

TEST_CASE("share bundles round-trip through json") {
    eka::ShareBundle b;
    b.source_id = 2;
    b.recipient_id = 5;
    b.share_bytes = {0xDE, 0xAD, 0xBE, 0xEF};
    const auto back = eka::bundle_from_json(eka::bundle_to_json(b));
    CHECK(back.source_id == 2);
    CHECK(back.recipient_id == 5);
    CHECK(back.share_bytes == b.share_bytes);

    const auto doc = Json::parse(eka::bundle_to_json(b));
    CHECK(doc["share_hex"] == "deadbeef");
    CHECK_THROWS_AS(
        eka::bundle_from_json(
            "{\"source_id\": 1, \"recipient_id\": 2, \"share_hex\": \"xyz\"}"),
        std::invalid_argument);
}

TEST_CASE("parameter objects round-trip and reject unknown fields") {
    ProtocolParams p;
    p.n = 6;
    p.gamma = 360;
    p.q_queries_log2 = -1;
    const auto back = eka::params_from_json(eka::params_to_json(p));
    CHECK(back.n == 6);
    CHECK(back.t == p.t);
    CHECK(back.gamma == 360);
    CHECK(back.q_queries_log2 == -1);

    const auto partial = eka::params_from_json("{\"kappa\": 192}");
    CHECK(partial.kappa == 192);
    CHECK(partial.n == 5);
    CHECK(partial.m_bits == 384);

    CHECK_THROWS_AS(eka::params_from_json("{\"kapa\": 192}"), std::invalid_argument);
    CHECK_THROWS_AS(eka::params_from_json("{\"kappa\": \"big\"}"), std::invalid_argument);
    CHECK_THROWS_AS(eka::params_from_json("{\"kappa\": 1.5}"), std::invalid_argument);
    CHECK_THROWS_AS(eka::params_from_json("[]"), std::invalid_argument);
}

TEST_CASE("adversary specs round-trip with every field") {
    eka::AdversarySpec spec;
    spec.behavior = eka::AdversaryBehavior::DropMessages;
    spec.corrupted = {2, 4};
    spec.target_recipients = {1};
    spec.drop_kinds = {eka::MessageKind::Reveal, eka::MessageKind::Share};
    spec.tamper_echo = true;
    const auto back = eka::adversary_from_json(eka::adversary_to_json(spec));
    CHECK(back.behavior == spec.behavior);
    CHECK(back.corrupted == spec.corrupted);
    CHECK(back.target_recipients == spec.target_recipients);
    CHECK(back.drop_kinds == spec.drop_kinds);
    CHECK(back.tamper_echo);

    CHECK_THROWS_AS(eka::adversary_from_json("{\"behavior\": \"replay\"}"),
                    std::invalid_argument);
    CHECK_THROWS_AS(eka::adversary_from_json("{\"drop_kinds\": [\"gossip\"]}"),
                    std::invalid_argument);
    CHECK_THROWS_AS(eka::adversary_from_json("{\"corrupted\": [0]}"),
                    std::invalid_argument);
    CHECK_THROWS_AS(eka::adversary_from_json("{\"tamper_echo\": 1}"),
                    std::invalid_argument);
    CHECK_THROWS_AS(eka::adversary_from_json("{\"surprise\": true}"),
                    std::invalid_argument);
}

TEST_CASE("scenario group sizes override the embedded parameters") {
    const auto top_level = eka::scenario_from_json("{\"n\": 4, \"seed\": 9}");
    CHECK(top_level.n == 4);
    CHECK(top_level.params.n == 4);
    CHECK(top_level.t == 3);
    CHECK(top_level.params.t == 3);
    CHECK(top_level.seed == 9);

    const auto nested = eka::scenario_from_json("{\"params\": {\"n\": 6, \"t\": 4}}");
    CHECK(nested.n == 6);
    CHECK(nested.t == 4);

    const auto both = eka::scenario_from_json("{\"n\": 3, \"params\": {\"n\": 6}}");
    CHECK(both.n == 3);
    CHECK(both.params.n == 3);

    const auto round_trip = eka::scenario_from_json(eka::scenario_to_json(top_level));
    CHECK(round_trip.n == 4);
    CHECK(round_trip.seed == 9);

    CHECK_THROWS_AS(eka::scenario_from_json("{\"seed\": -1}"), std::invalid_argument);
    CHECK_THROWS_AS(eka::scenario_from_json("{\"delivery_order\": \"fifo\"}"),
                    std::invalid_argument);
    CHECK_THROWS_AS(eka::scenario_from_json("{\"mystery\": 1}"), std::invalid_argument);
}

TEST_CASE("the parameter report carries the full security evaluation") {
    const auto doc = Json::parse(eka::params_report_json(ProtocolParams{}, true));
    CHECK(doc["params"]["gamma"] == 351);
    CHECK(doc["gamma_solved"] == true);
    CHECK(doc["hinf_bits"] == 169);
    CHECK(doc["feasible"] == true);
    CHECK(doc["margin_bits"] == 1);
    CHECK(doc["advantage_log2"]["key_guess"] == -128.0);
    CHECK(doc["advantage_log2"]["hash_collision"] == -256.0);
    CHECK(doc["comm_cost_bits"] == 7680);
    CHECK(doc["comm_cost_kb"] == 0.9375);
    REQUIRE(doc["mitigations"].size() == 3);
    CHECK(doc["mitigations"][0]["name"] == "collision_resistance");
    CHECK(doc["mitigations"][0]["pass"] == true);
}

TEST_CASE("dropped advantage terms serialize as null") {
    ProtocolParams p;
    p.q_queries_log2 = -1;
    const auto doc = Json::parse(eka::params_report_json(p, false));
    CHECK(doc["advantage_log2"]["hash_collision"].is_null());
    CHECK(doc["advantage_log2"]["quantum_memory"].is_number());
    CHECK(doc["gamma_solved"] == false);
}

TEST_CASE("the table report lists rows and stable discrepancy text") {
    const auto doc = Json::parse(eka::table_report_json(eka::reproduce_table()));
    REQUIRE(doc["rows"].size() == 5);
    CHECK(doc["rows"][2]["n"] == 5);
    CHECK(doc["rows"][2]["gamma_computed"] == 351);
    CHECK(doc["rows"][2]["gamma_match"] == true);
    CHECK(doc["rows"][2]["comm_kb_computed"] == 0.9375);
    CHECK(doc["rows"][2]["comm_kb_reference"] == 1.41);
    CHECK(doc["rows"][2]["comm_match"] == false);
    REQUIRE(doc["discrepancies"].size() == 11);
    bool mentions_comm = false;
    for (const auto& line : doc["discrepancies"]) {
        mentions_comm =
            mentions_comm || line.get<std::string>().find("communication") != std::string::npos;
    }
    CHECK(mentions_comm);
}

TEST_CASE("transcripts serialize one compact object per line") {
    const auto outcome = tiny_session(42);
    const auto lines = eka::transcript_to_json_lines(outcome.transcript);
    std::istringstream stream(lines);
    std::string line;
    std::size_t count = 0;
    while (std::getline(stream, line)) {
        const auto doc = Json::parse(line);
        CHECK(doc.contains("round"));
        CHECK(doc.contains("sender"));
        CHECK(doc.contains("kind"));
        CHECK(doc.contains("payload_hex"));
        CHECK(line.find(' ') == std::string::npos);
        ++count;
    }
    CHECK(count == outcome.transcript.size());
    CHECK(count == 15);
}

TEST_CASE("session reports hide the key behind a digest by default") {
    const auto outcome = tiny_session(42);
    const auto hidden = Json::parse(eka::session_report_json(outcome, ProtocolParams{}, 42, false));
    CHECK(hidden["rounds"] == 5);
    REQUIRE(hidden["parties"].size() == 3);
    CHECK(hidden["parties"][0]["phase"] == "done");
    CHECK(hidden["parties"][0]["abort_reason"].is_null());
    CHECK(hidden["parties"][0].contains("key_digest"));
    CHECK_FALSE(hidden["parties"][0].contains("key"));
    CHECK(hidden["all_honest_done_with_equal_keys"] == true);

    const auto open = Json::parse(eka::session_report_json(outcome, ProtocolParams{}, 42, true));
    REQUIRE(open["parties"][0].contains("key"));
    CHECK(open["parties"][0]["key"].get<std::string>().size() == 32);
    CHECK(open["parties"][0]["key"] == open["parties"][1]["key"]);
}

TEST_CASE("entropy reports scale with their inputs") {
    eka::EntropyReportInputs single;
    single.distributions.push_back(eka::distribution_from_json("[0.75, 0.25]"));
    const auto lone = Json::parse(eka::entropy_report_json(single));
    CHECK(lone["distributions"].size() == 1);
    CHECK_FALSE(lone.contains("convolution"));
    CHECK_FALSE(lone.contains("preservation"));
    CHECK_FALSE(lone["distributions"][0].contains("renyi_entropy"));

    eka::EntropyReportInputs pair = single;
    pair.distributions.push_back(pair.distributions[0]);
    pair.alpha = 2.0;
    const auto both = Json::parse(eka::entropy_report_json(pair));
    CHECK(both["distributions"][0]["renyi_alpha"] == 2.0);
    CHECK(both["convolution"]["size"] == 2);
    CHECK(both["preservation"]["holds"] == true);

    eka::EntropyReportInputs with_estimate = single;
    eka::EntropyEstimate e;
    e.value_millibits = 400;
    e.sample_count = 10;
    with_estimate.estimate = e;
    const auto estimated = Json::parse(eka::entropy_report_json(with_estimate));
    CHECK(estimated["estimate"]["value_millibits"] == 400);
}

TEST_CASE("sample arrays parse with range checks") {
    const auto samples = eka::samples_from_json("[0, 1, 65535]");
    REQUIRE(samples.size() == 3);
    CHECK(samples[2] == 65535);
    CHECK_THROWS_AS(eka::samples_from_json("{\"samples\": []}"), std::invalid_argument);
    CHECK_THROWS_AS(eka::samples_from_json("[-1]"), std::invalid_argument);
    CHECK_THROWS_AS(eka::samples_from_json("[65536]"), std::invalid_argument);
    CHECK_THROWS_AS(eka::samples_from_json("[1.5]"), std::invalid_argument);
}

TEST_CASE("probe and matrix reports are well formed") {
    const auto probe = eka::collusion_probe(8, 4, 3, 1, 2);
    const auto probe_doc = Json::parse(eka::probe_report_json(probe));
    CHECK(probe_doc["colluder_count"] == 2);
    CHECK(probe_doc["full_alphabet_uniform"] == true);

    const std::vector<eka::AdversaryBehavior> behaviors = {
        eka::AdversaryBehavior::PassiveCollude};
    const auto matrix = eka::adversarial_matrix(ProtocolParams{}, behaviors, 1);
    const auto matrix_doc = Json::parse(eka::matrix_report_json(matrix));
    CHECK(matrix_doc["wins"] == 0);
    CHECK(matrix_doc["runs"].size() == matrix.runs.size());

    const auto suite_doc = Json::parse(eka::attack_suite_report_json(
        ProtocolParams{}, matrix, eka::collusion_probe(8, 5, 3, 1, 2),
        eka::collusion_probe(8, 5, 3, 1, 3)));
    CHECK(suite_doc.contains("matrix"));
    CHECK(suite_doc["probe_below_threshold"]["full_alphabet_uniform"] == true);
    CHECK(suite_doc["probe_at_threshold"]["unique_reconstruction"] == true);
    CHECK(suite_doc["params"]["n"] == 5);
}

TEST_CASE("primitive vectors verify and detect corruption") {
    const auto text = eka::generate_vectors_json();
    std::string mismatch;
    CHECK(eka::verify_vectors_json(text, mismatch));
    CHECK(mismatch.empty());

    auto doc = Json::parse(text);
    REQUIRE(doc.contains("sha3_256"));
    REQUIRE(doc.contains("shake256"));
    REQUIRE(doc.contains("commitment"));
    REQUIRE(doc.contains("entropy_mac"));
    REQUIRE(doc.contains("derived_key"));
    REQUIRE(doc.contains("linear_key"));
    REQUIRE(doc.contains("hybrid"));
    REQUIRE(doc.contains("shares"));

    // First published digest: the empty string under sha3-256.
    CHECK(doc["sha3_256"][0]["digest"] ==
          "a7ffc6f8bf1ed76651c14756a061d662f580ff4de43b49fa82d80a4b80f8434a");

    doc["commitment"][0]["digest"] = "00";
    std::string first_error;
    CHECK_FALSE(eka::verify_vectors_json(doc.dump(), first_error));
    CHECK(first_error.find("commitment") != std::string::npos);

    std::string parse_error;
    CHECK_FALSE(eka::verify_vectors_json("not json", parse_error));
    CHECK_FALSE(parse_error.empty());
}
