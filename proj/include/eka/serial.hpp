#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eka/entropy.hpp"
#include "eka/params.hpp"
#include "eka/sharing.hpp"
#include "eka/simnet.hpp"

namespace eka {

// JSON encoding for every structure that crosses a file or pipe boundary.
// Parsers throw std::invalid_argument with the offending field named.

std::string distribution_to_json(const Distribution& d);
Distribution distribution_from_json(const std::string& text);

std::string estimate_to_json(const EntropyEstimate& e);
EntropyEstimate estimate_from_json(const std::string& text);

std::string bundle_to_json(const ShareBundle& b);
ShareBundle bundle_from_json(const std::string& text);

std::string params_to_json(const ProtocolParams& p);

// Accepts a partial object; absent fields keep their defaults.  Unknown keys
// are rejected.
ProtocolParams params_from_json(const std::string& text);

AdversarySpec adversary_from_json(const std::string& text);
std::string adversary_to_json(const AdversarySpec& spec);

Scenario scenario_from_json(const std::string& text);
std::string scenario_to_json(const Scenario& scenario);

// Full security evaluation of one parameter set: entropy floor, margin,
// advantage terms, hardening checklist.  gamma_solved records whether gamma
// came from the calculus rather than the caller.
std::string params_report_json(const ProtocolParams& p, bool gamma_solved);

std::string table_report_json(const TableReport& report);

// One compact JSON object per emission, newline terminated.
std::string transcript_to_json_lines(const std::vector<TranscriptEntry>& transcript);

// Session summary for the CLI.  Keys are printed as a digest unless
// reveal_key is set.
std::string session_report_json(const SessionOutcome& outcome, const ProtocolParams& p,
                                std::uint64_t seed, bool reveal_key);

std::string probe_report_json(const ProbeReport& report);
std::string matrix_report_json(const MatrixSummary& summary);

// Matrix plus the below-threshold and at-threshold collusion probes in one
// document.
std::string attack_suite_report_json(const ProtocolParams& p, const MatrixSummary& matrix,
                                     const ProbeReport& below_threshold,
                                     const ProbeReport& at_threshold);

// JSON array of sample values for the plug-in estimator.
std::vector<std::uint16_t> samples_from_json(const std::string& text);

struct EntropyReportInputs {
    std::vector<Distribution> distributions;
    std::optional<double> alpha;
    std::optional<EntropyEstimate> estimate;
};

// Per-distribution entropies, the xor-convolution and preservation bound when
// two or more distributions are given, and the estimator result when present.
std::string entropy_report_json(const EntropyReportInputs& inputs);

// Deterministic primitive test vectors: digests, commitments, MACs, derived
// keys, and share bundles, all recomputed from fixed inputs.
std::string generate_vectors_json();

// Recomputes every vector in the file and compares byte for byte.  Returns
// true when everything matches; otherwise first_mismatch names the failure.
bool verify_vectors_json(const std::string& text, std::string& first_mismatch);

}  // namespace eka
