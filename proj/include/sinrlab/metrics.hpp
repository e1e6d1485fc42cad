#pragma once

#include <string>

#include "sinrlab/runner.hpp"
#include "sinrlab/scenario.hpp"

namespace sinrlab {

struct MetricsRow {
    std::string scenario_id;
    std::string protocol;
    int n = 0;
    int n_labels = 0;
    u64 rounds_used = 0;
    u64 round_budget = 0;
    u64 messages_sent = 0;
    int max_payload_bits = 0;
    int properties_passed = 0;
    double wall_time = 0.0;  // 0 unless SINRLAB_WALLTIME=1, to keep runs byte-identical
    u64 config_hash = 0;
};

extern const char* const kMetricsHeader;
std::string metrics_line(const MetricsRow& row);

// Hash over the scenario document plus run parameters, for provenance.
u64 config_hash(const Scenario& sc, const std::string& protocol, u64 max_rounds);

}  // namespace sinrlab
