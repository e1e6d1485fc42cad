#include "sinrlab/metrics.hpp"

#include <cstdio>

namespace sinrlab {

const char* const kMetricsHeader =
    "scenario_id,protocol,n,N,rounds_used,round_budget,messages_sent,max_payload_bits,"
    "properties_passed,wall_time,config_hash";

std::string metrics_line(const MetricsRow& row) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s,%s,%d,%d,%llu,%llu,%llu,%d,%d,%.3f,%016llx",
                  row.scenario_id.c_str(), row.protocol.c_str(), row.n, row.n_labels,
                  static_cast<unsigned long long>(row.rounds_used),
                  static_cast<unsigned long long>(row.round_budget),
                  static_cast<unsigned long long>(row.messages_sent), row.max_payload_bits,
                  row.properties_passed, row.wall_time,
                  static_cast<unsigned long long>(row.config_hash));
    return buf;
}

u64 config_hash(const Scenario& sc, const std::string& protocol, u64 max_rounds) {
    Fnv1a h;
    h.add(sc.save());
    h.add(protocol);
    h.add(max_rounds);
    return h.h;
}

}  // namespace sinrlab
