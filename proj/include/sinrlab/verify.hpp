#pragma once

#include <map>
#include <string>

#include "sinrlab/grid.hpp"
#include "sinrlab/runner.hpp"

namespace sinrlab {

struct PropertyReport {
    std::string property;
    bool pass = true;
    std::string witness;                      // offending node/box/round on failure
    std::map<std::string, double> measured;

    void fail(const std::string& w) {
        pass = false;
        if (witness.empty()) witness = w;
    }
};

// Forest checks after Tree-Grower: each node a leader or a child of exactly
// one tree, one leader per tree, at most one leader per pivotal box, and
// parent/child links mutually known.
PropertyReport check_forest(const std::vector<NodeRegs>& finals,
                            const std::vector<Station>& stations, const CommGraph& graph,
                            const SinrParams& params);

// Star checks after Tree-Cutter: kinds settled, star height at most one,
// leader/follower link consistency, one leader per pivotal box, and (with at
// least two leaders) another leader within 3 hops of each.
PropertyReport check_stars(const std::vector<NodeRegs>& finals,
                           const std::vector<Station>& stations, const CommGraph& graph,
                           const SinrParams& params);

struct BackboneThresholds {
    double ratio_bound = 25.0;   // |H| / s_c_d regression bound
    int internal_degree = 20;    // measured max degree inside H
    double diam_factor = 3.0;
    int oracle_limit = 12;       // exact CDS search size limit
};

// The four backbone properties, with the exact minimum-CDS oracle when the
// graph is small enough.
PropertyReport check_backbone(const std::vector<NodeRegs>& finals,
                              const std::vector<Station>& stations, const CommGraph& graph,
                              const SinrParams& params, const BackboneThresholds& thr = {});

// Exact smallest connected dominating set size; exhaustive by increasing
// size, n <= limit. A single node counts as its own CDS.
int min_cds_oracle(const CommGraph& graph, int limit = 12);

// Token audits over the trace: hand-offs all delivered, no token farther than
// 2r from its origin leader, and per-pivotal-box simultaneous tokens bounded.
PropertyReport check_tokens(const SimTrace& trace, const std::vector<Station>& stations,
                            const SinrParams& params, int per_box_bound = 21);

// Exchange-mode completeness: each participant transmitted everything it
// injected or heard (participants = nodes that ever held the token walk).
PropertyReport check_exchange_complete(const std::vector<NodeRegs>& finals,
                                       const std::vector<int>& participant_idx);

// Measured rounds against the concrete budget for the protocol.
PropertyReport audit_rounds(ProtocolKind p, const RunResult& res, int n, int n_labels,
                            int max_degree);

}  // namespace sinrlab
