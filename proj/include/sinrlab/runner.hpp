#pragma once

#include <map>
#include <optional>
#include <string>

#include "sinrlab/protocols.hpp"
#include "sinrlab/wakeup.hpp"

namespace sinrlab {

enum class ProtocolKind {
    tree_grower,
    tree_cutter,
    tpt,
    multi_broadcast,
    backbone,
    bb_exchange,
    bb_transmit,
    wakeup,
};

const char* to_string(ProtocolKind p);
std::optional<ProtocolKind> protocol_from(const std::string& name);

struct ProtocolSetup {
    std::vector<Station> stations;
    SinrParams params = SinrParams::defaults();
    int n_bound = 0;   // the configured upper bound n fed to every loop count
    int n_labels = 0;  // label range N
    const SsfFamily* family = nullptr;
};

struct RunConfig {
    ProtocolKind protocol = ProtocolKind::tree_grower;
    TptMode tpt_mode = TptMode::wakeup;
    std::map<Label, u64> initial_messages;  // multi-broadcast / exchange payloads
    std::map<Label, u64> bb_messages;       // backbone communication payloads
    u64 max_rounds = 0;                     // 0 = derive from the protocol budget
    bool record_trace = true;
};

struct RunResult {
    std::vector<NodeRegs> finals;               // by station index
    std::vector<std::vector<u64>> stage_ends;   // by station index
    u64 rounds_used = 0;
    u64 round_budget = 0;
    bool completed = false;
    std::string failure;                        // nonempty if the run aborted

    // wakeup measurements
    long long phases_to_all_awake = -1;
    long long wakeup_phase_budget = 0;
    bool all_awake = false;
    std::vector<std::vector<int>> wakeup_statuses;  // [node][slot-1]

    SimTrace trace;
    int z = 0;
    int c1 = 0;
};

RunResult run_protocol(const ProtocolSetup& setup, const RunConfig& cfg);

// Concrete round budgets per protocol, all in engine rounds.
u64 protocol_round_budget(ProtocolKind p, int n_bound, int n_labels, int z, int c1, int max_degree);

}  // namespace sinrlab
