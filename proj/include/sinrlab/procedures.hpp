#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <set>

#include "sinrlab/engine.hpp"

namespace sinrlab {

enum class NodeKind : int { Leader = 0, Follower = 1, Neutral = 2 };

const char* to_string(NodeKind k);

// Per-node protocol registers threaded through the procedure pipeline.
// Knowledge stores are keyed by payload kind and accumulated at every
// delivery; stages of different stars are not globally aligned, so nodes
// record relevant announcements whenever they hear them.
struct NodeRegs {
    Label self = 0;
    NodeKind kind = NodeKind::Leader;
    Label my_leader = 0;
    Label my_old_parent = 0;
    std::vector<Label> children;     // T, ascending
    std::vector<Label> star_subset;  // T'

    bool has_token = false;
    int token_id = 0;
    Label token_from = 0;
    int token_gen = 0;

    // tree-cutter traversal state
    std::set<Label> traversed;
    Label explore_return_to = 0;
    size_t rr_cursor = 0;

    // multi-broadcast knowledge
    std::set<std::pair<Label, Label>> heard_leader_pairs;                 // (announcer, leader)
    std::map<Label, std::set<std::pair<Label, Label>>> child_reports;     // reporter -> pairs
    std::map<Label, u64> collected;                                       // origin -> body
    std::map<Label, u64> held;                                            // exchange holdings
    std::set<Label> queued;                                               // origins waiting to go out
    std::set<Label> heard_origins;
    std::set<Label> injected_origins, transmitted_origins, heard_exchange_origins;

    // backbone knowledge
    int num_phases = -1;
    std::set<std::pair<Label, Label>> follower_pairs_direct;   // heard first-hand
    std::set<std::array<Label, 3>> triplet_reports;            // (reporter, follower, leader)
    std::set<Label> known_connectors;
    bool is_connector = false;
    std::vector<Label> connector_list;       // what this leader transmits in stage 3
    std::set<Label> backbone_neighbors;      // H children
    bool backbone_member = false;
    std::map<Label, u64> bb_inbox;
    std::optional<u64> own_payload;

    bool child_of(Label v) const;
    void add_child(Label v);
    void remove_child(Label v);
};

// Environment handed to procedure machines by their driver.
struct ProcEnv {
    Label self = 0;
    const SsfFamily* family = nullptr;
    SimTrace* trace = nullptr;
    // Wakeup beacons refresh their synchronization stamp at fire time.
    std::function<u64(u64 round)> beacon_stamp;
};

// A protocol sub-procedure advancing in whole phases of E ssf executions,
// each execution being `family.length()` procedure-rounds. The driver owns
// the clock mapping (procedure-round -> engine round).
class PhaseMachine {
  public:
    virtual ~PhaseMachine() = default;
    virtual void begin(u64 round) { (void)round; }
    virtual int execs_per_phase() const = 0;
    // Bitmask of executions in the coming phase that may transmit.
    virtual u32 plan_phase() = 0;
    // Fire-time payload for (exec, step); null means stay silent.
    virtual const Message* tx_message(int exec, int step, u64 round) = 0;
    virtual void on_heard(int exec, int step, const Message& m, u64 round) = 0;
    virtual void end_phase(u64 round) = 0;
    virtual bool done() const = 0;
};

// Grows a forest: repeated bidirectional-discovery phases in which the
// smaller-labelled of two mutually-heard leaders adopts the other.
class TreeGrowerSm : public PhaseMachine {
  public:
    TreeGrowerSm(ProcEnv env, NodeRegs& regs, int n_bound);
    int execs_per_phase() const override { return 4; }
    u32 plan_phase() override;
    const Message* tx_message(int exec, int step, u64 round) override;
    void on_heard(int exec, int step, const Message& m, u64 round) override;
    void end_phase(u64 round) override;
    bool done() const override { return phase_ >= n_bound_; }

  private:
    ProcEnv env_;
    NodeRegs& regs_;
    int n_bound_;
    int phase_ = 0;
    // per-phase scratch
    std::vector<Label> i_hear_;
    std::set<Label> bidir_;
    Label potential_parent_ = 0;
    std::vector<Label> potential_children_;
    bool become_child_ = false;
    std::vector<Label> confirmed_children_;
    Message msg_;
};

// Cuts the forest to stars: per phase, a three-execution election among
// token-holding neutral nodes, a status announcement, and a token pass.
class TreeCutterSm : public PhaseMachine {
  public:
    TreeCutterSm(ProcEnv env, NodeRegs& regs, int n_bound);
    void begin(u64 round) override;
    int execs_per_phase() const override { return 5; }
    u32 plan_phase() override;
    const Message* tx_message(int exec, int step, u64 round) override;
    void on_heard(int exec, int step, const Message& m, u64 round) override;
    void end_phase(u64 round) override;
    bool done() const override { return phase_ >= total_phases_; }
    long total_phases() const { return total_phases_; }

  private:
    void mint_token(u64 round);
    void apply_announce(Label who, NodeKind their_kind, Label their_leader);
    Label pick_target() const;

    ProcEnv env_;
    NodeRegs& regs_;
    long total_phases_;
    long phase_ = 0;

    // phase-start snapshot
    bool holder_ = false;
    bool participant_ = false;  // neutral holder running the election

    // election scratch
    std::set<std::pair<Label, int>> cand_heard_;            // (candidate, step)
    std::map<Label, std::set<std::pair<Label, int>>> cand_reports_;
    int main_step_ = -1;
    bool claim_fired_ = false;

    // pending effects applied at phase end
    bool pending_token_ = false;
    int pending_token_id_ = 0;
    Label pending_token_from_ = 0;
    Label target_ = 0;
    bool became_leader_this_phase_ = false;

    Message msg_;
};

enum class TptMode { wakeup, single_transmit, exchange };

// Star-wise token circulation: the holder transmits (the fixed message, or
// the lowest-origin queued item in exchange mode), then the token moves
// leader -> next child -> leader.
class TokenPassingSm : public PhaseMachine {
  public:
    // `children` is the tree the token walks: T, or T' for the final
    // multi-broadcast exchange. `single_msg` is the fixed payload in
    // wakeup/single modes.
    TokenPassingSm(ProcEnv env, NodeRegs& regs, int n_bound, TptMode mode,
                   std::vector<Label> children, Message single_msg);
    void begin(u64 round) override;
    int execs_per_phase() const override { return 2; }
    u32 plan_phase() override;
    const Message* tx_message(int exec, int step, u64 round) override;
    void on_heard(int exec, int step, const Message& m, u64 round) override;
    void end_phase(u64 round) override;
    bool done() const override { return iter_ >= total_iters_; }
    long total_iters() const { return total_iters_; }

  private:
    ProcEnv env_;
    NodeRegs& regs_;
    TptMode mode_;
    std::vector<Label> walk_children_;
    long total_iters_;
    long iter_ = 0;
    size_t rr_ = 0;

    bool holder_ = false;
    std::optional<Label> head_;   // exchange item chosen for this iteration
    bool head_fired_ = false;
    bool pending_token_ = false;
    int pending_token_id_ = 0;
    Label pending_token_from_ = 0;
    Label target_ = 0;
    Message msg_;
    Message pass_msg_;
};

// Allocates a fresh token id for a node.
int mint_token_id(NodeRegs& regs);

}  // namespace sinrlab
