#pragma once

#include <functional>
#include <memory>

#include "sinrlab/procedures.hpp"

namespace sinrlab {

// Drives one node through a sequence of PhaseMachines in lockstep with the
// engine clock: procedure-round p of the current phase lands on engine round
// phase_start + p * stride + (nothing; offset is folded into phase_start).
class StagedDriver : public NodeDriver {
  public:
    // Returns the machine for `stage`, or null when the pipeline is over.
    // Runs at the node's own stage transitions, so it may read and transform
    // the registers (e.g. derive T' between token-passing calls).
    using StageFactory =
        std::function<std::unique_ptr<PhaseMachine>(int stage, NodeRegs& regs)>;

    StagedDriver(int node_idx, Label self, const SsfFamily& family, StageFactory factory);

    NodeRegs& regs() { return regs_; }
    const NodeRegs& regs() const { return regs_; }
    // Engine round at which each completed stage ended.
    const std::vector<u64>& stage_ends() const { return stage_ends_; }

    void start(Engine& eng, u64 round);

    void on_boundary(Engine& eng, u64 round) override;
    void on_delivery(Engine& eng, u64 round, const Message& m) override;
    const Message* transmission(u32 tag, u64 round) override;
    bool finished() const override { return finished_; }

  private:
    void advance_stage(Engine& eng, u64 round);
    void plan(Engine& eng, u64 round);

    int node_;
    Label self_;
    const SsfFamily& family_;
    StageFactory factory_;
    NodeRegs regs_;
    std::unique_ptr<PhaseMachine> machine_;
    int stage_ = -1;
    u64 phase_start_ = 0;
    u64 phase_len_ = 0;
    bool finished_ = false;
    std::vector<u64> stage_ends_;
};

// One execution in which leaders announce their child count; followers learn
// the token-cycle length of their star.
class ChildCountSm : public PhaseMachine {
  public:
    ChildCountSm(ProcEnv env, NodeRegs& regs);
    void begin(u64 round) override;
    int execs_per_phase() const override { return 1; }
    u32 plan_phase() override;
    const Message* tx_message(int exec, int step, u64 round) override;
    void on_heard(int exec, int step, const Message& m, u64 round) override;
    void end_phase(u64 round) override;
    bool done() const override { return done_; }

  private:
    ProcEnv env_;
    NodeRegs& regs_;
    bool done_ = false;
    Message msg_;
};

// One backbone-creation stage: the leader walks its star with the token
// (four executions per child); followers answer in two-execution halves.
class BackboneStageSm : public PhaseMachine {
  public:
    BackboneStageSm(ProcEnv env, NodeRegs& regs, int stage);
    void begin(u64 round) override;
    int execs_per_phase() const override { return leader_ ? 4 : 2; }
    u32 plan_phase() override;
    const Message* tx_message(int exec, int step, u64 round) override;
    void on_heard(int exec, int step, const Message& m, u64 round) override;
    void end_phase(u64 round) override;
    bool done() const override;

  private:
    void accumulate(const Message& m);
    void compute_routes();

    ProcEnv env_;
    NodeRegs& regs_;
    int stage_;
    bool leader_ = false;
    long phase_ = 0;
    long phases_ = 0;  // leader: |T|; follower: num_phases (dynamic for comm)
    bool holder_ = false;
    Label target_ = 0;
    bool pending_token_ = false;
    int pending_token_id_ = 0;
    Label pending_token_from_ = 0;
    Message msg_;
    Message pass_msg_;
};

enum class BbCommMode { exchange, transmit };

// Backbone communication: the leader token-cycles over its connectors
// (exchange) or all children (transmit); message holders transmit on their
// turn. num_phases is rebroadcast every leader turn and adopted by listeners.
class BbCommSm : public PhaseMachine {
  public:
    BbCommSm(ProcEnv env, NodeRegs& regs, BbCommMode mode);
    void begin(u64 round) override;
    int execs_per_phase() const override { return leader_ ? 4 : 2; }
    u32 plan_phase() override;
    const Message* tx_message(int exec, int step, u64 round) override;
    void on_heard(int exec, int step, const Message& m, u64 round) override;
    void end_phase(u64 round) override;
    bool done() const override;

    const std::vector<Label>& cycle() const { return cycle_; }

  private:
    ProcEnv env_;
    NodeRegs& regs_;
    BbCommMode mode_;
    bool leader_ = false;
    bool participant_ = false;
    std::vector<Label> cycle_;  // leader: nodes the token visits
    long phase_ = 0;
    long announced_phases_ = 0;  // follower's adopted num_phases
    bool holder_ = false;
    Label target_ = 0;
    bool pending_token_ = false;
    int pending_token_id_ = 0;
    Label pending_token_from_ = 0;
    Message msg_;
    Message pass_msg_;
};

}  // namespace sinrlab
