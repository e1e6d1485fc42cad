#pragma once

#include <memory>

#include "sinrlab/procedures.hpp"

namespace sinrlab {

// Epoch timing of the wakeup schedule. Phases count (floor(lg n)+1)-slot
// windows of 3 rounds each; slot i re-runs its three sub-procedures in epochs
// of t_i phases starting at phase 0.
struct EpochTiming {
    int n = 0;
    int n_labels = 0;
    int c1 = 0;

    int slot_count() const;                       // floor(lg n) + 1
    long long t(int slot) const;                  // epoch length in phases
    long long phase_budget() const { return 4LL * n * t(1); }
    int rounds_per_phase() const { return 3 * slot_count(); }
    // pipeline length in procedure-rounds for participant bound 2^slot
    long long pipeline_rounds(int slot, int z) const;
};

// Wakeup statuses per slot.
enum : int {
    kStatusAsleep = 1,
    kStatusWaiting = 2,
    kStatusTreeGrower = 3,
    kStatusTreeCutter = 4,
    kStatusTokenPassing = 5,
    kStatusDone = 6,
};

class WakeupDriver : public NodeDriver {
  public:
    WakeupDriver(int node_idx, Label self, const SsfFamily& family, const EpochTiming& timing,
                 bool initially_awake);

    void start(Engine& eng);

    int status(int slot) const { return slots_[slot - 1].status; }
    const NodeRegs& slot_regs(int slot) const { return slots_[slot - 1].regs; }
    bool awake() const { return awake_; }

    void on_boundary(Engine& eng, u64 round) override;
    void on_delivery(Engine& eng, u64 round, const Message& m) override;
    const Message* transmission(u32 tag, u64 round) override;
    bool finished() const override;

  private:
    struct Slot {
        int status = kStatusAsleep;
        NodeRegs regs;
        std::unique_ptr<PhaseMachine> machine;
        int stage = -1;  // 0 grower, 1 cutter, 2 token-passing
        u64 phase_start = 0;
        u64 phase_len = 0;
    };

    void set_status(Engine& eng, u64 round, int slot, int status);
    void schedule_epoch_wait(Engine& eng, int slot, long long from_phase);
    void enter_stage(Engine& eng, int slot, u64 round, int stage);
    void plan(Engine& eng, int slot, u64 round);
    u64 stage_offset(int stage) const { return static_cast<u64>(stage); }

    int node_;
    Label self_;
    const SsfFamily& family_;
    EpochTiming timing_;
    int w_;  // rounds per phase
    bool awake_;
    std::vector<Slot> slots_;
};

}  // namespace sinrlab
