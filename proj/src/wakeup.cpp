#include "sinrlab/wakeup.hpp"

#include <stdexcept>

namespace sinrlab {

int EpochTiming::slot_count() const {
    int lg = 0;
    while ((2 << lg) <= n) ++lg;  // floor(lg n)
    return lg + 1;
}

long long EpochTiming::t(int slot) const {
    long long L = label_bits(n_labels);
    return ((1LL << slot) * 10450LL + 9465LL) * c1 * L;
}

long long EpochTiming::pipeline_rounds(int slot, int z) const {
    long long nb = 1LL << slot;
    long long grower = 4LL * nb * z;
    long long cutter = (2LL * 947 * (nb + 1) - 1) * 5 * z;
    long long tpt = 488LL * nb * 2 * z;
    return grower + cutter + tpt;
}

WakeupDriver::WakeupDriver(int node_idx, Label self, const SsfFamily& family,
                           const EpochTiming& timing, bool initially_awake)
    : node_(node_idx), self_(self), family_(family), timing_(timing),
      w_(timing.rounds_per_phase()), awake_(initially_awake) {
    slots_.resize(timing_.slot_count());
    for (auto& s : slots_) {
        s.regs.self = self;
        s.regs.my_leader = self;
        s.regs.my_old_parent = self;
        s.status = initially_awake ? kStatusWaiting : kStatusAsleep;
    }
}

void WakeupDriver::start(Engine& eng) {
    if (!awake_) return;
    for (int slot = 1; slot <= static_cast<int>(slots_.size()); ++slot)
        schedule_epoch_wait(eng, slot, 0);
}

void WakeupDriver::set_status(Engine& eng, u64 round, int slot, int status) {
    Slot& s = slots_[slot - 1];
    if (status < s.status)
        throw std::logic_error("wakeup: status would decrease");
    if (status != s.status) {
        eng.trace().status_change(round, self_, slot, s.status, status);
        s.status = status;
    }
}

void WakeupDriver::schedule_epoch_wait(Engine& eng, int slot, long long from_phase) {
    long long ti = timing_.t(slot);
    long long start_phase = ((from_phase + ti - 1) / ti) * ti;
    u64 round = static_cast<u64>(start_phase) * w_ + 3 * (slot - 1);
    eng.schedule_boundary(node_, round);
}

void WakeupDriver::enter_stage(Engine& eng, int slot, u64 round, int stage) {
    Slot& s = slots_[slot - 1];
    s.stage = stage;
    ProcEnv env;
    env.self = self_;
    env.family = &family_;
    env.trace = &eng.trace();
    int w = w_;
    env.beacon_stamp = [w, slot](u64 r) {
        u64 phase = r / w;
        u64 off = (r % w) % 3;
        return (phase << 16) | (static_cast<u64>(slot) << 8) | off;
    };
    int nb = 1 << slot;
    switch (stage) {
        case 0:
            set_status(eng, round, slot, kStatusTreeGrower);
            s.machine = std::make_unique<TreeGrowerSm>(env, s.regs, nb);
            break;
        case 1:
            set_status(eng, round, slot, kStatusTreeCutter);
            s.machine = std::make_unique<TreeCutterSm>(env, s.regs, nb);
            break;
        case 2: {
            set_status(eng, round, slot, kStatusTokenPassing);
            Message beacon;
            beacon.kind = MsgKind::WakeupBeacon;
            beacon.from = self_;
            s.machine = std::make_unique<TokenPassingSm>(env, s.regs, nb, TptMode::wakeup,
                                                         s.regs.children, beacon);
            break;
        }
        default:
            set_status(eng, round, slot, kStatusDone);
            s.machine.reset();
            return;
    }
    s.machine->begin(round);
    plan(eng, slot, round);
}

void WakeupDriver::plan(Engine& eng, int slot, u64 round) {
    Slot& s = slots_[slot - 1];
    s.phase_start = round;
    int z = family_.length();
    s.phase_len = static_cast<u64>(s.machine->execs_per_phase()) * z * w_;
    u32 mask = s.machine->plan_phase();
    for (int e = 0; e < s.machine->execs_per_phase(); ++e) {
        if (!(mask >> e & 1)) continue;
        for (int st = 0; st < z; ++st) {
            if (!family_.contains(st, self_)) continue;
            u64 r = round + (static_cast<u64>(e) * z + st) * w_;
            eng.schedule_tx(node_, r,
                            (static_cast<u32>(slot) << 26) | (static_cast<u32>(e) << 16) |
                                static_cast<u32>(st));
        }
    }
    eng.schedule_boundary(node_, round + s.phase_len);
}

void WakeupDriver::on_boundary(Engine& eng, u64 round) {
    int slot = static_cast<int>((round % w_) / 3) + 1;
    Slot& s = slots_[slot - 1];
    if (s.status == kStatusWaiting) {
        // epoch start for this slot; first grower round sits at offset 0
        enter_stage(eng, slot, round, 0);
        return;
    }
    if (!s.machine) return;
    if (round != s.phase_start + s.phase_len) return;  // superseded epoch-wait boundary
    s.machine->end_phase(round);
    if (!s.machine->done()) {
        plan(eng, slot, round);
        return;
    }
    int next = s.stage + 1;
    if (next > 2) {
        set_status(eng, round, slot, kStatusDone);
        s.machine.reset();
        return;
    }
    // next sub-procedure starts in the same phase at its own intra-slot round
    enter_stage(eng, slot, round + 1, next);
}

void WakeupDriver::on_delivery(Engine& eng, u64 round, const Message& m) {
    if (!awake_) {
        if (m.kind != MsgKind::WakeupBeacon) return;
        awake_ = true;
        long long phase = static_cast<long long>(round / w_);
        long long beacon_phase = static_cast<long long>(m.stamp >> 16);
        if (beacon_phase != phase)
            throw std::logic_error("wakeup: beacon phase desynchronized");
        for (int slot = 1; slot <= static_cast<int>(slots_.size()); ++slot) {
            set_status(eng, round, slot, kStatusWaiting);
            schedule_epoch_wait(eng, slot, phase + 1);
        }
        return;
    }
    int slot = static_cast<int>((round % w_) / 3) + 1;
    Slot& s = slots_[slot - 1];
    if (!s.machine) return;
    if (round < s.phase_start || round >= s.phase_start + s.phase_len) return;
    u64 d = round - s.phase_start;
    if (d % w_ != 0) return;  // another sub-procedure's round in this slot
    u64 p = d / w_;
    int z = family_.length();
    s.machine->on_heard(static_cast<int>(p / z), static_cast<int>(p % z), m, round);
}

const Message* WakeupDriver::transmission(u32 tag, u64 round) {
    int slot = static_cast<int>(tag >> 26);
    Slot& s = slots_[slot - 1];
    if (!s.machine) return nullptr;
    return s.machine->tx_message(static_cast<int>((tag >> 16) & 0x3ff),
                                 static_cast<int>(tag & 0xffff), round);
}

bool WakeupDriver::finished() const {
    if (!awake_) return false;
    for (const Slot& s : slots_)
        if (s.status != kStatusDone) return false;
    return true;
}

}  // namespace sinrlab
