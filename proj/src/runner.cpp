#include "sinrlab/runner.hpp"

#include <algorithm>

namespace sinrlab {

const char* to_string(ProtocolKind p) {
    switch (p) {
        case ProtocolKind::tree_grower: return "tree-grower";
        case ProtocolKind::tree_cutter: return "tree-cutter";
        case ProtocolKind::tpt: return "tpt";
        case ProtocolKind::multi_broadcast: return "multi-broadcast";
        case ProtocolKind::backbone: return "backbone";
        case ProtocolKind::bb_exchange: return "bb-exchange";
        case ProtocolKind::bb_transmit: return "bb-transmit";
        case ProtocolKind::wakeup: return "wakeup";
    }
    return "?";
}

std::optional<ProtocolKind> protocol_from(const std::string& name) {
    for (ProtocolKind p :
         {ProtocolKind::tree_grower, ProtocolKind::tree_cutter, ProtocolKind::tpt,
          ProtocolKind::multi_broadcast, ProtocolKind::backbone, ProtocolKind::bb_exchange,
          ProtocolKind::bb_transmit, ProtocolKind::wakeup})
        if (name == to_string(p)) return p;
    return std::nullopt;
}

u64 protocol_round_budget(ProtocolKind p, int n, int n_labels, int z, int c1, int max_degree) {
    u64 zz = static_cast<u64>(z);
    u64 grower = 4ull * n * zz;
    u64 cutter = (2ull * 947 * (n + 1) - 1) * 5 * zz;
    u64 tpt = 976ull * n * zz;
    u64 delta = static_cast<u64>(std::max(max_degree, 1));
    switch (p) {
        case ProtocolKind::tree_grower: return grower;
        case ProtocolKind::tree_cutter: return grower + cutter;
        case ProtocolKind::tpt: return grower + cutter + tpt;
        case ProtocolKind::multi_broadcast: return grower + cutter + 4 * tpt;
        case ProtocolKind::backbone: return grower + cutter + zz + 16 * delta * zz;
        case ProtocolKind::bb_exchange:
        case ProtocolKind::bb_transmit:
            return grower + cutter + zz + 16 * delta * zz + 4 * delta * zz;
        case ProtocolKind::wakeup: {
            EpochTiming t{n, n_labels, c1};
            return static_cast<u64>(t.phase_budget()) * t.rounds_per_phase();
        }
    }
    return 0;
}

namespace {

// Derives the minimum-cover star subset T' for a leader: one designated child
// per distinct foreign leader found in the children's reports, ties to the
// smallest child label.
void derive_star_subset(NodeRegs& regs) {
    regs.star_subset.clear();
    if (regs.kind != NodeKind::Leader) return;
    std::map<Label, Label> cover;  // foreign leader -> designated child
    for (auto& [reporter, pairs] : regs.child_reports) {
        if (!regs.child_of(reporter)) continue;
        for (auto& [w, wl] : pairs) {
            (void)w;
            if (wl == regs.self) continue;
            auto it = cover.find(wl);
            if (it == cover.end() || reporter < it->second) cover[wl] = reporter;
        }
    }
    std::set<Label> subset;
    for (auto& [wl, child] : cover) subset.insert(child);
    regs.star_subset.assign(subset.begin(), subset.end());
}

struct Recipe {
    StagedDriver::StageFactory factory;
};

}  // namespace

RunResult run_protocol(const ProtocolSetup& setup, const RunConfig& cfg) {
    const SsfFamily& family = *setup.family;
    int z = family.length();
    int c1 = family.c1();
    int n = setup.n_bound;

    std::vector<Station> stations = setup.stations;
    bool honor_sleep = cfg.protocol == ProtocolKind::wakeup ||
                       (cfg.protocol == ProtocolKind::tpt && cfg.tpt_mode == TptMode::wakeup);
    if (!honor_sleep)
        for (Station& s : stations) s.initially_awake = true;  // spontaneous start

    EngineLimits limits;
    limits.n_labels = setup.n_labels;
    Engine eng(std::move(stations), setup.params, limits);
    if (!eng.graph().connected)
        throw std::invalid_argument("run_protocol: communication graph is not connected");

    u64 budget =
        protocol_round_budget(cfg.protocol, n, setup.n_labels, z, c1, eng.graph().max_degree);
    RunResult res;
    res.round_budget = budget;
    res.z = z;
    res.c1 = c1;
    eng.trace().set_recording(cfg.record_trace);
    eng.set_max_rounds(cfg.max_rounds ? cfg.max_rounds : 2 * budget + 64);

    auto env_for = [&](Label self) {
        ProcEnv env;
        env.self = self;
        env.family = &family;
        env.trace = &eng.trace();
        return env;
    };

    if (cfg.protocol == ProtocolKind::wakeup) {
        EpochTiming timing{n, setup.n_labels, c1};
        res.wakeup_phase_budget = timing.phase_budget();
        std::vector<std::unique_ptr<WakeupDriver>> drivers;
        for (int i = 0; i < eng.n(); ++i) {
            drivers.push_back(std::make_unique<WakeupDriver>(
                i, eng.label_of(i), family, timing, eng.stations()[i].initially_awake));
            eng.set_driver(i, drivers.back().get());
        }
        for (auto& d : drivers) d->start(eng);
        int i_star = 1;
        while ((1 << i_star) < eng.n() && i_star < timing.slot_count()) ++i_star;
        auto stop = [&](const Engine& e) {
            if (!e.all_awake()) return false;
            for (auto& d : drivers)
                if (d->status(i_star) != kStatusDone) return false;
            return true;
        };
        try {
            eng.run(stop);
            res.completed = true;
        } catch (const std::exception& e) {
            res.failure = e.what();
        }
        res.rounds_used = eng.now();
        res.all_awake = eng.all_awake();
        long long last_wake_phase = 0;
        for (int i = 0; i < eng.n(); ++i)
            if (!eng.stations()[i].initially_awake || eng.wake_round(i) > 0)
                last_wake_phase = std::max(
                    last_wake_phase,
                    static_cast<long long>(eng.wake_round(i) / timing.rounds_per_phase()));
        res.phases_to_all_awake = res.all_awake ? last_wake_phase : -1;
        res.finals.resize(eng.n());
        for (int i = 0; i < eng.n(); ++i) res.finals[i] = drivers[i]->slot_regs(i_star);
        res.wakeup_statuses.resize(eng.n());
        for (int i = 0; i < eng.n(); ++i)
            for (int s = 1; s <= timing.slot_count(); ++s)
                res.wakeup_statuses[i].push_back(drivers[i]->status(s));
        res.trace = std::move(eng.trace());
        return res;
    }

    // staged (spontaneous-start) protocols
    auto initial_msgs = cfg.initial_messages;
    auto bb_msgs = cfg.bb_messages;
    ProtocolKind proto = cfg.protocol;
    TptMode mode = cfg.tpt_mode;

    auto make_factory = [&, proto, mode](Label self) -> StagedDriver::StageFactory {
        return [&, proto, mode, self](int stage, NodeRegs& regs) -> std::unique_ptr<PhaseMachine> {
            ProcEnv env = env_for(self);
            auto inject_exchange = [&](NodeRegs& r) {
                auto it = initial_msgs.find(self);
                if (it != initial_msgs.end()) {
                    r.own_payload = it->second;
                    r.held[self] = it->second;
                    r.queued.insert(self);
                    r.heard_origins.insert(self);
                    r.injected_origins.insert(self);
                }
            };
            switch (stage) {
                case 0:
                    if (proto != ProtocolKind::tree_grower && proto != ProtocolKind::tree_cutter &&
                        proto != ProtocolKind::tpt)
                        inject_exchange(regs);
                    else if (proto == ProtocolKind::tpt && mode == TptMode::exchange)
                        inject_exchange(regs);
                    return std::make_unique<TreeGrowerSm>(env, regs, n);
                case 1:
                    if (proto == ProtocolKind::tree_grower) return nullptr;
                    return std::make_unique<TreeCutterSm>(env, regs, n);
                default: break;
            }
            if (proto == ProtocolKind::tree_cutter) return nullptr;
            if (proto == ProtocolKind::tpt) {
                if (stage != 2) return nullptr;
                Message msg;
                msg.from = self;
                if (mode == TptMode::wakeup) {
                    msg.kind = MsgKind::WakeupBeacon;
                } else if (mode == TptMode::single_transmit) {
                    msg.kind = MsgKind::Single;
                    msg.b = 0;
                    if (auto it = initial_msgs.find(self); it != initial_msgs.end())
                        msg.items = {{self, it->second}};
                }
                return std::make_unique<TokenPassingSm>(env, regs, n, mode, regs.children, msg);
            }
            if (proto == ProtocolKind::multi_broadcast) {
                Message msg;
                msg.from = self;
                msg.kind = MsgKind::Single;
                switch (stage) {
                    case 2:
                        msg.b = 1;
                        msg.a = regs.my_leader;
                        return std::make_unique<TokenPassingSm>(env, regs, n,
                                                                TptMode::single_transmit,
                                                                regs.children, msg);
                    case 3:
                        msg.b = 2;
                        for (auto& [w, wl] : regs.heard_leader_pairs) msg.pairs.emplace_back(w, wl);
                        return std::make_unique<TokenPassingSm>(env, regs, n,
                                                                TptMode::single_transmit,
                                                                regs.children, msg);
                    case 4:
                        derive_star_subset(regs);
                        msg.b = 3;
                        if (regs.own_payload) msg.items = {{self, *regs.own_payload}};
                        return std::make_unique<TokenPassingSm>(env, regs, n,
                                                                TptMode::single_transmit,
                                                                regs.children, msg);
                    case 5: {
                        if (regs.kind == NodeKind::Leader) {
                            for (auto& [origin, body] : regs.collected) {
                                if (regs.heard_origins.count(origin)) continue;
                                regs.held[origin] = body;
                                regs.queued.insert(origin);
                                regs.heard_origins.insert(origin);
                            }
                        }
                        msg.kind = MsgKind::ExchangeItem;
                        return std::make_unique<TokenPassingSm>(env, regs, n, TptMode::exchange,
                                                                regs.star_subset, msg);
                    }
                    default: return nullptr;
                }
            }
            // backbone family of protocols
            switch (stage) {
                case 2: return std::make_unique<ChildCountSm>(env, regs);
                case 3:
                case 4:
                case 5:
                case 6: return std::make_unique<BackboneStageSm>(env, regs, stage - 2);
                default: break;
            }
            if (proto == ProtocolKind::backbone) return nullptr;
            if (stage == 7) {
                if (auto it = bb_msgs.find(self); it != bb_msgs.end()) regs.own_payload = it->second;
                return std::make_unique<BbCommSm>(env, regs,
                                                  proto == ProtocolKind::bb_exchange
                                                      ? BbCommMode::exchange
                                                      : BbCommMode::transmit);
            }
            return nullptr;
        };
    };

    std::vector<std::unique_ptr<StagedDriver>> drivers(eng.n());
    for (int i = 0; i < eng.n(); ++i) {
        if (!eng.awake(i)) continue;  // tpt wakeup mode: asleep stations idle
        drivers[i] = std::make_unique<StagedDriver>(i, eng.label_of(i), family,
                                                    make_factory(eng.label_of(i)));
        eng.set_driver(i, drivers[i].get());
    }
    for (auto& d : drivers)
        if (d) d->start(eng, 0);

    try {
        eng.run();
        res.completed = true;
    } catch (const std::exception& e) {
        res.failure = e.what();
    }
    res.rounds_used = eng.now();
    res.all_awake = eng.all_awake();
    res.finals.resize(eng.n());
    res.stage_ends.resize(eng.n());
    for (int i = 0; i < eng.n(); ++i)
        if (drivers[i]) {
            res.finals[i] = drivers[i]->regs();
            res.stage_ends[i] = drivers[i]->stage_ends();
        }
    res.trace = std::move(eng.trace());
    return res;
}

}  // namespace sinrlab
