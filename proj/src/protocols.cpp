#include "sinrlab/protocols.hpp"

#include <algorithm>
#include <deque>

namespace sinrlab {

// ---------------------------------------------------------------- StagedDriver

StagedDriver::StagedDriver(int node_idx, Label self, const SsfFamily& family, StageFactory factory)
    : node_(node_idx), self_(self), family_(family), factory_(std::move(factory)) {
    regs_.self = self;
    regs_.my_leader = self;
    regs_.my_old_parent = self;
}

void StagedDriver::start(Engine& eng, u64 round) {
    advance_stage(eng, round);
}

void StagedDriver::advance_stage(Engine& eng, u64 round) {
    ++stage_;
    machine_ = factory_(stage_, regs_);
    if (!machine_) {
        finished_ = true;
        return;
    }
    machine_->begin(round);
    plan(eng, round);
}

void StagedDriver::plan(Engine& eng, u64 round) {
    phase_start_ = round;
    int z = family_.length();
    phase_len_ = static_cast<u64>(machine_->execs_per_phase()) * z;
    u32 mask = machine_->plan_phase();
    for (int e = 0; e < machine_->execs_per_phase(); ++e) {
        if (!(mask >> e & 1)) continue;
        for (int s = 0; s < z; ++s) {
            if (!family_.contains(s, self_)) continue;
            eng.schedule_tx(node_, round + static_cast<u64>(e) * z + s,
                            static_cast<u32>(e) * 65536u + static_cast<u32>(s));
        }
    }
    eng.schedule_boundary(node_, round + phase_len_);
}

void StagedDriver::on_boundary(Engine& eng, u64 round) {
    if (!machine_) return;
    machine_->end_phase(round);
    if (machine_->done()) {
        stage_ends_.push_back(round);
        advance_stage(eng, round);
    } else {
        plan(eng, round);
    }
}

void StagedDriver::on_delivery(Engine&, u64 round, const Message& m) {
    if (!machine_) return;
    if (round < phase_start_ || round >= phase_start_ + phase_len_) return;
    u64 p = round - phase_start_;
    int z = family_.length();
    machine_->on_heard(static_cast<int>(p / z), static_cast<int>(p % z), m, round);
}

const Message* StagedDriver::transmission(u32 tag, u64 round) {
    if (!machine_) return nullptr;
    return machine_->tx_message(static_cast<int>(tag / 65536u), static_cast<int>(tag % 65536u),
                                round);
}

// ---------------------------------------------------------------- ChildCountSm

ChildCountSm::ChildCountSm(ProcEnv env, NodeRegs& regs) : env_(env), regs_(regs) {}

void ChildCountSm::begin(u64) {
    // tokens are re-issued by the leaders for the stages that follow
    if (regs_.kind != NodeKind::Leader) regs_.has_token = false;
}

u32 ChildCountSm::plan_phase() {
    return regs_.kind == NodeKind::Leader ? 0b1u : 0u;
}

const Message* ChildCountSm::tx_message(int, int, u64) {
    if (regs_.kind != NodeKind::Leader) return nullptr;
    msg_ = Message{};
    msg_.from = regs_.self;
    msg_.kind = MsgKind::ChildCount;
    msg_.stamp = regs_.children.size();
    return &msg_;
}

void ChildCountSm::on_heard(int, int, const Message& m, u64) {
    if (m.kind == MsgKind::ChildCount && m.from == regs_.my_leader)
        regs_.num_phases = 2 * static_cast<int>(m.stamp);
}

void ChildCountSm::end_phase(u64) {
    if (regs_.kind == NodeKind::Leader) regs_.num_phases = 2 * static_cast<int>(regs_.children.size());
    done_ = true;
}

// -------------------------------------------------------------- BackboneStageSm

BackboneStageSm::BackboneStageSm(ProcEnv env, NodeRegs& regs, int stage)
    : env_(env), regs_(regs), stage_(stage) {}

void BackboneStageSm::begin(u64 round) {
    leader_ = regs_.kind == NodeKind::Leader;
    if (leader_) {
        phases_ = static_cast<long>(regs_.children.size());
        if (!regs_.has_token) {
            regs_.has_token = true;
            regs_.token_id = mint_token_id(regs_);
            regs_.token_from = regs_.self;
            if (env_.trace) env_.trace->token_created(round, regs_.token_id, regs_.self);
        }
    } else {
        phases_ = regs_.num_phases > 0 ? regs_.num_phases : 0;
    }
    if (stage_ == 3) {
        if (leader_) compute_routes();
        regs_.backbone_member = leader_ || regs_.is_connector;
    }
    if (stage_ == 4) {
        regs_.backbone_member = leader_ || regs_.is_connector;
    }
}

bool BackboneStageSm::done() const { return phase_ >= phases_; }

u32 BackboneStageSm::plan_phase() {
    holder_ = regs_.has_token;
    pending_token_ = false;
    target_ = 0;
    regs_.backbone_member = leader_ || regs_.is_connector;  // late designations count
    if (leader_) {
        u32 mask = 0;
        if (holder_) mask |= 0b10u;  // token pass to the next child
        bool announces = stage_ == 3 || stage_ == 4;
        if (announces) mask |= 0b1u;
        return mask;
    }
    if (!holder_) return 0u;
    bool transmits = stage_ == 1 || stage_ == 2 || stage_ == 3 ||
                     (stage_ == 4 && regs_.is_connector);
    return transmits ? 0b11u : 0b10u;
}

const Message* BackboneStageSm::tx_message(int exec, int, u64) {
    msg_ = Message{};
    msg_.from = regs_.self;
    if (leader_) {
        if (exec == 0) {
            if (stage_ == 3) {
                msg_.kind = MsgKind::ConnectorList;
                msg_.labels = regs_.connector_list;
                return &msg_;
            }
            if (stage_ == 4) {
                msg_.kind = MsgKind::BackboneMember;
                return &msg_;
            }
            return nullptr;
        }
        if (exec == 1 && holder_) {
            target_ = regs_.children[phase_ % regs_.children.size()];
            pass_msg_ = Message{};
            pass_msg_.from = regs_.self;
            pass_msg_.kind = MsgKind::TokenPass;
            pass_msg_.a = target_;
            pass_msg_.stamp = static_cast<u64>(regs_.token_id);
            return &pass_msg_;
        }
        return nullptr;
    }
    if (!holder_) return nullptr;
    if (exec == 0) {
        switch (stage_) {
            case 1:
                msg_.kind = MsgKind::FollowerOf;
                msg_.a = regs_.my_leader;
                return &msg_;
            case 2: {
                msg_.kind = MsgKind::TripletReport;
                for (auto& [w, wl] : regs_.follower_pairs_direct)
                    msg_.triplets.push_back({regs_.self, w, wl});
                return &msg_;
            }
            case 3: {
                msg_.kind = MsgKind::ConnectorList;
                msg_.labels = regs_.connector_list;  // the list heard from our leader
                return &msg_;
            }
            case 4:
                if (!regs_.is_connector) return nullptr;
                msg_.kind = MsgKind::BackboneMember;
                return &msg_;
            default: return nullptr;
        }
    }
    // exec 1: return the token to the leader
    target_ = regs_.my_leader;
    pass_msg_ = Message{};
    pass_msg_.from = regs_.self;
    pass_msg_.kind = MsgKind::TokenPass;
    pass_msg_.a = target_;
    pass_msg_.stamp = static_cast<u64>(regs_.token_id);
    return &pass_msg_;
}

void BackboneStageSm::accumulate(const Message& m) {
    switch (m.kind) {
        case MsgKind::FollowerOf:
            regs_.follower_pairs_direct.insert({m.from, m.a});
            if (regs_.kind == NodeKind::Leader && m.a != regs_.self) {
                // another leader's follower in range: a 2-hop link candidate
                if (std::find(regs_.connector_list.begin(), regs_.connector_list.end(), m.from) ==
                    regs_.connector_list.end()) {
                    regs_.connector_list.push_back(m.from);
                    std::sort(regs_.connector_list.begin(), regs_.connector_list.end());
                }
                regs_.known_connectors.insert(m.from);
            }
            break;
        case MsgKind::TripletReport:
            for (auto& t : m.triplets) regs_.triplet_reports.insert(t);
            break;
        case MsgKind::ConnectorList:
            if (std::find(m.labels.begin(), m.labels.end(), regs_.self) != m.labels.end())
                regs_.is_connector = true;
            if (m.from == regs_.my_leader && regs_.kind == NodeKind::Follower)
                regs_.connector_list = m.labels;
            for (Label l : m.labels) regs_.known_connectors.insert(l);
            break;
        case MsgKind::BackboneMember:
            if (regs_.backbone_member || regs_.kind == NodeKind::Leader || regs_.is_connector)
                regs_.backbone_neighbors.insert(m.from);
            if (regs_.kind == NodeKind::Leader) regs_.known_connectors.insert(m.from);
            break;
        default: break;
    }
}

void BackboneStageSm::on_heard(int exec, int, const Message& m, u64 round) {
    if (m.kind == MsgKind::TokenPass) {
        if (m.a == regs_.self) {
            pending_token_ = true;
            pending_token_id_ = static_cast<int>(m.stamp);
            pending_token_from_ = m.from;
            if (env_.trace) env_.trace->token_delivered(round, pending_token_id_, regs_.self);
        }
        return;
    }
    accumulate(m);
    (void)exec;
}

void BackboneStageSm::end_phase(u64 round) {
    if (holder_ && target_ != 0) {
        regs_.has_token = false;
        if (env_.trace) env_.trace->token_pass(round, regs_.token_id, regs_.self, target_);
    }
    if (pending_token_) {
        regs_.has_token = true;
        regs_.token_id = pending_token_id_;
        regs_.token_from = pending_token_from_;
    }
    ++phase_;
}

// Shortest routes over the leader's local knowledge graph; intermediaries of
// the lexicographically smallest shortest path to each known leader become
// designated connectors.
void BackboneStageSm::compute_routes() {
    std::map<Label, std::set<Label>> adj;
    auto link = [&](Label a, Label b) {
        if (a == b) return;
        adj[a].insert(b);
        adj[b].insert(a);
    };
    for (Label c : regs_.children) link(regs_.self, c);
    std::set<Label> leaders;
    for (auto& [w, wl] : regs_.follower_pairs_direct) {
        link(regs_.self, w);
        link(w, wl);
        leaders.insert(wl);
    }
    for (auto& t : regs_.triplet_reports) {
        if (!regs_.child_of(t[0])) continue;  // only own children's reports
        link(t[0], t[1]);
        link(t[1], t[2]);
        leaders.insert(t[2]);
    }
    leaders.erase(regs_.self);

    // BFS with smallest-label parent choice for deterministic tie-breaks.
    std::map<Label, int> hops;
    std::map<Label, Label> parent;
    std::deque<Label> q{regs_.self};
    hops[regs_.self] = 0;
    while (!q.empty()) {
        Label u = q.front();
        q.pop_front();
        for (Label v : adj[u]) {
            auto it = hops.find(v);
            if (it == hops.end()) {
                hops[v] = hops[u] + 1;
                parent[v] = u;
                q.push_back(v);
            } else if (it->second == hops[u] + 1 && u < parent[v]) {
                parent[v] = u;
            }
        }
    }
    for (Label y : leaders) {
        if (!hops.count(y)) continue;
        for (Label p = parent[y]; p != regs_.self; p = parent[p]) {
            if (std::find(regs_.connector_list.begin(), regs_.connector_list.end(), p) ==
                regs_.connector_list.end())
                regs_.connector_list.push_back(p);
            regs_.known_connectors.insert(p);
        }
    }
    std::sort(regs_.connector_list.begin(), regs_.connector_list.end());
}

// ------------------------------------------------------------------- BbCommSm

BbCommSm::BbCommSm(ProcEnv env, NodeRegs& regs, BbCommMode mode)
    : env_(env), regs_(regs), mode_(mode) {}

void BbCommSm::begin(u64 round) {
    leader_ = regs_.kind == NodeKind::Leader;
    if (!leader_) regs_.has_token = false;
    if (leader_) {
        if (mode_ == BbCommMode::exchange) {
            for (Label c : regs_.children)
                if (regs_.backbone_neighbors.count(c)) cycle_.push_back(c);
        } else {
            cycle_ = regs_.children;
        }
        std::sort(cycle_.begin(), cycle_.end());
        phase_ = 0;
        participant_ = true;
        if (!regs_.has_token) {
            regs_.has_token = true;
            regs_.token_id = mint_token_id(regs_);
            regs_.token_from = regs_.self;
            if (env_.trace) env_.trace->token_created(round, regs_.token_id, regs_.self);
        }
        if (regs_.own_payload) regs_.bb_inbox[regs_.self] = *regs_.own_payload;
        return;
    }
    participant_ = mode_ == BbCommMode::exchange ? regs_.is_connector
                                                 : regs_.kind == NodeKind::Follower;
    announced_phases_ = participant_ ? 2 : 0;
    if (participant_ && regs_.own_payload) regs_.bb_inbox[regs_.self] = *regs_.own_payload;
}

bool BbCommSm::done() const {
    if (leader_) return phase_ >= static_cast<long>(cycle_.size());
    return phase_ >= announced_phases_;
}

u32 BbCommSm::plan_phase() {
    holder_ = regs_.has_token;
    pending_token_ = false;
    target_ = 0;
    if (leader_) return holder_ ? 0b11u : 0b1u;
    if (!holder_) return 0u;
    return 0b11u;
}

const Message* BbCommSm::tx_message(int exec, int, u64) {
    if (exec == 0) {
        msg_ = Message{};
        msg_.from = regs_.self;
        msg_.kind = MsgKind::Single;
        msg_.b = 4;
        if (leader_) {
            long np = 2 * static_cast<long>(cycle_.size());
            msg_.stamp = static_cast<u64>(np);
            if (mode_ == BbCommMode::exchange && regs_.own_payload)
                msg_.items = {{regs_.self, *regs_.own_payload}};
            return &msg_;
        }
        if (!holder_) return nullptr;
        if (!regs_.own_payload) return nullptr;  // message, if any
        msg_.items = {{regs_.self, *regs_.own_payload}};
        return &msg_;
    }
    if (!holder_) return nullptr;
    if (leader_) {
        if (cycle_.empty()) return nullptr;
        target_ = cycle_[phase_ % cycle_.size()];
    } else {
        target_ = regs_.my_leader;
    }
    pass_msg_ = Message{};
    pass_msg_.from = regs_.self;
    pass_msg_.kind = MsgKind::TokenPass;
    pass_msg_.a = target_;
    pass_msg_.stamp = static_cast<u64>(regs_.token_id);
    return &pass_msg_;
}

void BbCommSm::on_heard(int, int, const Message& m, u64 round) {
    if (m.kind == MsgKind::TokenPass) {
        if (m.a == regs_.self) {
            pending_token_ = true;
            pending_token_id_ = static_cast<int>(m.stamp);
            pending_token_from_ = m.from;
            if (env_.trace) env_.trace->token_delivered(round, pending_token_id_, regs_.self);
        }
        return;
    }
    if (m.kind == MsgKind::Single && m.b == 4) {
        for (const MsgItem& it : m.items) regs_.bb_inbox.emplace(it.origin, it.body);
        if (!leader_ && m.from == regs_.my_leader && m.stamp > 0)
            announced_phases_ = static_cast<long>(m.stamp);
    }
    (void)round;
}

void BbCommSm::end_phase(u64 round) {
    if (holder_ && target_ != 0) {
        regs_.has_token = false;
        if (env_.trace) env_.trace->token_pass(round, regs_.token_id, regs_.self, target_);
    }
    if (pending_token_) {
        regs_.has_token = true;
        regs_.token_id = pending_token_id_;
        regs_.token_from = pending_token_from_;
    }
    ++phase_;
}

}  // namespace sinrlab
