#include "sinrlab/procedures.hpp"

#include <algorithm>
#include <cassert>

namespace sinrlab {

const char* to_string(NodeKind k) {
    switch (k) {
        case NodeKind::Leader: return "leader";
        case NodeKind::Follower: return "follower";
        case NodeKind::Neutral: return "neutral";
    }
    return "?";
}

bool NodeRegs::child_of(Label v) const {
    return std::binary_search(children.begin(), children.end(), v);
}

void NodeRegs::add_child(Label v) {
    auto it = std::lower_bound(children.begin(), children.end(), v);
    if (it == children.end() || *it != v) children.insert(it, v);
}

void NodeRegs::remove_child(Label v) {
    auto it = std::lower_bound(children.begin(), children.end(), v);
    if (it != children.end() && *it == v) children.erase(it);
}

int mint_token_id(NodeRegs& regs) {
    ++regs.token_gen;
    return regs.self * 1024 + regs.token_gen;
}

// ---------------------------------------------------------------- TreeGrower

TreeGrowerSm::TreeGrowerSm(ProcEnv env, NodeRegs& regs, int n_bound)
    : env_(env), regs_(regs), n_bound_(n_bound) {
    regs_.kind = NodeKind::Leader;
    regs_.my_leader = regs_.self;
    regs_.children.clear();
}

u32 TreeGrowerSm::plan_phase() {
    i_hear_.clear();
    bidir_.clear();
    potential_parent_ = 0;
    potential_children_.clear();
    become_child_ = false;
    confirmed_children_.clear();
    return regs_.kind == NodeKind::Leader ? 0b1111u : 0u;
}

const Message* TreeGrowerSm::tx_message(int exec, int, u64) {
    if (regs_.kind != NodeKind::Leader) return nullptr;
    msg_ = Message{};
    msg_.from = regs_.self;
    switch (exec) {
        case 0:
        case 2: msg_.kind = MsgKind::TgHello; break;
        case 1:
            msg_.kind = MsgKind::TgIHear;
            msg_.labels = i_hear_;
            break;
        case 3:
            msg_.kind = MsgKind::TgLinks;
            msg_.a = potential_parent_;
            msg_.labels = potential_children_;
            break;
        default: return nullptr;
    }
    return &msg_;
}

void TreeGrowerSm::on_heard(int exec, int, const Message& m, u64) {
    if (regs_.kind != NodeKind::Leader) return;  // silenced children ignore the phase
    switch (exec) {
        case 0:
            if (m.kind == MsgKind::TgHello &&
                std::find(i_hear_.begin(), i_hear_.end(), m.from) == i_hear_.end())
                i_hear_.push_back(m.from);
            break;
        case 1:
            if (m.kind == MsgKind::TgIHear &&
                std::find(i_hear_.begin(), i_hear_.end(), m.from) != i_hear_.end() &&
                std::find(m.labels.begin(), m.labels.end(), regs_.self) != m.labels.end())
                bidir_.insert(m.from);
            break;
        case 2:
            if (m.kind == MsgKind::TgHello && bidir_.count(m.from)) {
                if (m.from == potential_parent_) break;
                if (m.from < regs_.self && potential_parent_ == 0) {
                    potential_parent_ = m.from;
                } else if (std::find(potential_children_.begin(), potential_children_.end(),
                                     m.from) == potential_children_.end()) {
                    potential_children_.push_back(m.from);
                }
            }
            break;
        case 3:
            if (m.kind == MsgKind::TgLinks) {
                if (m.from == potential_parent_ &&
                    std::find(m.labels.begin(), m.labels.end(), regs_.self) != m.labels.end())
                    become_child_ = true;
                if (m.a == regs_.self &&
                    std::find(potential_children_.begin(), potential_children_.end(), m.from) !=
                        potential_children_.end() &&
                    std::find(confirmed_children_.begin(), confirmed_children_.end(), m.from) ==
                        confirmed_children_.end())
                    confirmed_children_.push_back(m.from);
            }
            break;
        default: break;
    }
}

void TreeGrowerSm::end_phase(u64) {
    if (regs_.kind == NodeKind::Leader) {
        for (Label c : confirmed_children_) regs_.add_child(c);
        if (become_child_) {
            regs_.my_leader = potential_parent_;
            regs_.kind = NodeKind::Neutral;
        }
    }
    ++phase_;
}

// ---------------------------------------------------------------- TreeCutter

TreeCutterSm::TreeCutterSm(ProcEnv env, NodeRegs& regs, int n_bound)
    : env_(env), regs_(regs), total_phases_(2L * 947 * (n_bound + 1) - 1) {
    regs_.my_old_parent = regs_.my_leader;
    regs_.traversed.clear();
    regs_.explore_return_to = 0;
    regs_.rr_cursor = 0;
}

void TreeCutterSm::begin(u64 round) {
    regs_.has_token = false;
    if (regs_.kind == NodeKind::Leader) {
        regs_.my_leader = regs_.self;
        mint_token(round);
    }
}

void TreeCutterSm::mint_token(u64 round) {
    regs_.has_token = true;
    regs_.token_id = mint_token_id(regs_);
    regs_.token_from = regs_.self;
    if (env_.trace) env_.trace->token_created(round, regs_.token_id, regs_.self);
}

u32 TreeCutterSm::plan_phase() {
    holder_ = regs_.has_token;
    participant_ = holder_ && regs_.kind == NodeKind::Neutral;
    cand_heard_.clear();
    cand_reports_.clear();
    main_step_ = -1;
    claim_fired_ = false;
    pending_token_ = false;
    target_ = 0;
    became_leader_this_phase_ = false;
    if (participant_) return 0b10111u;  // candidacy, report, claim, announce, pass
    if (holder_) return 0b11000u;       // announce, pass
    return 0u;
}

const Message* TreeCutterSm::tx_message(int exec, int step, u64 round) {
    msg_ = Message{};
    msg_.from = regs_.self;
    switch (exec) {
        case 0:
            if (!participant_) return nullptr;
            msg_.kind = MsgKind::PleCandidate;
            return &msg_;
        case 1: {
            if (!participant_) return nullptr;
            msg_.kind = MsgKind::PleHeard;
            for (auto& [v, s] : cand_heard_) msg_.pairs.emplace_back(v, s);
            return &msg_;
        }
        case 2: {
            if (!participant_ || regs_.kind != NodeKind::Neutral) return nullptr;
            if (main_step_ < 0) {
                // Steps where every other known candidate reported hearing us.
                std::set<Label> known;
                for (auto& [v, s] : cand_heard_) known.insert(v);
                for (auto& [v, rep] : cand_reports_) known.insert(v);
                known.erase(regs_.self);
                int best = -1;
                for (int s = 0; s < env_.family->length(); ++s) {
                    if (!env_.family->contains(s, regs_.self)) continue;
                    bool all = true;
                    for (Label v : known) {
                        auto it = cand_reports_.find(v);
                        if (it == cand_reports_.end() || !it->second.count({regs_.self, s})) {
                            all = false;
                            break;
                        }
                    }
                    if (all) {
                        best = s;
                        break;
                    }
                }
                if (best < 0)
                    throw std::runtime_error(
                        "potential-leader-election: no main round (dilution misconfigured)");
                main_step_ = best;
            }
            if (step != main_step_) return nullptr;
            // Claiming leadership; effective immediately at this transmission.
            regs_.kind = NodeKind::Leader;
            regs_.my_leader = regs_.self;
            became_leader_this_phase_ = true;
            claim_fired_ = true;
            msg_.kind = MsgKind::PleLeader;
            return &msg_;
        }
        case 3:
            if (!holder_) return nullptr;
            msg_.kind = MsgKind::Announce;
            msg_.a = regs_.my_leader;
            msg_.b = static_cast<int>(regs_.kind);
            return &msg_;
        case 4: {
            if (!holder_) return nullptr;
            if (target_ == 0) target_ = pick_target();
            if (target_ == 0) return nullptr;  // leader with no children keeps the token
            msg_.kind = MsgKind::TokenPass;
            msg_.a = target_;
            msg_.stamp = static_cast<u64>(regs_.token_id);
            return &msg_;
        }
        default: return nullptr;
    }
    (void)round;
}

void TreeCutterSm::apply_announce(Label who, NodeKind their_kind, Label their_leader) {
    if (who == regs_.self) return;
    if (regs_.kind == NodeKind::Leader && their_kind == NodeKind::Follower &&
        their_leader == regs_.self) {
        regs_.add_child(who);
        return;
    }
    if (their_kind == NodeKind::Leader || their_leader != regs_.self) regs_.remove_child(who);
    if (regs_.kind == NodeKind::Neutral && their_kind == NodeKind::Leader) {
        regs_.kind = NodeKind::Follower;
        regs_.my_leader = who;
    }
}

void TreeCutterSm::on_heard(int exec, int step, const Message& m, u64 round) {
    switch (exec) {
        case 0:
            if (participant_ && m.kind == MsgKind::PleCandidate)
                cand_heard_.insert({m.from, step});
            break;
        case 1:
            if (participant_ && m.kind == MsgKind::PleHeard) {
                auto& rep = cand_reports_[m.from];
                for (auto& [v, s] : m.pairs) rep.insert({v, s});
            }
            break;
        case 2:
            if (m.kind == MsgKind::PleLeader) {
                if (regs_.kind == NodeKind::Neutral) {
                    regs_.kind = NodeKind::Follower;
                    regs_.my_leader = m.from;
                } else {
                    apply_announce(m.from, NodeKind::Leader, m.from);
                }
            }
            break;
        case 3:
            if (m.kind == MsgKind::Announce)
                apply_announce(m.from, static_cast<NodeKind>(m.b), m.a);
            break;
        case 4:
            if (m.kind == MsgKind::TokenPass && m.a == regs_.self) {
                pending_token_ = true;
                pending_token_id_ = static_cast<int>(m.stamp);
                pending_token_from_ = m.from;
                if (env_.trace) env_.trace->token_delivered(round, pending_token_id_, regs_.self);
            }
            break;
        default: break;
    }
}

Label TreeCutterSm::pick_target() const {
    if (regs_.kind == NodeKind::Leader) {
        if (regs_.children.empty()) return 0;
        return regs_.children[regs_.rr_cursor % regs_.children.size()];
    }
    if (participant_) return regs_.token_from;  // election done, hand it back
    // follower traversal
    auto next_untraversed = [&]() -> Label {
        for (Label c : regs_.children)
            if (!regs_.traversed.count(c)) return c;
        return 0;
    };
    if (regs_.token_from == regs_.my_leader) {
        Label c = next_untraversed();
        return c ? c : regs_.my_leader;
    }
    if (regs_.child_of(regs_.token_from)) {
        Label c = next_untraversed();
        if (c) return c;
        return regs_.explore_return_to ? regs_.explore_return_to : regs_.token_from;
    }
    return regs_.token_from;  // visited by the old parent while realigned: bounce back
}

void TreeCutterSm::end_phase(u64 round) {
    if (holder_ && target_ != 0) {
        if (regs_.kind == NodeKind::Leader) {
            ++regs_.rr_cursor;
        } else if (!participant_) {
            if (regs_.token_from == regs_.my_leader) regs_.explore_return_to = regs_.my_leader;
            if (regs_.child_of(target_)) regs_.traversed.insert(target_);
        }
        regs_.has_token = false;
        if (env_.trace) env_.trace->token_pass(round, regs_.token_id, regs_.self, target_);
    }
    if (became_leader_this_phase_) mint_token(round);
    if (pending_token_) {
        regs_.has_token = true;
        regs_.token_id = pending_token_id_;
        regs_.token_from = pending_token_from_;
    }
    ++phase_;
    if (phase_ >= total_phases_ && regs_.kind == NodeKind::Follower) regs_.children.clear();
}

// ------------------------------------------------------- TokenPassingTransfer

TokenPassingSm::TokenPassingSm(ProcEnv env, NodeRegs& regs, int n_bound, TptMode mode,
                               std::vector<Label> children, Message single_msg)
    : env_(env),
      regs_(regs),
      mode_(mode),
      walk_children_(std::move(children)),
      total_iters_(488L * n_bound),
      msg_(std::move(single_msg)) {
    std::sort(walk_children_.begin(), walk_children_.end());
    msg_.from = regs_.self;
}

void TokenPassingSm::begin(u64 round) {
    regs_.has_token = false;
    if (regs_.kind == NodeKind::Leader) {
        regs_.has_token = true;
        regs_.token_id = mint_token_id(regs_);
        regs_.token_from = regs_.self;
        if (env_.trace) env_.trace->token_created(round, regs_.token_id, regs_.self);
    }
}

u32 TokenPassingSm::plan_phase() {
    holder_ = regs_.has_token;
    head_.reset();
    head_fired_ = false;
    pending_token_ = false;
    target_ = 0;
    if (!holder_) return 0u;
    if (mode_ == TptMode::exchange && !regs_.queued.empty()) head_ = *regs_.queued.begin();
    return 0b11u;
}

const Message* TokenPassingSm::tx_message(int exec, int, u64 round) {
    if (!holder_) return nullptr;
    if (exec == 0) {
        switch (mode_) {
            case TptMode::wakeup:
                msg_.kind = MsgKind::WakeupBeacon;
                msg_.stamp = env_.beacon_stamp ? env_.beacon_stamp(round) : round;
                return &msg_;
            case TptMode::single_transmit: return &msg_;
            case TptMode::exchange: {
                if (!head_) return nullptr;
                msg_.kind = MsgKind::ExchangeItem;
                msg_.items = {{*head_, regs_.held[*head_]}};
                msg_.labels.clear();
                msg_.pairs.clear();
                head_fired_ = true;
                return &msg_;
            }
        }
        return nullptr;
    }
    // token hand-off execution
    if (target_ == 0) {
        if (regs_.kind == NodeKind::Leader && !walk_children_.empty())
            target_ = walk_children_[rr_ % walk_children_.size()];
        else if (regs_.my_leader != regs_.self)
            target_ = regs_.my_leader;
    }
    if (target_ == 0) return nullptr;
    pass_msg_ = Message{};
    pass_msg_.from = regs_.self;
    pass_msg_.kind = MsgKind::TokenPass;
    pass_msg_.a = target_;
    pass_msg_.stamp = static_cast<u64>(regs_.token_id);
    return &pass_msg_;
}

void TokenPassingSm::on_heard(int exec, int, const Message& m, u64 round) {
    if (m.kind == MsgKind::TokenPass) {
        if (exec == 1 && m.a == regs_.self) {
            pending_token_ = true;
            pending_token_id_ = static_cast<int>(m.stamp);
            pending_token_from_ = m.from;
            if (env_.trace) env_.trace->token_delivered(round, pending_token_id_, regs_.self);
        }
        return;
    }
    if (m.kind == MsgKind::ExchangeItem) {
        for (const MsgItem& it : m.items) {
            if (regs_.heard_origins.count(it.origin)) continue;
            regs_.heard_origins.insert(it.origin);
            regs_.heard_exchange_origins.insert(it.origin);
            regs_.held[it.origin] = it.body;
            regs_.queued.insert(it.origin);
        }
        return;
    }
    if (m.kind == MsgKind::Single) {
        // stage-tagged single-transmit content used by multi-broadcast
        if (m.b == 1) {
            regs_.heard_leader_pairs.insert({m.from, m.a});
        } else if (m.b == 2) {
            auto& rep = regs_.child_reports[m.from];
            for (auto& [w, wl] : m.pairs) rep.insert({w, wl});
        } else if (m.b == 3) {
            for (const MsgItem& it : m.items) regs_.collected[it.origin] = it.body;
        }
        return;
    }
}

void TokenPassingSm::end_phase(u64 round) {
    if (holder_) {
        if (mode_ == TptMode::exchange && head_ && head_fired_) {
            regs_.queued.erase(*head_);
            regs_.transmitted_origins.insert(*head_);
        }
        if (target_ != 0) {
            if (regs_.kind == NodeKind::Leader) ++rr_;
            regs_.has_token = false;
            if (env_.trace) env_.trace->token_pass(round, regs_.token_id, regs_.self, target_);
        }
    }
    if (pending_token_) {
        regs_.has_token = true;
        regs_.token_id = pending_token_id_;
        regs_.token_from = pending_token_from_;
    }
    ++iter_;
}

}  // namespace sinrlab
