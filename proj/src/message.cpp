#include "sinrlab/message.hpp"

namespace sinrlab {

const char* to_string(MsgKind k) {
    switch (k) {
        case MsgKind::TgHello: return "tg-hello";
        case MsgKind::TgIHear: return "tg-ihear";
        case MsgKind::TgLinks: return "tg-links";
        case MsgKind::PleCandidate: return "ple-candidate";
        case MsgKind::PleHeard: return "ple-heard";
        case MsgKind::PleLeader: return "ple-leader";
        case MsgKind::Announce: return "announce";
        case MsgKind::TokenPass: return "token-pass";
        case MsgKind::WakeupBeacon: return "wakeup";
        case MsgKind::Single: return "single";
        case MsgKind::ExchangeItem: return "exchange";
        case MsgKind::ChildCount: return "child-count";
        case MsgKind::FollowerOf: return "follower-of";
        case MsgKind::TripletReport: return "triplets";
        case MsgKind::ConnectorList: return "connectors";
        case MsgKind::BackboneMember: return "backbone-member";
    }
    return "?";
}

int Message::size_bits(int lbits) const {
    long bits = 8 + lbits;  // kind tag + sender label
    switch (kind) {
        case MsgKind::WakeupBeacon: bits += 64 + 8 + 8; break;  // phase, slot, offset
        case MsgKind::TokenPass: bits += lbits; break;          // target
        case MsgKind::Announce: bits += 2 + lbits; break;       // kind tag + my_leader
        case MsgKind::ChildCount: bits += 16; break;
        case MsgKind::FollowerOf: bits += lbits; break;
        case MsgKind::PleLeader:
        case MsgKind::PleCandidate:
        case MsgKind::BackboneMember: break;
        default: break;
    }
    if (!labels.empty()) bits += 16 + static_cast<long>(labels.size()) * lbits;
    if (!pairs.empty()) bits += 16 + static_cast<long>(pairs.size()) * (lbits + 64);
    if (!triplets.empty()) bits += 16 + static_cast<long>(triplets.size()) * 3 * lbits;
    if (!items.empty()) bits += 16 + static_cast<long>(items.size()) * (lbits + 64);
    if (stamp != 0 && kind != MsgKind::WakeupBeacon) bits += 64;
    return static_cast<int>(bits);
}

void Message::hash_into(Fnv1a& h) const {
    h.add(static_cast<u64>(kind));
    h.add(static_cast<u64>(from));
    h.add(static_cast<u64>(a));
    h.add(static_cast<u64>(b));
    h.add(stamp);
    for (Label l : labels) h.add(static_cast<u64>(l));
    for (auto& p : pairs) {
        h.add(static_cast<u64>(p.first));
        h.add(static_cast<u64>(p.second));
    }
    for (auto& t : triplets) {
        h.add(static_cast<u64>(t[0]));
        h.add(static_cast<u64>(t[1]));
        h.add(static_cast<u64>(t[2]));
    }
    for (auto& it : items) {
        h.add(static_cast<u64>(it.origin));
        h.add(it.body);
    }
}

long payload_cap(int delta, int n_labels, int cap_const) {
    long lb = label_bits(n_labels);
    long d = delta < 1 ? 1 : delta;
    return cap_const * d * lb * lb;
}

}  // namespace sinrlab
