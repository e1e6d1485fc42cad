#pragma once

#include <array>
#include <vector>

#include "sinrlab/common.hpp"

namespace sinrlab {

// Every payload the nine protocols put on the air. Sizes follow a documented
// field model (labels: ceil(log2 N) bits, counters: 64, kind tag: 8,
// list counts: 16) rather than a wire format.
enum class MsgKind : u32 {
    TgHello,        // own label
    TgIHear,        // labels heard this phase
    TgLinks,        // own label + potential parent + potential children
    PleCandidate,   // candidacy announcement
    PleHeard,       // (candidate, step) pairs heard
    PleLeader,      // election winner claim
    Announce,       // (label, kind, my_leader) status announcement
    TokenPass,      // token hand-off from a -> b
    WakeupBeacon,   // wake message carrying (phase, slot, offset)
    Single,         // single-transmit content (scalars/lists per protocol step)
    ExchangeItem,   // one queued (origin, body) broadcast item
    ChildCount,     // leader announces |T| for stage pacing
    FollowerOf,     // follower announces (self, leader)
    TripletReport,  // (reporter-follower, foreign follower, foreign leader) triplets
    ConnectorList,  // leader's designated connectors
    BackboneMember, // membership announcement
};

const char* to_string(MsgKind k);

struct MsgItem {
    Label origin = 0;
    u64 body = 0;
    bool operator==(const MsgItem& o) const { return origin == o.origin && body == o.body; }
};

struct Message {
    MsgKind kind = MsgKind::TgHello;
    Label from = 0;    // sender label
    Label a = 0;       // kind-specific (target, my_leader, ...)
    Label b = 0;
    u64 stamp = 0;     // phase / counter payloads
    std::vector<Label> labels;
    std::vector<std::pair<Label, int>> pairs;          // (label, step/label) pairs
    std::vector<std::array<Label, 3>> triplets;
    std::vector<MsgItem> items;

    int size_bits(int lbits) const;
    void hash_into(Fnv1a& h) const;
};

// Message-size cap: cap_const * max(1, delta) * ceil(log2 N)^2 bits.
long payload_cap(int delta, int n_labels, int cap_const = 64);

}  // namespace sinrlab
