#include "sinrlab/trace.hpp"

#include <sstream>

namespace sinrlab {

void SimTrace::transmit(u64 round, Label who, const Message& msg, int bits) {
    hash_.add(1);
    hash_.add(round);
    hash_.add(static_cast<u64>(who));
    msg.hash_into(hash_);
    ++messages_sent_;
    if (bits > max_payload_bits_) max_payload_bits_ = bits;
    last_round_ = round;
    if (recording_)
        records_.push_back({round, TraceRecord::Kind::Transmit, who, 0, msg.kind, bits, 0, 0});
}

void SimTrace::deliver(u64 round, Label listener, Label sender, const Message& msg, int bits) {
    hash_.add(2);
    hash_.add(round);
    hash_.add(static_cast<u64>(listener));
    hash_.add(static_cast<u64>(sender));
    last_round_ = round;
    if (recording_)
        records_.push_back({round, TraceRecord::Kind::Deliver, listener, sender, msg.kind, bits, 0, 0});
}

void SimTrace::wake(u64 round, Label who) {
    hash_.add(3);
    hash_.add(round);
    hash_.add(static_cast<u64>(who));
    last_round_ = round;
    if (recording_) records_.push_back({round, TraceRecord::Kind::Wake, who, 0, MsgKind::WakeupBeacon, 0, 0, 0});
}

void SimTrace::status_change(u64 round, Label who, int slot, int from, int to) {
    hash_.add(4);
    hash_.add(round);
    hash_.add(static_cast<u64>(who));
    hash_.add(static_cast<u64>(slot));
    hash_.add(static_cast<u64>(to));
    last_round_ = round;
    if (recording_)
        records_.push_back({round, TraceRecord::Kind::StatusChange, who, slot, MsgKind::WakeupBeacon, 0, from, to});
}

void SimTrace::token_created(u64 round, int token_id, Label at) {
    hash_.add(5);
    hash_.add(round);
    hash_.add(static_cast<u64>(token_id));
    hash_.add(static_cast<u64>(at));
    token_events_.push_back({round, token_id, 0, at, true});
}

void SimTrace::token_pass(u64 round, int token_id, Label from, Label to) {
    hash_.add(6);
    hash_.add(round);
    hash_.add(static_cast<u64>(token_id));
    hash_.add(static_cast<u64>(from));
    hash_.add(static_cast<u64>(to));
    token_events_.push_back({round, token_id, from, to, false});
}

void SimTrace::token_delivered(u64 round, int token_id, Label to) {
    hash_.add(7);
    hash_.add(round);
    hash_.add(static_cast<u64>(token_id));
    hash_.add(static_cast<u64>(to));
    for (auto it = token_events_.rbegin(); it != token_events_.rend(); ++it) {
        if (it->token_id == token_id && it->to == to && !it->delivered) {
            it->delivered = true;
            break;
        }
    }
}

std::string SimTrace::export_csv() const {
    std::ostringstream os;
    os << "round,actor,action,peer,payload_kind,payload_bits\n";
    for (const TraceRecord& r : records_) {
        const char* action = "";
        switch (r.kind) {
            case TraceRecord::Kind::Transmit: action = "transmit"; break;
            case TraceRecord::Kind::Deliver: action = "deliver"; break;
            case TraceRecord::Kind::Wake: action = "wake"; break;
            case TraceRecord::Kind::TokenBirth: action = "token"; break;
            case TraceRecord::Kind::StatusChange: action = "status"; break;
        }
        os << r.round << ',' << r.actor << ',' << action << ',' << r.peer << ','
           << to_string(r.payload) << ',' << r.payload_bits << '\n';
    }
    return os.str();
}

}  // namespace sinrlab
