#pragma once

#include <string>
#include <vector>

#include "sinrlab/message.hpp"

namespace sinrlab {

// A round-indexed record of what went on the air and what arrived. Rounds in
// which nothing happened contribute nothing (their indices are implicit), so
// the trace stays compact even for very long runs. A running hash covers the
// full event stream whether or not records are kept.
struct TraceRecord {
    u64 round = 0;
    enum class Kind { Transmit, Deliver, Wake, TokenBirth, StatusChange } kind;
    Label actor = 0;
    Label peer = 0;      // listener's sender / pass target / 0
    MsgKind payload = MsgKind::TgHello;
    int payload_bits = 0;
    int aux0 = 0, aux1 = 0;  // status values, slot indices, token ids
};

struct TokenEvent {
    u64 round = 0;
    int token_id = 0;      // origin-leader label * 1000 + generation
    Label from = 0;        // 0 for token creation
    Label to = 0;
    bool delivered = false;
};

class SimTrace {
  public:
    void set_recording(bool on) { recording_ = on; }
    bool recording() const { return recording_; }

    void transmit(u64 round, Label who, const Message& msg, int bits);
    void deliver(u64 round, Label listener, Label sender, const Message& msg, int bits);
    void wake(u64 round, Label who);
    void status_change(u64 round, Label who, int slot, int from, int to);
    void token_created(u64 round, int token_id, Label at);
    void token_pass(u64 round, int token_id, Label from, Label to);
    void token_delivered(u64 round, int token_id, Label to);

    u64 hash() const { return hash_.h; }
    u64 messages_sent() const { return messages_sent_; }
    int max_payload_bits() const { return max_payload_bits_; }
    u64 last_event_round() const { return last_round_; }

    const std::vector<TraceRecord>& records() const { return records_; }
    const std::vector<TokenEvent>& token_events() const { return token_events_; }

    // Newline-delimited "round,actor,action,peer,payload_kind,payload_bits".
    std::string export_csv() const;

  private:
    bool recording_ = true;
    Fnv1a hash_;
    u64 messages_sent_ = 0;
    int max_payload_bits_ = 0;
    u64 last_round_ = 0;
    std::vector<TraceRecord> records_;
    std::vector<TokenEvent> token_events_;
};

}  // namespace sinrlab
