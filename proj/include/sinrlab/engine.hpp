#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <span>

#include "sinrlab/comm_graph.hpp"
#include "sinrlab/message.hpp"
#include "sinrlab/ssf.hpp"
#include "sinrlab/trace.hpp"

namespace sinrlab {

// Reference delivery computation straight from the reception definition:
// for each station, the unique transmitter whose message it successfully
// receives this round, if any. Index into `stations`; transmitters get
// std::nullopt. Used directly by unit tests and as the oracle for the
// engine's precomputed fast path.
std::vector<std::optional<int>> compute_deliveries(const std::vector<Station>& stations,
                                                   const SinrParams& params,
                                                   const std::vector<int>& transmitter_idx);

class Engine;

// Per-node protocol hook. Drivers schedule their own boundaries and
// transmissions; the engine calls back at the requested rounds.
class NodeDriver {
  public:
    virtual ~NodeDriver() = default;
    // Runs at a round the driver asked for, before transmissions resolve.
    virtual void on_boundary(Engine& eng, u64 round) = 0;
    // A message this node successfully received in `round`; protocol-visible
    // from round+1 (boundaries scheduled from here must be > round).
    virtual void on_delivery(Engine& eng, u64 round, const Message& msg) = 0;
    // Fire-time revalidation of a scheduled transmission. Returns the payload
    // to send, or nullptr to stay silent (e.g. a cancelled election claim).
    virtual const Message* transmission(u32 tag, u64 round) = 0;
    virtual bool finished() const = 0;
};

struct EngineLimits {
    u64 max_rounds = ~u64{0};
    long cap_const = 64;  // payload cap multiplier
    int n_labels = 0;     // label range bound N; 0 infers the max label present
};

// Round-synchronous executor. Internally event-driven: rounds in which nothing
// is scheduled are skipped, which leaves observable behaviour (round indices,
// traces, deliveries) identical to stepping one round at a time.
class Engine {
  public:
    Engine(std::vector<Station> stations, SinrParams params, EngineLimits limits = {});

    int n() const { return static_cast<int>(stations_.size()); }
    Label label_of(int idx) const { return stations_[idx].label; }
    int index_of(Label l) const { return index_of_.at(l); }
    const std::vector<Station>& stations() const { return stations_; }
    const SinrParams& params() const { return params_; }
    const CommGraph& graph() const { return graph_; }
    long cap_bits() const { return cap_bits_; }

    bool awake(int idx) const { return awake_[idx] != 0; }
    bool all_awake() const { return awake_count_ == n(); }
    u64 wake_round(int idx) const { return wake_round_[idx]; }

    void set_driver(int idx, NodeDriver* d) { drivers_[idx] = d; }
    void schedule_boundary(int idx, u64 round);
    void schedule_tx(int idx, u64 round, u32 tag);

    u64 now() const { return now_; }
    void set_max_rounds(u64 m) { limits_.max_rounds = m; }
    SimTrace& trace() { return trace_; }
    const SimTrace& trace() const { return trace_; }

    // Runs until every driver reports finished, the optional stop check fires,
    // or the round limit is hit (throws RoundBudgetExceeded in that case,
    // unless the stop check accepted the state first).
    void run(std::function<bool(const Engine&)> stop_check = nullptr);

    // Single prepared round, for tests: the given nodes transmit the given
    // messages at the current round; listeners' deliveries are returned by
    // node index and recorded in the trace.
    std::vector<std::optional<std::pair<int, Message>>> step_prepared(
        const std::vector<std::pair<int, Message>>& transmissions);

  private:
    struct PendingTx {
        int node;
        u32 tag;
    };

    void resolve_round(u64 round, std::vector<std::pair<int, const Message*>>& txs);
    bool drivers_finished() const;

    std::vector<Station> stations_;
    SinrParams params_;
    EngineLimits limits_;
    CommGraph graph_;
    std::map<Label, int> index_of_;
    std::vector<std::vector<double>> pw_;  // received power sender x listener
    double rx_floor_ = 0.0;
    long cap_bits_ = 0;
    int lbits_ = 1;

    std::vector<char> awake_;
    std::vector<u64> wake_round_;
    int awake_count_ = 0;

    std::vector<NodeDriver*> drivers_;
    std::map<u64, std::vector<PendingTx>> tx_queue_;
    std::priority_queue<std::pair<u64, int>, std::vector<std::pair<u64, int>>,
                        std::greater<>> boundaries_;
    u64 now_ = 0;

    SimTrace trace_;
};

}  // namespace sinrlab
