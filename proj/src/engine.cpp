#include "sinrlab/engine.hpp"

#include <algorithm>
#include <cmath>

namespace sinrlab {

std::vector<std::optional<int>> compute_deliveries(const std::vector<Station>& stations,
                                                   const SinrParams& params,
                                                   const std::vector<int>& transmitter_idx) {
    int n = static_cast<int>(stations.size());
    std::vector<Station> txs;
    txs.reserve(transmitter_idx.size());
    for (int t : transmitter_idx) txs.push_back(stations[t]);
    std::vector<std::optional<int>> out(n);
    for (int v = 0; v < n; ++v) {
        bool transmitting =
            std::find(transmitter_idx.begin(), transmitter_idx.end(), v) != transmitter_idx.end();
        if (transmitting) continue;
        std::optional<int> winner;
        for (int u : transmitter_idx) {
            if (receives(stations[u], stations[v], txs, params)) {
                if (winner)
                    throw std::logic_error("compute_deliveries: two senders received at one listener");
                winner = u;
            }
        }
        out[v] = winner;
    }
    return out;
}

Engine::Engine(std::vector<Station> stations, SinrParams params, EngineLimits limits)
    : stations_(std::move(stations)), params_(params), limits_(limits) {
    graph_ = build_comm_graph(stations_, params_);
    int n = static_cast<int>(stations_.size());
    int max_label = 0;
    for (int i = 0; i < n; ++i) {
        index_of_[stations_[i].label] = i;
        max_label = std::max(max_label, stations_[i].label);
    }
    int n_labels = limits_.n_labels > 0 ? limits_.n_labels : max_label;
    lbits_ = label_bits(n_labels);
    cap_bits_ = payload_cap(graph_.max_degree, n_labels, limits_.cap_const);

    pw_.assign(n, std::vector<double>(n, 0.0));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            double d = dist(stations_[u].pos, stations_[v].pos);
            pw_[u][v] = params_.power / std::pow(d, params_.alpha);
        }
    rx_floor_ = params_.rx_floor();

    awake_.assign(n, 0);
    wake_round_.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        awake_[i] = stations_[i].initially_awake ? 1 : 0;
        if (awake_[i]) ++awake_count_;
    }
    drivers_.assign(n, nullptr);
}

void Engine::schedule_boundary(int idx, u64 round) {
    boundaries_.emplace(round, idx);
}

void Engine::schedule_tx(int idx, u64 round, u32 tag) {
    tx_queue_[round].push_back({idx, tag});
}

bool Engine::drivers_finished() const {
    for (int i = 0; i < n(); ++i)
        if (drivers_[i] && !drivers_[i]->finished()) return false;
    return true;
}

void Engine::resolve_round(u64 round, std::vector<std::pair<int, const Message*>>& txs) {
    // Enforce: exactly one action per node, no asleep transmitter, payload cap.
    std::vector<char> is_tx(n(), 0);
    for (auto& [node, msg] : txs) {
        if (!awake_[node]) throw std::logic_error("engine: asleep node in transmitter set");
        if (is_tx[node]) throw std::logic_error("engine: node transmits twice in one round");
        is_tx[node] = 1;
        int bits = msg->size_bits(lbits_);
        if (bits > cap_bits_)
            throw std::runtime_error("engine: payload exceeds cap (" + std::to_string(bits) + " > " +
                                     std::to_string(cap_bits_) + " bits)");
        trace_.transmit(round, stations_[node].label, *msg, bits);
    }

    // Successful reception needs the SINR quotient at threshold and the bare
    // received power over the weak-device floor; with beta >= 1 and positive
    // noise at most one sender can pass per listener, asserted here.
    double noise = params_.noise;
    double beta = params_.beta;
    for (int v = 0; v < n(); ++v) {
        if (is_tx[v]) continue;
        double total = 0.0;
        for (auto& [u, msg] : txs) total += pw_[u][v];
        int winner = -1;
        const Message* wmsg = nullptr;
        for (auto& [u, msg] : txs) {
            double signal = pw_[u][v];
            if (signal < rx_floor_) continue;
            if (signal < beta * (noise + (total - signal))) continue;
            if (winner >= 0) throw std::logic_error("engine: duplicate delivery at one listener");
            winner = u;
            wmsg = msg;
        }
        if (winner < 0) continue;
        Label lv = stations_[v].label;
        Label lu = stations_[winner].label;
        if (awake_[v]) {
            trace_.deliver(round, lv, lu, *wmsg, wmsg->size_bits(lbits_));
            if (drivers_[v]) drivers_[v]->on_delivery(*this, round, *wmsg);
        } else if (wmsg->kind == MsgKind::WakeupBeacon) {
            awake_[v] = 1;
            ++awake_count_;
            wake_round_[v] = round;
            trace_.deliver(round, lv, lu, *wmsg, wmsg->size_bits(lbits_));
            trace_.wake(round, lv);
            if (drivers_[v]) drivers_[v]->on_delivery(*this, round, *wmsg);
        }
        // asleep nodes ignore everything but wakeup payloads
    }
}

void Engine::run(std::function<bool(const Engine&)> stop_check) {
    std::vector<std::pair<int, const Message*>> txs;
    while (true) {
        // Next round with anything to do.
        u64 next = ~u64{0};
        if (!boundaries_.empty()) next = boundaries_.top().first;
        if (!tx_queue_.empty()) next = std::min(next, tx_queue_.begin()->first);
        if (next == ~u64{0}) {
            if (!drivers_finished())
                throw std::logic_error("engine: drivers idle but not finished");
            return;
        }
        if (next > limits_.max_rounds) throw RoundBudgetExceeded("engine: round budget exceeded");
        if (next < now_) throw std::logic_error("engine: time went backwards");
        now_ = next;

        while (!boundaries_.empty() && boundaries_.top().first == now_) {
            int node = boundaries_.top().second;
            boundaries_.pop();
            if (drivers_[node]) drivers_[node]->on_boundary(*this, now_);
        }

        txs.clear();
        auto it = tx_queue_.find(now_);
        if (it != tx_queue_.end()) {
            for (const PendingTx& p : it->second) {
                const Message* m =
                    drivers_[p.node] ? drivers_[p.node]->transmission(p.tag, now_) : nullptr;
                if (m) txs.emplace_back(p.node, m);
            }
            tx_queue_.erase(it);
        }
        if (!txs.empty()) resolve_round(now_, txs);

        if (stop_check && stop_check(*this)) return;
        if (drivers_finished() && tx_queue_.empty() && boundaries_.empty()) return;
        ++now_;
    }
}

std::vector<std::optional<std::pair<int, Message>>> Engine::step_prepared(
    const std::vector<std::pair<int, Message>>& transmissions) {
    std::vector<std::optional<std::pair<int, Message>>> out(n());
    std::vector<int> tx_idx;
    std::vector<std::pair<int, const Message*>> txs;
    for (auto& [node, msg] : transmissions) {
        tx_idx.push_back(node);
        txs.emplace_back(node, &msg);
    }
    // Cross-check the fast path against the definitional computation.
    auto oracle = compute_deliveries(stations_, params_, tx_idx);

    std::vector<char> is_tx(n(), 0);
    for (auto& [node, msg] : txs) {
        if (!awake_[node]) throw std::logic_error("engine: asleep node in transmitter set");
        is_tx[node] = 1;
        int bits = msg->size_bits(lbits_);
        if (bits > cap_bits_) throw std::runtime_error("engine: payload exceeds cap");
        trace_.transmit(now_, stations_[node].label, *msg, bits);
    }
    for (int v = 0; v < n(); ++v) {
        if (is_tx[v] || !oracle[v]) continue;
        int u = *oracle[v];
        const Message* m = nullptr;
        for (auto& [node, msg] : txs)
            if (node == u) m = msg;
        if (awake_[v]) {
            trace_.deliver(now_, stations_[v].label, stations_[u].label, *m, m->size_bits(lbits_));
            out[v] = std::make_pair(u, *m);
        } else if (m->kind == MsgKind::WakeupBeacon) {
            awake_[v] = 1;
            ++awake_count_;
            wake_round_[v] = now_;
            trace_.wake(now_, stations_[v].label);
            out[v] = std::make_pair(u, *m);
        }
    }
    ++now_;
    return out;
}

}  // namespace sinrlab
