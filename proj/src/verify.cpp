#include "sinrlab/verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace sinrlab {

namespace {

std::string box_key(const GridBox& b) {
    std::ostringstream os;
    os << '(' << b.a << ',' << b.b << ')';
    return os.str();
}

// index by label
std::map<Label, int> label_index(const CommGraph& g) {
    std::map<Label, int> m;
    for (int i = 0; i < g.n; ++i) m[g.labels[i]] = i;
    return m;
}

bool at_most_one_leader_per_box(const std::vector<NodeRegs>& finals,
                                const std::vector<Station>& stations, const SinrParams& params,
                                PropertyReport& rep) {
    double cell = pivotal_cell(transmission_range(params));
    std::map<std::pair<long, long>, Label> seen;
    for (size_t i = 0; i < finals.size(); ++i) {
        if (finals[i].kind != NodeKind::Leader) continue;
        GridBox b = grid_coord(stations[i].pos, cell);
        auto key = std::make_pair(b.a, b.b);
        auto [it, fresh] = seen.emplace(key, finals[i].self);
        if (!fresh) {
            rep.fail("two leaders " + std::to_string(it->second) + "," +
                     std::to_string(finals[i].self) + " in pivotal box " + box_key(b));
            return false;
        }
    }
    return true;
}

}  // namespace

PropertyReport check_forest(const std::vector<NodeRegs>& finals,
                            const std::vector<Station>& stations, const CommGraph& graph,
                            const SinrParams& params) {
    PropertyReport rep;
    rep.property = "forest";
    auto idx = label_index(graph);
    int leaders = 0;
    for (size_t i = 0; i < finals.size(); ++i) {
        const NodeRegs& r = finals[i];
        if (r.kind == NodeKind::Leader) {
            ++leaders;
            if (r.my_leader != r.self) rep.fail("leader " + std::to_string(r.self) + " not own root");
        } else {
            // a child: parent must exist, know it, and differ from self
            if (r.my_leader == r.self) {
                rep.fail("non-leader " + std::to_string(r.self) + " has no parent");
                continue;
            }
            auto it = idx.find(r.my_leader);
            if (it == idx.end()) {
                rep.fail("node " + std::to_string(r.self) + " has unknown parent " +
                         std::to_string(r.my_leader));
                continue;
            }
            const NodeRegs& p = finals[it->second];
            if (!p.child_of(r.self))
                rep.fail("parent " + std::to_string(p.self) + " does not list child " +
                         std::to_string(r.self));
        }
        for (Label c : r.children) {
            auto it = idx.find(c);
            if (it == idx.end() || finals[it->second].my_leader != r.self)
                rep.fail("child " + std::to_string(c) + " does not acknowledge parent " +
                         std::to_string(r.self));
        }
    }
    // each node in exactly one tree: walk parent links, assert termination
    for (size_t i = 0; i < finals.size(); ++i) {
        std::set<Label> seen;
        Label cur = finals[i].self;
        while (true) {
            const NodeRegs& r = finals[idx.at(cur)];
            if (r.kind == NodeKind::Leader) break;
            if (!seen.insert(cur).second) {
                rep.fail("cycle through node " + std::to_string(cur));
                break;
            }
            cur = r.my_leader;
        }
    }
    at_most_one_leader_per_box(finals, stations, params, rep);
    rep.measured["leaders"] = leaders;
    return rep;
}

PropertyReport check_stars(const std::vector<NodeRegs>& finals,
                           const std::vector<Station>& stations, const CommGraph& graph,
                           const SinrParams& params) {
    PropertyReport rep;
    rep.property = "stars";
    auto idx = label_index(graph);
    std::vector<int> leader_idx;
    for (size_t i = 0; i < finals.size(); ++i) {
        const NodeRegs& r = finals[i];
        if (r.kind == NodeKind::Neutral) {
            rep.fail("node " + std::to_string(r.self) + " still neutral");
            continue;
        }
        if (r.kind == NodeKind::Leader) {
            leader_idx.push_back(static_cast<int>(i));
            continue;
        }
        // follower: leader is a direct neighbour, is a leader, lists us; no children
        if (!r.children.empty())
            rep.fail("follower " + std::to_string(r.self) + " kept children");
        auto it = idx.find(r.my_leader);
        if (it == idx.end()) {
            rep.fail("follower " + std::to_string(r.self) + " has unknown leader");
            continue;
        }
        if (finals[it->second].kind != NodeKind::Leader)
            rep.fail("follower " + std::to_string(r.self) + " aligned to non-leader " +
                     std::to_string(r.my_leader));
        if (!graph.has_edge(static_cast<int>(i), it->second))
            rep.fail("follower " + std::to_string(r.self) + " out of range of leader " +
                     std::to_string(r.my_leader));
        if (!finals[it->second].child_of(r.self))
            rep.fail("leader " + std::to_string(r.my_leader) + " does not list follower " +
                     std::to_string(r.self));
    }
    for (int li : leader_idx)
        for (Label c : finals[li].children) {
            auto it = idx.find(c);
            if (it == idx.end() || finals[it->second].my_leader != finals[li].self ||
                finals[it->second].kind != NodeKind::Follower)
                rep.fail("leader " + std::to_string(finals[li].self) + " lists stray child " +
                         std::to_string(c));
        }
    at_most_one_leader_per_box(finals, stations, params, rep);
    // with two or more leaders, each has another within 3 hops
    if (leader_idx.size() >= 2) {
        for (int li : leader_idx) {
            auto hops = graph.bfs_hops(li);
            bool found = false;
            for (int lj : leader_idx)
                if (lj != li && hops[lj] >= 0 && hops[lj] <= 3) found = true;
            if (!found)
                rep.fail("leader " + std::to_string(finals[li].self) +
                         " has no other leader within 3 hops");
        }
    }
    rep.measured["leaders"] = static_cast<double>(leader_idx.size());
    return rep;
}

PropertyReport check_backbone(const std::vector<NodeRegs>& finals,
                              const std::vector<Station>& stations, const CommGraph& graph,
                              const SinrParams& params, const BackboneThresholds& thr) {
    PropertyReport rep;
    rep.property = "backbone";
    (void)stations;
    (void)params;
    auto idx = label_index(graph);
    std::vector<int> members;
    for (size_t i = 0; i < finals.size(); ++i)
        if (finals[i].kind == NodeKind::Leader || finals[i].is_connector)
            members.push_back(static_cast<int>(i));
    std::vector<char> in_h(graph.n, 0);
    for (int m : members) in_h[m] = 1;

    // membership views are sound: every listed neighbour is a member in range
    for (size_t i = 0; i < finals.size(); ++i) {
        for (Label nb : finals[i].backbone_neighbors) {
            auto it = idx.find(nb);
            if (it == idx.end() || !in_h[it->second] ||
                !graph.has_edge(static_cast<int>(i), it->second))
                rep.fail("node " + std::to_string(finals[i].self) + " lists bogus H neighbour " +
                         std::to_string(nb));
        }
    }

    // 1. connected dominating set with bounded internal degree
    int max_internal = 0;
    for (int m : members) {
        int deg = 0;
        for (int v : graph.adj[m]) deg += in_h[v];
        max_internal = std::max(max_internal, deg);
    }
    for (int v = 0; v < graph.n; ++v) {
        if (in_h[v]) continue;
        bool dominated = false;
        for (int u : graph.adj[v]) dominated |= in_h[u] != 0;
        if (!dominated) rep.fail("node " + std::to_string(graph.labels[v]) + " not dominated");
    }
    int h_diam = graph.induced_diameter(members);
    if (members.empty()) rep.fail("empty backbone");
    if (h_diam < 0) rep.fail("backbone disconnected");
    if (max_internal > thr.internal_degree)
        rep.fail("internal degree " + std::to_string(max_internal) + " over bound");

    // 2. size against the exact smallest connected dominating set
    if (graph.n <= thr.oracle_limit) {
        int scd = min_cds_oracle(graph, thr.oracle_limit);
        double ratio = scd > 0 ? static_cast<double>(members.size()) / scd : 0.0;
        rep.measured["s_c_d"] = scd;
        rep.measured["ratio"] = ratio;
        if (ratio > thr.ratio_bound)
            rep.fail("|H|/s_c_d ratio " + std::to_string(ratio) + " over bound");
    }

    // 3. unique leader entry point for every outside node
    for (size_t i = 0; i < finals.size(); ++i) {
        if (in_h[i]) continue;
        const NodeRegs& r = finals[i];
        auto it = idx.find(r.my_leader);
        if (r.my_leader == r.self || it == idx.end() ||
            finals[it->second].kind != NodeKind::Leader)
            rep.fail("outside node " + std::to_string(r.self) + " lacks a leader entry point");
    }

    // 4. diameter of H against the communication graph's
    if (h_diam >= 0 && graph.diameter > 0 &&
        h_diam > static_cast<int>(thr.diam_factor * graph.diameter))
        rep.fail("H diameter " + std::to_string(h_diam) + " over factor");

    rep.measured["members"] = static_cast<double>(members.size());
    rep.measured["internal_degree"] = max_internal;
    rep.measured["h_diameter"] = h_diam;
    rep.measured["g_diameter"] = graph.diameter;
    return rep;
}

PropertyReport check_tokens(const SimTrace& trace, const std::vector<Station>& stations,
                            const SinrParams& params, int per_box_bound) {
    PropertyReport rep;
    rep.property = "tokens";
    double r = transmission_range(params);
    double cell = pivotal_cell(r);
    std::map<Label, int> pos_of;
    for (size_t i = 0; i < stations.size(); ++i) pos_of[stations[i].label] = static_cast<int>(i);

    std::map<int, Label> origin;    // token -> origin leader
    std::map<int, Label> holder;    // token -> current holder
    double max_dist = 0.0;
    int max_per_box = 0;
    for (const TokenEvent& ev : trace.token_events()) {
        if (ev.from == 0) {  // creation
            origin[ev.token_id] = ev.to;
            holder[ev.token_id] = ev.to;
        } else {
            if (!ev.delivered) {
                rep.fail("token " + std::to_string(ev.token_id) + " hand-off " +
                         std::to_string(ev.from) + "->" + std::to_string(ev.to) +
                         " lost at round " + std::to_string(ev.round));
                holder.erase(ev.token_id);
                continue;
            }
            holder[ev.token_id] = ev.to;
            const Vec2& o = stations[pos_of.at(origin[ev.token_id])].pos;
            const Vec2& h = stations[pos_of.at(ev.to)].pos;
            double d = dist(o, h);
            max_dist = std::max(max_dist, d);
            if (d > 2.0 * r * (1.0 + 1e-9))
                rep.fail("token " + std::to_string(ev.token_id) + " reached " +
                         std::to_string(ev.to) + " at distance " + std::to_string(d) +
                         " from origin " + std::to_string(origin[ev.token_id]));
        }
        // simultaneous tokens per pivotal box
        std::map<std::pair<long, long>, int> per_box;
        for (auto& [tok, at] : holder) {
            GridBox b = grid_coord(stations[pos_of.at(at)].pos, cell);
            int c = ++per_box[{b.a, b.b}];
            max_per_box = std::max(max_per_box, c);
        }
    }
    if (max_per_box > per_box_bound)
        rep.fail("per-box simultaneous tokens " + std::to_string(max_per_box) + " over bound");
    rep.measured["max_token_distance_over_r"] = r > 0 ? max_dist / r : 0.0;
    rep.measured["max_tokens_per_box"] = max_per_box;
    return rep;
}

PropertyReport check_exchange_complete(const std::vector<NodeRegs>& finals,
                                       const std::vector<int>& participant_idx) {
    PropertyReport rep;
    rep.property = "exchange-complete";
    for (int i : participant_idx) {
        const NodeRegs& r = finals[i];
        std::set<Label> must;
        must.insert(r.injected_origins.begin(), r.injected_origins.end());
        must.insert(r.heard_exchange_origins.begin(), r.heard_exchange_origins.end());
        for (Label o : must)
            if (!r.transmitted_origins.count(o))
                rep.fail("participant " + std::to_string(r.self) + " never transmitted message " +
                         std::to_string(o));
    }
    return rep;
}

PropertyReport audit_rounds(ProtocolKind p, const RunResult& res, int n, int n_labels,
                            int max_degree) {
    PropertyReport rep;
    rep.property = "rounds";
    u64 budget = protocol_round_budget(p, n, n_labels, res.z, res.c1, max_degree);
    rep.measured["rounds_used"] = static_cast<double>(res.rounds_used);
    rep.measured["budget"] = static_cast<double>(budget);
    if (budget > 0) rep.measured["ratio"] = static_cast<double>(res.rounds_used) / budget;
    if (p == ProtocolKind::wakeup) {
        rep.measured["phases_to_all_awake"] = static_cast<double>(res.phases_to_all_awake);
        rep.measured["phase_budget"] = static_cast<double>(res.wakeup_phase_budget);
        if (res.phases_to_all_awake < 0 ||
            res.phases_to_all_awake > res.wakeup_phase_budget)
            rep.fail("wakeup exceeded its phase budget");
        return rep;
    }
    if (res.rounds_used > budget) rep.fail("measured rounds exceed the budget");
    return rep;
}

}  // namespace sinrlab
