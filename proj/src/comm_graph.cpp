#include "sinrlab/comm_graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace sinrlab {

bool CommGraph::has_edge(int u, int v) const {
    return std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end();
}

std::vector<int> CommGraph::bfs_hops(int src) const {
    std::vector<int> hops(n, -1);
    std::deque<int> q{src};
    hops[src] = 0;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int v : adj[u])
            if (hops[v] < 0) {
                hops[v] = hops[u] + 1;
                q.push_back(v);
            }
    }
    return hops;
}

int CommGraph::induced_diameter(const std::vector<int>& members) const {
    if (members.size() <= 1) return 0;
    std::vector<char> in(n, 0);
    for (int m : members) in[m] = 1;
    int diam = 0;
    for (int src : members) {
        std::vector<int> hops(n, -1);
        std::deque<int> q{src};
        hops[src] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (int v : adj[u])
                if (in[v] && hops[v] < 0) {
                    hops[v] = hops[u] + 1;
                    q.push_back(v);
                }
        }
        for (int m : members) {
            if (hops[m] < 0) return -1;
            diam = std::max(diam, hops[m]);
        }
    }
    return diam;
}

CommGraph build_comm_graph(const std::vector<Station>& stations, const SinrParams& params) {
    CommGraph g;
    g.n = static_cast<int>(stations.size());
    g.labels.reserve(g.n);
    std::set<Label> seen;
    for (const Station& s : stations) {
        if (!seen.insert(s.label).second)
            throw std::invalid_argument("comm graph: duplicate station label");
        g.labels.push_back(s.label);
    }
    double r = transmission_range(params);
    g.adj.assign(g.n, {});
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v) {
            double d = dist(stations[u].pos, stations[v].pos);
            if (d <= 0.0) throw std::invalid_argument("comm graph: coincident stations");
            if (d <= r) {
                g.adj[u].push_back(v);
                g.adj[v].push_back(u);
            }
        }
    for (auto& a : g.adj) {
        std::sort(a.begin(), a.end());
        g.max_degree = std::max(g.max_degree, static_cast<int>(a.size()));
    }
    g.connected = true;
    g.diameter = 0;
    if (g.n > 0) {
        auto hops = g.bfs_hops(0);
        for (int h : hops) {
            if (h < 0) g.connected = false;
        }
        if (g.connected) {
            for (int src = 0; src < g.n; ++src) {
                auto hs = g.bfs_hops(src);
                for (int h : hs) g.diameter = std::max(g.diameter, h);
            }
        }
    }
    return g;
}

}  // namespace sinrlab
