#include "sinrlab/verify.hpp"

namespace sinrlab {

namespace {

bool connected_subset(const CommGraph& g, u64 mask) {
    int first = -1;
    for (int i = 0; i < g.n; ++i)
        if (mask >> i & 1) {
            first = i;
            break;
        }
    if (first < 0) return false;
    u64 seen = u64{1} << first;
    u64 frontier = seen;
    while (frontier) {
        u64 next = 0;
        for (int u = 0; u < g.n; ++u) {
            if (!(frontier >> u & 1)) continue;
            for (int v : g.adj[u])
                if ((mask >> v & 1) && !(seen >> v & 1)) next |= u64{1} << v;
        }
        seen |= next;
        frontier = next;
    }
    return seen == mask;
}

bool dominating_subset(const CommGraph& g, u64 mask) {
    for (int v = 0; v < g.n; ++v) {
        if (mask >> v & 1) continue;
        bool dom = false;
        for (int u : g.adj[v]) dom |= (mask >> u & 1) != 0;
        if (!dom) return false;
    }
    return true;
}

}  // namespace

int min_cds_oracle(const CommGraph& graph, int limit) {
    if (graph.n > limit) throw BudgetExceeded("min_cds_oracle: graph too large for exact search");
    if (graph.n == 0) return 0;
    if (graph.n == 1) return 1;
    for (int size = 1; size <= graph.n; ++size) {
        // enumerate subsets of the given size
        u64 mask = (u64{1} << size) - 1;
        u64 top = u64{1} << graph.n;
        while (mask < top) {
            if (dominating_subset(graph, mask) && connected_subset(graph, mask)) return size;
            // next subset of equal popcount (Gosper's hack)
            u64 c = mask & -mask;
            u64 r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    return graph.n;
}

}  // namespace sinrlab
