#include <algorithm>
#include <random>
#include <set>

#include "sinrlab/grid.hpp"
#include "sinrlab/scenario.hpp"

namespace sinrlab {

namespace {

// Labels drawn at random from [1, N], distinct, deterministic per seed.
std::vector<Label> draw_labels(std::mt19937_64& rng, int count, int n_labels) {
    std::vector<Label> all(n_labels);
    for (int i = 0; i < n_labels; ++i) all[i] = i + 1;
    for (int i = 0; i < count; ++i) {
        int j = i + static_cast<int>(uniform_u64(rng, static_cast<u64>(n_labels - i)));
        std::swap(all[i], all[j]);
    }
    std::vector<Label> out(all.begin(), all.begin() + count);
    std::sort(out.begin(), out.end());
    return out;
}

void assign_awake(std::mt19937_64& rng, std::vector<Station>& stations, int awake_count) {
    if (awake_count < 0 || awake_count >= static_cast<int>(stations.size())) return;
    std::vector<int> order(stations.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    for (size_t i = 0; i < order.size(); ++i) {
        size_t j = i + static_cast<size_t>(uniform_u64(rng, order.size() - i));
        std::swap(order[i], order[j]);
    }
    for (auto& s : stations) s.initially_awake = false;
    for (int i = 0; i < awake_count; ++i) stations[order[i]].initially_awake = true;
}

Scenario finish(const GenParams& p, u64 seed, std::vector<Station> stations,
                const std::string& kind) {
    Scenario sc;
    sc.id = kind + "-n" + std::to_string(stations.size()) + "-s" + std::to_string(seed);
    sc.params = p.params;
    sc.n = static_cast<int>(stations.size());
    sc.n_labels = p.n_labels > 0 ? p.n_labels : 2 * sc.n;
    sc.seed = seed;
    sc.dilution = DilutionConfig{p.k_density, p.d_silence};
    sc.ssf_strategy = p.strategy;
    sc.stations = std::move(stations);
    return sc;
}

// Distances within 1e-6*r of the range boundary (other than exact hits laid
// out by the structured generators) make the in-range predicate fragile.
bool near_range_boundary(const std::vector<Station>& st, double r) {
    for (size_t i = 0; i < st.size(); ++i)
        for (size_t j = i + 1; j < st.size(); ++j) {
            double d = dist(st[i].pos, st[j].pos);
            if (d != r && std::fabs(d - r) < 1e-6 * r) return true;
            if (d < 1e-3 * r) return true;  // also reject near-coincident points
        }
    return false;
}

bool snapped_off_cell_edges(std::vector<Station>& st, double cell) {
    for (Station& s : st) {
        for (double* c : {&s.pos.x, &s.pos.y}) {
            double f = *c / cell - std::floor(*c / cell);
            if (f < 1e-6) *c += 1e-5 * cell;
            else if (f > 1.0 - 1e-6) *c -= 1e-5 * cell;
        }
    }
    return true;
}

}  // namespace

Scenario generate_random_geometric(const GenParams& p, u64 seed) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    double r = transmission_range(p.params);
    double side = std::max(1.0, std::sqrt(static_cast<double>(p.n))) * 0.7 * r;
    int n_labels = p.n_labels > 0 ? p.n_labels : 2 * p.n;
    for (int attempt = 0; attempt < p.retry_budget; ++attempt) {
        auto labels = draw_labels(rng, p.n, n_labels);
        std::vector<Station> st(p.n);
        for (int i = 0; i < p.n; ++i) {
            st[i].label = labels[i];
            st[i].pos = {uniform_real(rng, 0.0, side), uniform_real(rng, 0.0, side)};
        }
        snapped_off_cell_edges(st, pivotal_cell(r));
        if (near_range_boundary(st, r)) continue;
        if (!build_comm_graph(st, p.params).connected) continue;
        assign_awake(rng, st, p.awake_count);
        return finish(p, seed, std::move(st), "random");
    }
    throw std::runtime_error("generate_random_geometric: no connected placement within budget");
}

Scenario generate_line(const GenParams& p, u64 seed) {
    std::mt19937_64 rng(seed ^ 0x2545f4914f6cdd1dull);
    double r = transmission_range(p.params);
    double spacing = p.spacing > 0 ? p.spacing : r;
    int n_labels = p.n_labels > 0 ? p.n_labels : 2 * p.n;
    auto labels = draw_labels(rng, p.n, n_labels);
    std::vector<Station> st(p.n);
    for (int i = 0; i < p.n; ++i) {
        st[i].label = labels[i];
        st[i].pos = {spacing * i, 0.0};
    }
    assign_awake(rng, st, p.awake_count);
    return finish(p, seed, std::move(st), "line");
}

Scenario generate_grid(const GenParams& p, u64 seed) {
    std::mt19937_64 rng(seed ^ 0x6a09e667f3bcc909ull);
    double r = transmission_range(p.params);
    double spacing = p.spacing > 0 ? p.spacing : r;
    int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(p.n))));
    int n_labels = p.n_labels > 0 ? p.n_labels : 2 * p.n;
    auto labels = draw_labels(rng, p.n, n_labels);
    std::vector<Station> st(p.n);
    for (int i = 0; i < p.n; ++i) {
        st[i].label = labels[i];
        st[i].pos = {spacing * (i % cols), spacing * (i / cols)};
    }
    assign_awake(rng, st, p.awake_count);
    return finish(p, seed, std::move(st), "grid");
}

Scenario generate_snowball(const GenParams& p, u64 seed) {
    std::mt19937_64 rng(seed ^ 0xbb67ae8584caa73bull);
    double r = transmission_range(p.params);
    int slots = std::max(1, p.snowball_slots);
    int total = (1 << slots) - 1;
    int n_labels = p.n_labels > 0 ? p.n_labels : 2 * total;
    auto labels = draw_labels(rng, total, n_labels);
    for (int attempt = 0; attempt < p.retry_budget; ++attempt) {
        std::vector<Station> st;
        int li = 0;
        double cx = 0.0;
        for (int g = 0; g < slots; ++g) {
            int size = 1 << g;
            for (int k = 0; k < size; ++k) {
                Station s;
                s.label = labels[li++];
                s.pos = {cx + uniform_real(rng, -0.2 * r, 0.2 * r),
                         uniform_real(rng, -0.2 * r, 0.2 * r)};
                s.initially_awake = false;
                st.push_back(s);
            }
            cx += 0.9 * r;  // chain the next cluster within range of this one
        }
        st[0].initially_awake = true;
        snapped_off_cell_edges(st, pivotal_cell(r));
        if (near_range_boundary(st, r)) continue;
        if (!build_comm_graph(st, p.params).connected) continue;
        return finish(p, seed, std::move(st), "snowball");
    }
    throw std::runtime_error("generate_snowball: no connected placement within budget");
}

Scenario generate_two_box(const GenParams& p, u64 seed) {
    std::mt19937_64 rng(seed ^ 0x3c6ef372fe94f82bull);
    double r = transmission_range(p.params);
    double cell = pivotal_cell(r);
    int k = std::max(1, p.k_density);
    int n_labels = p.n_labels > 0 ? p.n_labels : 4 * k;
    auto labels = draw_labels(rng, 2 * k, n_labels);
    for (int attempt = 0; attempt < p.retry_budget; ++attempt) {
        std::vector<Station> st;
        for (int b = 0; b < 2; ++b) {
            // stations clustered near the corners that face the other box
            double bx = b == 0 ? cell * 0.92 : cell * 1.08;
            for (int i = 0; i < k; ++i) {
                Station s;
                s.label = labels[b * k + i];
                s.pos = {bx + uniform_real(rng, -0.05 * cell, 0.05 * cell),
                         cell * 0.9 + uniform_real(rng, -0.08 * cell, 0.08 * cell)};
                st.push_back(s);
            }
        }
        snapped_off_cell_edges(st, cell);
        if (near_range_boundary(st, r)) continue;
        if (!build_comm_graph(st, p.params).connected) continue;
        return finish(p, seed, std::move(st), "two-box");
    }
    throw std::runtime_error("generate_two_box: no valid placement within budget");
}

Scenario generate_dilution_cluster(const GenParams& p, u64 seed) {
    std::mt19937_64 rng(seed ^ 0xa54ff53a5f1d36f1ull);
    double r = transmission_range(p.params);
    double cell = pivotal_cell(r);
    int k = std::max(1, p.k_density);
    int d = std::max(1, p.d_silence);
    // Boxes within a (d+1)-sided window are pairwise inside the silence
    // distance, so every station is isolated globally in some round of one
    // family execution.
    int window = d + 1;
    int max_boxes = window * window;
    int want = std::min(p.n, k * max_boxes);
    int n_labels = p.n_labels > 0 ? p.n_labels : 8 * want;
    auto labels = draw_labels(rng, want, n_labels);
    for (int attempt = 0; attempt < p.retry_budget; ++attempt) {
        // grow a connected set of boxes inside the window by random adjacency
        std::vector<std::pair<int, int>> boxes{{window / 2, window / 2}};
        std::set<std::pair<int, int>> used{boxes[0]};
        int need_boxes = (want + k - 1) / k;
        int guard = 0;
        while (static_cast<int>(boxes.size()) < need_boxes && guard++ < 10000) {
            auto [bx, by] = boxes[uniform_u64(rng, boxes.size())];
            int dir = static_cast<int>(uniform_u64(rng, 4));
            int nx = bx + (dir == 0) - (dir == 1);
            int ny = by + (dir == 2) - (dir == 3);
            if (nx < 0 || ny < 0 || nx >= window || ny >= window) continue;
            if (!used.insert({nx, ny}).second) continue;
            boxes.emplace_back(nx, ny);
        }
        if (static_cast<int>(boxes.size()) < need_boxes) continue;
        std::vector<Station> st;
        int li = 0;
        for (int i = 0; i < want; ++i) {
            auto [bx, by] = boxes[i % boxes.size()];
            Station s;
            s.label = labels[li++];
            // near the box centre: adjacent-box stations stay within range
            s.pos = {(bx + 0.5) * cell + uniform_real(rng, -0.15 * cell, 0.15 * cell),
                     (by + 0.5) * cell + uniform_real(rng, -0.15 * cell, 0.15 * cell)};
            st.push_back(s);
        }
        snapped_off_cell_edges(st, cell);
        if (near_range_boundary(st, r)) continue;
        if (!build_comm_graph(st, p.params).connected) continue;
        assign_awake(rng, st, p.awake_count);
        Scenario sc = finish(p, seed, std::move(st), "cluster");
        sc.n_labels = n_labels;
        sc.dilution = DilutionConfig{k, d};
        return sc;
    }
    throw std::runtime_error("generate_dilution_cluster: no connected placement within budget");
}

Scenario generate(const std::string& kind, const GenParams& p, u64 seed) {
    if (kind == "random_geometric" || kind == "random") return generate_random_geometric(p, seed);
    if (kind == "line") return generate_line(p, seed);
    if (kind == "grid") return generate_grid(p, seed);
    if (kind == "snowball") return generate_snowball(p, seed);
    if (kind == "two_box" || kind == "two-box") return generate_two_box(p, seed);
    if (kind == "cluster") return generate_dilution_cluster(p, seed);
    throw std::invalid_argument("generate: unknown scenario kind " + kind);
}

}  // namespace sinrlab
