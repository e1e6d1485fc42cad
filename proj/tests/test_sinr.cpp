#include <cmath>
#include <random>

#include "doctest.h"
#include "sinrlab/comm_graph.hpp"
#include "sinrlab/grid.hpp"

using namespace sinrlab;

namespace {
Station at(Label l, double x, double y) { return Station{l, {x, y}, true}; }
}  // namespace

TEST_CASE("sinr quotient matches direct evaluation") {
    SinrParams p(3.0, 1.0, 0.125, 1.0, 1.0);
    Station s = at(1, 0, 0), v = at(2, 1, 0);
    std::vector<Station> t{s};
    CHECK(sinr_ratio(s, v, t, p) == doctest::Approx(8.0));

    // two transmitters equidistant from the listener, negligible noise
    SinrParams p2(3.0, 1.0, 1e-300, 1.0, 1.0);
    Station a = at(1, -1, 0), b = at(3, 1, 0);
    Station mid = at(2, 0, 0);
    std::vector<Station> both{a, b};
    CHECK(sinr_ratio(a, mid, both, p2) == doctest::Approx(1.0));
    CHECK(sinr_ratio(b, mid, both, p2) == doctest::Approx(1.0));
}

TEST_CASE("sinr with interferer at equal distance") {
    SinrParams p(3.0, 1.0, 0.125, 1.0, 1.0);
    Station s = at(1, 0, 0), i = at(3, 4, 0), v = at(2, 2, 0);
    std::vector<Station> t{s, i};
    CHECK(sinr_ratio(s, v, t, p) == doctest::Approx(0.5));
}

TEST_CASE("sinr preconditions") {
    SinrParams p(3.0, 1.0, 0.125, 1.0, 1.0);
    Station s = at(1, 0, 0), v = at(2, 0, 0);  // coincident
    std::vector<Station> t{s};
    CHECK_THROWS_AS(sinr_ratio(s, v, t, p), std::invalid_argument);
    Station w = at(2, 1, 0);
    std::vector<Station> t2{s, w};
    CHECK_THROWS_AS(sinr_ratio(s, w, t2, p), std::invalid_argument);
}

TEST_CASE("transmission range closed form") {
    SinrParams p(3.0, 1.0, 0.125, 1.0, 1.0);
    CHECK(transmission_range(p) == doctest::Approx(std::pow(4.0, 1.0 / 3.0)));
    SinrParams unit(3.0, 1.0, 0.25, 1.0, 0.5);
    CHECK(transmission_range(unit) == doctest::Approx(1.0));
    CHECK_THROWS_AS(SinrParams(3.0, 1.0, 0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SinrParams(2.0, 1.0, 0.1, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("reception at and beyond the range boundary") {
    SinrParams p = SinrParams::defaults();  // r = 1 exactly
    double r = transmission_range(p);
    CHECK(r == doctest::Approx(1.0));
    Station s = at(1, 0, 0);
    Station close = at(2, r, 0);
    Station far = at(3, r * 1.0001, 0);
    std::vector<Station> t{s};
    CHECK(receives(s, close, t, p));
    CHECK_FALSE(receives(s, far, t, p));
}

TEST_CASE("two simultaneous equidistant senders fail at the midpoint") {
    SinrParams p(3.0, 1.0, 0.1, 1.0, 1.0);
    Station a = at(1, -0.5, 0), b = at(3, 0.5, 0), v = at(2, 0, 0);
    std::vector<Station> t{a, b};
    CHECK_FALSE(receives(a, v, t, p));
    CHECK_FALSE(receives(b, v, t, p));
}

TEST_CASE("at most one sender can be received per listener") {
    std::mt19937_64 rng(7);
    SinrParams p = SinrParams::defaults();
    for (int trial = 0; trial < 200; ++trial) {
        int n = 3 + static_cast<int>(rng() % 5);
        std::vector<Station> st;
        for (int i = 0; i < n; ++i)
            st.push_back(at(i + 1, uniform_real(rng, 0.0, 2.0), uniform_real(rng, 0.0, 2.0)));
        bool ok = true;
        for (int i = 0; ok && i < n; ++i)
            for (int j = i + 1; ok && j < n; ++j)
                if (dist(st[i].pos, st[j].pos) < 1e-6) ok = false;
        if (!ok) continue;
        int k = 1 + static_cast<int>(rng() % (n - 1));
        std::vector<Station> txs(st.begin(), st.begin() + k);
        for (int v = k; v < n; ++v) {
            int receivable = 0;
            for (int u = 0; u < k; ++u)
                if (receives(st[u], st[v], txs, p)) ++receivable;
            CHECK(receivable <= 1);
        }
    }
}

TEST_CASE("range consistency against the distance predicate") {
    SinrParams p(2.5, 1.5, 0.3, 0.5, 2.0);
    double r = transmission_range(p);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        double d = uniform_real(rng, 0.05 * r, 2.0 * r);
        if (std::fabs(d - r) < 1e-9 * r) continue;
        Station s = at(1, 0, 0), v = at(2, d, 0);
        std::vector<Station> t{s};
        CHECK(receives(s, v, t, p) == (d <= r));
    }
}

TEST_CASE("stations in one pivotal box are always in range") {
    SinrParams p = SinrParams::defaults();
    double cell = pivotal_cell(transmission_range(p));
    std::mt19937_64 rng(13);
    for (int i = 0; i < 500; ++i) {
        Station s = at(1, uniform_real(rng, 0.0, cell), uniform_real(rng, 0.0, cell));
        Station v = at(2, uniform_real(rng, 0.0, cell), uniform_real(rng, 0.0, cell));
        if (dist(s.pos, v.pos) < 1e-9) continue;
        std::vector<Station> t{s};
        CHECK(receives(s, v, t, p));
    }
}

TEST_CASE("communication graph construction") {
    SinrParams p = SinrParams::defaults();
    double r = transmission_range(p);

    auto g1 = build_comm_graph({at(1, 0, 0)}, p);
    CHECK(g1.connected);
    CHECK(g1.diameter == 0);
    CHECK(g1.max_degree == 0);

    auto g2 = build_comm_graph({at(1, 0, 0), at(2, r, 0)}, p);
    CHECK(g2.connected);
    CHECK(g2.diameter == 1);
    CHECK(g2.max_degree == 1);

    auto g3 = build_comm_graph({at(1, 0, 0), at(2, r, 0), at(3, 2 * r, 0)}, p);
    CHECK(g3.connected);
    CHECK(g3.diameter == 2);
    CHECK(g3.max_degree == 2);
    CHECK_FALSE(g3.has_edge(0, 2));

    auto g4 = build_comm_graph({at(1, 0, 0), at(2, 3 * r, 0)}, p);
    CHECK_FALSE(g4.connected);

    CHECK_THROWS_AS(build_comm_graph({at(1, 0, 0), at(1, 1, 0)}, p), std::invalid_argument);
}
