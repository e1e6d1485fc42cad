#pragma once

#include <string>

#include "sinrlab/comm_graph.hpp"
#include "sinrlab/ssf.hpp"

namespace sinrlab {

// A fully reproducible experiment input: physics constants, the label range,
// the station placement, and the schedule configuration.
struct Scenario {
    std::string id;
    SinrParams params = SinrParams::defaults();
    int n = 0;         // upper bound fed to the protocols
    int n_labels = 0;  // N
    std::vector<Station> stations;
    u64 seed = 0;
    DilutionConfig dilution{45, 2};  // desk-scale density default
    SsfStrategy ssf_strategy = SsfStrategy::greedy;

    // Effective schedule selectivity and the family it produces.
    int effective_c() const { return dilution.effective_c(n_labels); }
    SsfFamily build_family() const;

    std::string save() const;  // self-describing key/value document
    static Scenario load(const std::string& text);
};

struct GenParams {
    int n = 8;
    int k_density = 45;
    int d_silence = 2;
    SsfStrategy strategy = SsfStrategy::greedy;
    SinrParams params = SinrParams::defaults();
    int n_labels = 0;       // 0 = 2n
    double spacing = -1.0;  // line/grid spacing; -1 = exactly the range
    int awake_count = -1;   // -1 = all awake; otherwise the first k of a seeded choice
    int snowball_slots = 3;
    int retry_budget = 2000;
};

Scenario generate_random_geometric(const GenParams& p, u64 seed);
Scenario generate_line(const GenParams& p, u64 seed);
Scenario generate_grid(const GenParams& p, u64 seed);
// Geometrically growing clusters chained within range: wake-group sizes
// 1, 2, 4, ... across `snowball_slots` groups.
Scenario generate_snowball(const GenParams& p, u64 seed);
// k stations in each of two adjacent pivotal boxes at their closest corners.
Scenario generate_two_box(const GenParams& p, u64 seed);
// Connected cluster of pivotal boxes inside a (2d+1) x (2d+1) window with at
// most k stations per box: every station then gets a globally isolated round
// out of one family execution, the setting the dilution guarantee covers.
Scenario generate_dilution_cluster(const GenParams& p, u64 seed);

Scenario generate(const std::string& kind, const GenParams& p, u64 seed);

// Smallest silence distance d in [1,8] for which the adversarial corner
// placement still delivers under full far interference; throws
// CalibrationFailed when none suffices.
DilutionConfig calibrate_dilution(const SinrParams& params, int k_density);

}  // namespace sinrlab
