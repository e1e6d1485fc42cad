#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sinrlab/common.hpp"

namespace sinrlab {

enum class SsfStrategy { greedy, randomized_verified, algebraic };

const char* to_string(SsfStrategy s);
std::optional<SsfStrategy> ssf_strategy_from(const std::string& name);

// Ordered family F_1..F_z of subsets of [1, N] with the strong-selection
// property for subsets up to size c. Doubles as a transmission schedule:
// step i activates exactly the labels of F_{i+1}.
class SsfFamily {
  public:
    SsfFamily() = default;
    SsfFamily(int n_labels, int selectivity);

    int n_labels() const { return n_labels_; }
    int selectivity() const { return selectivity_; }
    int length() const { return static_cast<int>(sets_.size()); }

    void add_set(const std::vector<Label>& labels);
    bool contains(int set_index, Label label) const;
    std::vector<Label> set_labels(int set_index) const;
    const std::vector<u64>& set_blocks(int set_index) const { return sets_[set_index]; }

    // ceil(z / ceil(log2 N)): the per-family constant fed into every protocol
    // timing formula.
    int c1() const;

    std::string serialize() const;                 // header "N c z", one set per line
    static SsfFamily parse(const std::string& text);

    bool operator==(const SsfFamily& o) const {
        return n_labels_ == o.n_labels_ && selectivity_ == o.selectivity_ && sets_ == o.sets_;
    }

  private:
    int n_labels_ = 0;
    int selectivity_ = 0;
    int blocks_ = 0;
    std::vector<std::vector<u64>> sets_;
};

// True iff `label` is active at schedule position `step` (0-based). Throws
// std::out_of_range for a bad step or label.
bool schedule_active(const SsfFamily& family, Label label, int step);

struct SsfWitness {
    std::vector<Label> subset;  // the S that defeats the family
    Label unselected = 0;       // the x no set isolates
};

struct SsfVerifyResult {
    bool pass = false;
    std::optional<SsfWitness> witness;
};

enum class SsfVerifyMode { exhaustive, sampled };

// Exhaustive mode enumerates every nonempty S with |S| <= c (requires the
// subset count to fit the budget, default caps roughly at N=64, c=4);
// sampled mode draws `trials` random subsets.
SsfVerifyResult verify_ssf(const SsfFamily& family, SsfVerifyMode mode, int trials = 20000,
                           u64 seed = 1, u64 subset_budget = 3'000'000);

struct SsfBuildConfig {
    u64 seed = 1;
    int c1_budget = 12;      // length bound: z <= c1_budget * c^2 * ceil(log2 N)
    int retries = 10;        // randomized strategy redraw budget
    u64 greedy_grow_budget = 700'000;  // above this many requirements, greedy skips growing
};

SsfFamily build_ssf(int n_labels, int selectivity, SsfStrategy strategy,
                    const SsfBuildConfig& cfg = {});

// Dilution constants: selectivity c = k^2 (2d+1)^2 from the per-box density
// bound k and the silence box-distance d.
struct DilutionConfig {
    int k_density = 1000;
    int d_silence = 2;

    long c_derived() const {
        long k = k_density, d = d_silence;
        return k * k * (2 * d + 1) * (2 * d + 1);
    }
    // Selectivity actually used for schedules: an (N,c)-ssf with c >= N is
    // equivalent to an (N,N)-ssf.
    int effective_c(int n_labels) const {
        long c = c_derived();
        return c >= n_labels ? n_labels : static_cast<int>(c);
    }
};

}  // namespace sinrlab
