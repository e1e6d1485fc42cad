#include "sinrlab/ssf.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace sinrlab {

const char* to_string(SsfStrategy s) {
    switch (s) {
        case SsfStrategy::greedy: return "greedy";
        case SsfStrategy::randomized_verified: return "randomized";
        case SsfStrategy::algebraic: return "algebraic";
    }
    return "?";
}

std::optional<SsfStrategy> ssf_strategy_from(const std::string& name) {
    if (name == "greedy") return SsfStrategy::greedy;
    if (name == "randomized" || name == "randomized_verified") return SsfStrategy::randomized_verified;
    if (name == "algebraic") return SsfStrategy::algebraic;
    return std::nullopt;
}

SsfFamily::SsfFamily(int n_labels, int selectivity)
    : n_labels_(n_labels), selectivity_(selectivity), blocks_((n_labels + 63) / 64) {
    if (n_labels < 1) throw std::invalid_argument("ssf: N must be >= 1");
    if (selectivity < 1 || selectivity > n_labels)
        throw std::invalid_argument("ssf: infeasible selectivity (need 1 <= c <= N)");
}

void SsfFamily::add_set(const std::vector<Label>& labels) {
    std::vector<u64> blocks(blocks_, 0);
    for (Label l : labels) {
        if (l < 1 || l > n_labels_) throw std::invalid_argument("ssf: label out of range");
        blocks[(l - 1) / 64] |= u64{1} << ((l - 1) % 64);
    }
    sets_.push_back(std::move(blocks));
}

bool SsfFamily::contains(int set_index, Label label) const {
    return (sets_[set_index][(label - 1) / 64] >> ((label - 1) % 64)) & 1;
}

std::vector<Label> SsfFamily::set_labels(int set_index) const {
    std::vector<Label> out;
    for (Label l = 1; l <= n_labels_; ++l)
        if (contains(set_index, l)) out.push_back(l);
    return out;
}

int SsfFamily::c1() const {
    int L = label_bits(n_labels_);
    return (length() + L - 1) / L;
}

std::string SsfFamily::serialize() const {
    std::ostringstream os;
    os << n_labels_ << ' ' << selectivity_ << ' ' << length() << '\n';
    for (int i = 0; i < length(); ++i) {
        auto labels = set_labels(i);
        for (size_t j = 0; j < labels.size(); ++j) {
            if (j) os << ' ';
            os << labels[j];
        }
        os << '\n';
    }
    return os.str();
}

SsfFamily SsfFamily::parse(const std::string& text) {
    std::istringstream is(text);
    std::string header;
    if (!std::getline(is, header)) throw std::invalid_argument("ssf parse: empty input");
    std::istringstream hs(header);
    int n = 0, c = 0, z = 0;
    if (!(hs >> n >> c >> z)) throw std::invalid_argument("ssf parse: bad header");
    SsfFamily f(n, c);
    for (int i = 0; i < z; ++i) {
        std::string line;
        if (!std::getline(is, line)) throw std::invalid_argument("ssf parse: truncated family");
        std::istringstream ls(line);
        std::vector<Label> labels;
        Label l;
        while (ls >> l) labels.push_back(l);
        f.add_set(labels);
    }
    return f;
}

bool schedule_active(const SsfFamily& family, Label label, int step) {
    if (step < 0 || step >= family.length()) throw std::out_of_range("schedule_active: step out of range");
    if (label < 1 || label > family.n_labels()) throw std::out_of_range("schedule_active: label out of range");
    return family.contains(step, label);
}

namespace {

// One strong-selection requirement: subset S (as blocks) must have element x
// isolated by some family set.
struct Requirement {
    std::vector<u64> subset;
    Label x;
};

u64 count_subsets_upto(int n, int c) {
    // sum_{j=1..c} C(n, j), saturating
    u64 total = 0;
    u64 binom = 1;
    for (int j = 1; j <= c; ++j) {
        binom = binom * static_cast<u64>(n - j + 1) / static_cast<u64>(j);
        if (binom > (u64{1} << 62) - total) return u64{1} << 62;
        total += binom;
    }
    return total;
}

bool isolates(const std::vector<u64>& set_blocks, const std::vector<u64>& subset, Label x) {
    // set ∩ subset == {x}
    size_t xb = static_cast<size_t>((x - 1) / 64);
    u64 xbit = u64{1} << ((x - 1) % 64);
    for (size_t b = 0; b < subset.size(); ++b) {
        u64 inter = set_blocks[b] & subset[b];
        if (b == xb) {
            if (inter != xbit) return false;
        } else if (inter != 0) {
            return false;
        }
    }
    return true;
}

bool family_selects(const SsfFamily& f, const std::vector<u64>& subset, Label x) {
    for (int i = 0; i < f.length(); ++i)
        if (isolates(f.set_blocks(i), subset, x)) return true;
    return false;
}

// Enumerate nonempty subsets of [1,N] with |S| <= c in canonical order
// (size ascending, then lexicographic) and call fn(subset_blocks, members).
// fn returns false to stop.
template <class Fn>
void for_each_subset(int n, int c, Fn&& fn) {
    int blocks = (n + 63) / 64;
    std::vector<Label> comb;
    std::vector<u64> mask(blocks, 0);
    for (int size = 1; size <= c; ++size) {
        comb.assign(size, 0);
        for (int i = 0; i < size; ++i) comb[i] = i + 1;
        for (;;) {
            std::fill(mask.begin(), mask.end(), 0);
            for (Label l : comb) mask[(l - 1) / 64] |= u64{1} << ((l - 1) % 64);
            if (!fn(mask, comb)) return;
            // next combination
            int i = size - 1;
            while (i >= 0 && comb[i] == n - (size - 1 - i)) --i;
            if (i < 0) break;
            ++comb[i];
            for (int j = i + 1; j < size; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
}

}  // namespace

SsfVerifyResult verify_ssf(const SsfFamily& family, SsfVerifyMode mode, int trials, u64 seed,
                           u64 subset_budget) {
    SsfVerifyResult res;
    int n = family.n_labels();
    int c = family.selectivity();
    if (mode == SsfVerifyMode::exhaustive) {
        if (count_subsets_upto(n, c) > subset_budget)
            throw BudgetExceeded("verify_ssf: exhaustive subset count over budget");
        bool ok = true;
        for_each_subset(n, c, [&](const std::vector<u64>& mask, const std::vector<Label>& members) {
            for (Label x : members) {
                if (!family_selects(family, mask, x)) {
                    res.witness = SsfWitness{members, x};
                    ok = false;
                    return false;
                }
            }
            return true;
        });
        res.pass = ok;
        return res;
    }
    std::mt19937_64 rng(seed);
    int blocks = (n + 63) / 64;
    for (int t = 0; t < trials; ++t) {
        int size = uniform_int(rng, 1, c);
        // Sample `size` distinct labels.
        std::vector<Label> members;
        std::vector<u64> mask(blocks, 0);
        while (static_cast<int>(members.size()) < size) {
            Label l = uniform_int(rng, 1, n);
            u64 bit = u64{1} << ((l - 1) % 64);
            if (mask[(l - 1) / 64] & bit) continue;
            mask[(l - 1) / 64] |= bit;
            members.push_back(l);
        }
        std::sort(members.begin(), members.end());
        for (Label x : members) {
            if (!family_selects(family, mask, x)) {
                res.witness = SsfWitness{members, x};
                res.pass = false;
                return res;
            }
        }
    }
    res.pass = true;
    return res;
}

namespace {

SsfFamily build_singletons(int n) {
    SsfFamily f(n, n);
    for (Label l = 1; l <= n; ++l) f.add_set({l});
    return f;
}

SsfFamily build_greedy(int n, int c, const SsfBuildConfig& cfg) {
    if (c == n) return build_singletons(n);  // exact minimal answer

    u64 req_count_bound = count_subsets_upto(n, c) * static_cast<u64>(c);
    bool allow_grow = req_count_bound <= cfg.greedy_grow_budget;
    if (count_subsets_upto(n, c) > 20'000'000)
        throw BudgetExceeded("build_ssf greedy: requirement enumeration infeasible, use algebraic");

    std::vector<Requirement> reqs;
    for_each_subset(n, c, [&](const std::vector<u64>& mask, const std::vector<Label>& members) {
        for (Label x : members) reqs.push_back({mask, x});
        return true;
    });
    std::vector<char> satisfied(reqs.size(), 0);
    // Bucket requirement indices by their x for cheap grow scoring.
    std::vector<std::vector<size_t>> by_x(n + 1);
    for (size_t i = 0; i < reqs.size(); ++i) by_x[reqs[i].x].push_back(i);

    int blocks = (n + 63) / 64;
    auto in_set = [&](const std::vector<u64>& set, Label l) {
        return (set[(l - 1) / 64] >> ((l - 1) % 64)) & 1;
    };
    auto count_covered = [&](const std::vector<u64>& set) {
        u64 covered = 0;
        for (Label l = 1; l <= n; ++l) {
            if (!in_set(set, l)) continue;
            for (size_t i : by_x[l])
                if (!satisfied[i] && isolates(set, reqs[i].subset, reqs[i].x)) ++covered;
        }
        return covered;
    };

    SsfFamily family(n, c);
    size_t cursor = 0;
    while (true) {
        while (cursor < reqs.size() && satisfied[cursor]) ++cursor;
        if (cursor == reqs.size()) break;
        std::vector<u64> set(blocks, 0);
        Label x = reqs[cursor].x;
        set[(x - 1) / 64] |= u64{1} << ((x - 1) % 64);
        if (allow_grow) {
            u64 best = count_covered(set);
            for (;;) {
                Label best_l = 0;
                for (Label l = 1; l <= n; ++l) {
                    if (in_set(set, l)) continue;
                    set[(l - 1) / 64] |= u64{1} << ((l - 1) % 64);
                    u64 score = count_covered(set);
                    set[(l - 1) / 64] &= ~(u64{1} << ((l - 1) % 64));
                    if (score > best) {
                        best = score;
                        best_l = l;
                    }
                }
                if (best_l == 0) break;
                set[(best_l - 1) / 64] |= u64{1} << ((best_l - 1) % 64);
            }
        }
        std::vector<Label> labels;
        for (Label l = 1; l <= n; ++l)
            if (in_set(set, l)) labels.push_back(l);
        family.add_set(labels);
        for (Label l : labels)
            for (size_t i : by_x[l])
                if (!satisfied[i] && isolates(set, reqs[i].subset, reqs[i].x)) satisfied[i] = 1;
    }
    return family;
}

SsfFamily build_randomized(int n, int c, const SsfBuildConfig& cfg) {
    if (c == n) return build_singletons(n);
    std::mt19937_64 rng(cfg.seed);
    int L = label_bits(n);
    u64 verify_budget_subsets = 3'000'000;
    bool exhaustive = count_subsets_upto(n, c) <= verify_budget_subsets;
    double zf = std::max(4.0 * c * c * L, 2.0 * n);
    for (int attempt = 0; attempt < cfg.retries; ++attempt) {
        int z = static_cast<int>(zf);
        long cap = static_cast<long>(cfg.c1_budget) * c * c * L;
        if (z > cap) z = static_cast<int>(cap);
        SsfFamily f(n, c);
        for (int i = 0; i < z; ++i) {
            std::vector<Label> labels;
            for (Label l = 1; l <= n; ++l)
                if (uniform_u64(rng, static_cast<u64>(c)) == 0) labels.push_back(l);
            f.add_set(labels);
        }
        auto res = exhaustive ? verify_ssf(f, SsfVerifyMode::exhaustive)
                              : verify_ssf(f, SsfVerifyMode::sampled, 40000, rng());
        if (res.pass) return f;
        zf *= 1.5;
    }
    throw VerificationFailed("build_ssf randomized: retry budget exhausted");
}

bool is_prime(int q) {
    if (q < 2) return false;
    for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

// Superimposed-code construction: labels become degree-(k-1) polynomials over
// F_q evaluated at all q points; set F_(i,v) holds the labels whose codeword
// has value v at position i. Distinct codewords agree on at most k-1
// positions, so c-1 others can block at most (c-1)(k-1) < q positions.
SsfFamily build_algebraic(int n, int c) {
    if (n == 1) {
        SsfFamily f(1, 1);
        f.add_set({1});
        return f;
    }
    int q = 2;
    int k = 0;
    for (;; ++q) {
        if (!is_prime(q)) continue;
        // smallest k with q^k >= n
        k = 1;
        long p = q;
        while (p < n) {
            p *= q;
            ++k;
        }
        if (static_cast<long>(c - 1) * (k - 1) < q) break;
    }
    // codeword digit j of label l: value of the polynomial with coefficients
    // from (l-1) base q, evaluated at point j
    std::vector<std::vector<int>> code(n + 1, std::vector<int>(q, 0));
    for (Label l = 1; l <= n; ++l) {
        std::vector<int> coeff(k, 0);
        long v = l - 1;
        for (int i = 0; i < k; ++i) {
            coeff[i] = static_cast<int>(v % q);
            v /= q;
        }
        for (int pt = 0; pt < q; ++pt) {
            long acc = 0;
            for (int i = k - 1; i >= 0; --i) acc = (acc * pt + coeff[i]) % q;
            code[l][pt] = static_cast<int>(acc);
        }
    }
    SsfFamily f(n, c);
    for (int pt = 0; pt < q; ++pt)
        for (int val = 0; val < q; ++val) {
            std::vector<Label> labels;
            for (Label l = 1; l <= n; ++l)
                if (code[l][pt] == val) labels.push_back(l);
            if (!labels.empty()) f.add_set(labels);
        }
    return f;
}

}  // namespace

SsfFamily build_ssf(int n_labels, int selectivity, SsfStrategy strategy, const SsfBuildConfig& cfg) {
    if (selectivity > n_labels)
        throw std::invalid_argument("build_ssf: infeasible, selectivity exceeds label range");
    if (selectivity < 1) throw std::invalid_argument("build_ssf: selectivity must be >= 1");
    SsfFamily f;
    switch (strategy) {
        case SsfStrategy::greedy: f = build_greedy(n_labels, selectivity, cfg); break;
        case SsfStrategy::randomized_verified: f = build_randomized(n_labels, selectivity, cfg); break;
        case SsfStrategy::algebraic: f = build_algebraic(n_labels, selectivity); break;
    }
    long cap = static_cast<long>(cfg.c1_budget) * selectivity * selectivity * label_bits(n_labels);
    if (f.length() > cap) throw VerificationFailed("build_ssf: family exceeds length budget");
    return f;
}

}  // namespace sinrlab
