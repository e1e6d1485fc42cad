#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sinrlab {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

// Label of a station, always in [1, N].
using Label = int;

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct VerificationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CalibrationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RoundBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// FNV-1a, used for trace/config hashing. Stable across platforms.
struct Fnv1a {
    u64 h = 0xcbf29ce484222325ull;
    void add(u64 v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 0x00000100000001b3ull;
        }
    }
    void add(const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x00000100000001b3ull;
        }
    }
};

// Deterministic helpers on top of a raw 64-bit generator. The standard
// distributions are implementation-defined, these are not.
template <class Rng>
double uniform_real(Rng& rng, double lo, double hi) {
    double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + unit * (hi - lo);
}

template <class Rng>
u64 uniform_u64(Rng& rng, u64 bound) {  // in [0, bound)
    // Rejection sampling, unbiased and portable.
    u64 threshold = (0 - bound) % bound;
    for (;;) {
        u64 x = rng();
        if (x >= threshold) return x % bound;
    }
}

template <class Rng>
int uniform_int(Rng& rng, int lo, int hi) {  // inclusive range
    return lo + static_cast<int>(uniform_u64(rng, static_cast<u64>(hi - lo + 1)));
}

inline int ceil_log2(u64 v) {
    int b = 0;
    u64 p = 1;
    while (p < v) {
        p <<= 1;
        ++b;
    }
    return b;
}

// Bits needed for one label field given the label range [1, N]; at least 1.
inline int label_bits(int n_labels) {
    int b = ceil_log2(static_cast<u64>(n_labels));
    return b < 1 ? 1 : b;
}

}  // namespace sinrlab
